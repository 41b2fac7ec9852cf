#pragma once

// Plain-text character table files.
//
//   % free-form comment (provenance)
//   #table PSL(2,16) mod 2
//   order 4080
//   kind brauer            ordinary | brauer | pim | pipartial
//   prime 2                or: pi 3,5
//   classes 16
//   class_orders 1,3,5,...
//   class_sizes 1,272,...  (optional)
//   1,1,1,...              one row per line, entries in the E(n,k) grammar

#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chillag/arith.hpp"
#include "chillag/cyclotomic.hpp"
#include "chillag/errors.hpp"

namespace chillag {

enum class TableKind { Ordinary, Brauer, Pim, PiPartial };

inline std::string_view to_string(TableKind k) {
  switch (k) {
  case TableKind::Ordinary:
    return "ordinary";
  case TableKind::Brauer:
    return "brauer";
  case TableKind::Pim:
    return "pim";
  case TableKind::PiPartial:
    return "pipartial";
  }
  return "?";
}

struct TableFile {
  std::string name;
  TableKind kind = TableKind::Ordinary;
  std::int64_t group_order = 0;
  std::optional<int> prime;
  PrimeSet pi;
  int classes = 0;
  std::vector<int> class_orders;
  std::vector<std::int64_t> class_sizes; // empty when not given
  std::vector<std::string> comments;
  std::vector<std::vector<Cyclotomic>> rows;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

/// Splits on commas outside parentheses; each piece keeps its start column.
inline std::vector<std::pair<std::string_view, std::size_t>> split_top_level(std::string_view line) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || (line[i] == ',' && depth == 0)) {
      out.emplace_back(line.substr(start, i - start), start);
      start = i + 1;
    } else if (line[i] == '(') {
      ++depth;
    } else if (line[i] == ')') {
      --depth;
    }
  }
  return out;
}

class TableFileParser {
public:
  TableFileParser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  TableFile parse() {
    TableFile t;
    bool have_name = false, have_order = false, have_kind = false, have_classes = false, have_orders = false;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos), text_.size());
      std::string_view line = text_.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
      const std::string_view body = trim(line);
      if (body.empty())
        continue;
      if (body.front() == '%') {
        t.comments.emplace_back(trim(body.substr(1)));
        continue;
      }
      const std::size_t indent = static_cast<std::size_t>(body.data() - line.data());
      std::string_view word = body;
      if (word.front() == '#')
        word.remove_prefix(1);
      const std::size_t sp = word.find_first_of(" \t");
      const std::string_view key = word.substr(0, sp);
      const std::string_view value = sp == std::string_view::npos ? std::string_view{} : trim(word.substr(sp));
      const std::size_t value_col = value.empty() ? indent + 1 : static_cast<std::size_t>(value.data() - line.data()) + 1;
      line_ = line_no;

      if (key == "table") {
        t.name = std::string(value);
        have_name = true;
      } else if (key == "order") {
        t.group_order = parse_int(value, value_col);
        have_order = true;
      } else if (key == "kind") {
        if (value == "ordinary")
          t.kind = TableKind::Ordinary;
        else if (value == "brauer")
          t.kind = TableKind::Brauer;
        else if (value == "pim")
          t.kind = TableKind::Pim;
        else if (value == "pipartial")
          t.kind = TableKind::PiPartial;
        else
          fail(value_col, "unknown kind '" + std::string(value) + "'");
        have_kind = true;
      } else if (key == "prime") {
        const auto p = parse_int(value, value_col);
        if (!is_prime(p))
          fail(value_col, "not a prime");
        t.prime = static_cast<int>(p);
      } else if (key == "pi") {
        for (const auto &[piece, col] : split_top_level(line.substr(value_col - 1))) {
          const auto p = parse_int(trim(piece), value_col + col);
          if (!is_prime(p))
            fail(value_col + col, "not a prime");
          t.pi.insert(static_cast<int>(p));
        }
      } else if (key == "classes") {
        t.classes = static_cast<int>(parse_int(value, value_col));
        have_classes = true;
      } else if (key == "class_orders") {
        for (const auto &[piece, col] : split_top_level(line.substr(value_col - 1)))
          t.class_orders.push_back(static_cast<int>(parse_int(trim(piece), value_col + col)));
        have_orders = true;
      } else if (key == "class_sizes") {
        for (const auto &[piece, col] : split_top_level(line.substr(value_col - 1)))
          t.class_sizes.push_back(parse_int(trim(piece), value_col + col));
      } else if (body.front() == '#') {
        fail(indent + 1, "unknown header '" + std::string(key) + "'");
      } else {
        std::vector<Cyclotomic> row;
        for (const auto &[piece, col] : split_top_level(line)) {
          if (trim(piece).empty())
            fail(col + 1, "empty entry");
          try {
            row.push_back(parse_cyclotomic(piece, col));
          } catch (const Error &e) {
            // literal errors read "ParseError: column N: ..."
            std::string msg = e.what();
            const auto at = msg.find("column ");
            throw Error(ErrorKind::ParseError, where() + (at == std::string::npos ? msg : msg.substr(at + 7)));
          }
        }
        t.rows.push_back(std::move(row));
      }
    }
    line_ = line_no;
    if (!have_name)
      fail(1, "missing '#table' header");
    if (!have_order)
      fail(1, "missing 'order' header");
    if (!have_kind)
      fail(1, "missing 'kind' header");
    if (!have_classes)
      fail(1, "missing 'classes' header");
    if (!have_orders)
      fail(1, "missing 'class_orders' header");
    if ((t.kind == TableKind::Brauer || t.kind == TableKind::Pim) && !t.prime && t.pi.empty())
      fail(1, "missing 'prime' header");
    if (t.kind == TableKind::PiPartial && t.pi.empty() && !t.prime)
      fail(1, "missing 'pi' header");
    if (t.prime && t.pi.empty())
      t.pi = complement_primes(t.group_order, {*t.prime});
    if (static_cast<int>(t.rows.size()) < t.classes)
      fail(1, "unexpected end of input after " + std::to_string(t.rows.size()) + " of " +
                  std::to_string(t.classes) + " rows");
    validate(t);
    return t;
  }

private:
  void validate(const TableFile &t) const {
    auto shape = [&](const std::string &msg) { throw Error(ErrorKind::ShapeMismatch, source_ + ": " + msg); };
    if (static_cast<int>(t.class_orders.size()) != t.classes)
      shape("class_orders has " + std::to_string(t.class_orders.size()) + " entries, expected " +
            std::to_string(t.classes));
    if (!t.class_sizes.empty() && static_cast<int>(t.class_sizes.size()) != t.classes)
      shape("class_sizes has " + std::to_string(t.class_sizes.size()) + " entries, expected " +
            std::to_string(t.classes));
    if (static_cast<int>(t.rows.size()) != t.classes)
      shape(std::to_string(t.rows.size()) + " rows, expected " + std::to_string(t.classes));
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      if (static_cast<int>(t.rows[r].size()) != t.classes)
        shape("row " + std::to_string(r + 1) + " has " + std::to_string(t.rows[r].size()) + " entries, expected " +
              std::to_string(t.classes));
    if (t.classes > 0 && t.class_orders[0] != 1)
      shape("first class must be the identity");
    for (int o : t.class_orders)
      if (o < 1 || t.group_order % o != 0)
        shape("class order " + std::to_string(o) + " does not divide the group order");
    if (t.kind != TableKind::Ordinary)
      for (int o : t.class_orders)
        if (!is_pi_number(o, t.pi))
          shape("class of order " + std::to_string(o) + " is not a pi-class");
  }

  std::int64_t parse_int(std::string_view s, std::size_t col) const {
    if (s.empty())
      fail(col, "expected integer");
    std::int64_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        fail(col + i, "expected integer");
      v = v * 10 + (s[i] - '0');
      if (v > (std::int64_t{1} << 52))
        fail(col, "integer too large");
    }
    return v;
  }

  std::string where() const { return source_ + ":" + std::to_string(line_) + ":"; }

  [[noreturn]] void fail(std::size_t col, const std::string &msg) const {
    throw Error(ErrorKind::ParseError, where() + std::to_string(col) + ": " + msg);
  }

  std::string_view text_;
  std::string source_;
  std::size_t line_ = 0;
};

} // namespace detail

/// Parses a table file. ParseError messages read "source:line:column: ...".
inline TableFile parse_table_file(std::string_view text, std::string source = "<input>") {
  return detail::TableFileParser(text, std::move(source)).parse();
}

inline TableFile read_table_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::ParseError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table_file(buf.str(), path);
}

inline std::string format_table_file(const TableFile &t) {
  std::ostringstream out;
  for (const auto &c : t.comments)
    out << "% " << c << "\n";
  out << "#table " << t.name << "\n";
  out << "order " << t.group_order << "\n";
  out << "kind " << to_string(t.kind) << "\n";
  if (t.prime) {
    out << "prime " << *t.prime << "\n";
  } else if (t.kind != TableKind::Ordinary) {
    out << "pi ";
    bool first = true;
    for (int p : t.pi) {
      out << (first ? "" : ",") << p;
      first = false;
    }
    out << "\n";
  }
  out << "classes " << t.classes << "\n";
  out << "class_orders ";
  for (std::size_t i = 0; i < t.class_orders.size(); ++i)
    out << (i ? "," : "") << t.class_orders[i];
  out << "\n";
  if (!t.class_sizes.empty()) {
    out << "class_sizes ";
    for (std::size_t i = 0; i < t.class_sizes.size(); ++i)
      out << (i ? "," : "") << t.class_sizes[i];
    out << "\n";
  }
  for (const auto &row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << to_string(row[i]);
    out << "\n";
  }
  return out.str();
}

} // namespace chillag
