#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chillag/errors.hpp"

namespace chillag {

/// A bijection of {0, ..., degree-1}. Products compose left to right:
/// (a * b)(p) = b(a(p)).
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || v >= degree() || seen[v])
        throw Error(ErrorKind::InvalidPermutation, "image list is not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(int degree) {
    Permutation p;
    p.images_.resize(degree);
    for (int i = 0; i < degree; ++i)
      p.images_[i] = i;
    return p;
  }

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator[](int point) const { return images_[point]; }
  const std::vector<int> &images() const noexcept { return images_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation operator*(const Permutation &other) const {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      out.images_[i] = other.images_[images_[i]];
    return out;
  }

  Permutation inverse() const {
    Permutation out;
    out.images_.resize(images_.size());
    for (int i = 0; i < degree(); ++i)
      out.images_[images_[i]] = i;
    return out;
  }

  /// Same permutation on more points (fixing the new ones).
  Permutation extended(int degree) const {
    Permutation out = *this;
    for (int i = this->degree(); i < degree; ++i)
      out.images_.push_back(i);
    return out;
  }

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : images_) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

private:
  std::vector<int> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation &p) const noexcept { return p.hash(); }
};

/// Cycle notation, 1-based points: `(1,2,3)(4,5)`; `()` is the identity.
inline std::string to_cycle_string(const Permutation &p) {
  std::string out;
  std::vector<char> seen(p.degree(), 0);
  for (int start = 0; start < p.degree(); ++start) {
    if (seen[start] || p[start] == start)
      continue;
    out += "(";
    int x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = 1;
      if (!first)
        out += ",";
      out += std::to_string(x + 1);
      first = false;
      x = p[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

/// Parses one permutation in 1-based cycle notation. The degree is the
/// largest point mentioned unless a larger `degree` is given.
inline Permutation parse_cycles(std::string_view text, int degree = 0) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto fail = [&](const std::string &msg) -> void {
    throw Error(ErrorKind::ParseError,
                "column " + std::to_string(i + 1) + ": " + msg + " in '" + std::string(text) + "'");
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  int max_point = 0;
  skip();
  while (i < text.size()) {
    if (text[i] != '(')
      fail("expected '('");
    ++i;
    std::vector<int> cycle;
    skip();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        fail("expected point");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 100000)
          fail("point too large");
        ++i;
      }
      if (v < 1)
        fail("points are 1-based");
      cycle.push_back(v - 1);
      max_point = std::max(max_point, v);
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip();
      }
    }
    if (i == text.size())
      fail("unterminated cycle");
    ++i;
    cycles.push_back(std::move(cycle));
    skip();
  }
  const int n = std::max(degree, max_point);
  std::vector<int> images(n);
  for (int k = 0; k < n; ++k)
    images[k] = k;
  // Cycles compose left to right, matching the product convention.
  for (const auto &cycle : cycles) {
    std::vector<int> step(n);
    for (int k = 0; k < n; ++k)
      step[k] = k;
    for (std::size_t c = 0; c < cycle.size(); ++c) {
      if (std::count(cycle.begin(), cycle.end(), cycle[c]) > 1)
        throw Error(ErrorKind::InvalidPermutation, "repeated point in cycle");
      step[cycle[c]] = cycle[(c + 1) % cycle.size()];
    }
    for (int k = 0; k < n; ++k)
      images[k] = step[images[k]];
  }
  return Permutation(std::move(images));
}

/// Generator lists: permutations separated by ';', ',' or whitespace, e.g.
/// `(1,2,3)(4,5); (1,2)`. Juxtaposed cycles form one permutation. All
/// results share the largest degree.
inline std::vector<Permutation> parse_generator_list(std::string_view text) {
  std::vector<std::string> chunks;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if (depth == 0 && (c == ';' || c == ',' || std::isspace(static_cast<unsigned char>(c)))) {
      if (!current.empty())
        chunks.push_back(std::move(current));
      current.clear();
      continue;
    }
    current += c;
  }
  if (!current.empty())
    chunks.push_back(std::move(current));
  if (chunks.empty())
    throw Error(ErrorKind::ParseError, "empty generator list");
  std::vector<Permutation> gens;
  int degree = 1;
  for (const auto &chunk : chunks) {
    gens.push_back(parse_cycles(chunk));
    degree = std::max(degree, gens.back().degree());
  }
  for (auto &g : gens)
    g = g.extended(degree);
  return gens;
}

} // namespace chillag
