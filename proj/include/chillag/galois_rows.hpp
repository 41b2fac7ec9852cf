#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "chillag/cyclotomic.hpp"

namespace chillag {

/// Finds pi with sigma(row i) = row pi(i) for every row; nullopt plus the
/// offending row index when some image is missing.
inline std::optional<std::vector<int>> row_permutation(const std::vector<std::vector<Cyclotomic>> &rows,
                                                       long long k, int *missing_row = nullptr) {
  auto less = [](const std::vector<Cyclotomic> &a, const std::vector<Cyclotomic> &b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), canonical_less);
  };
  std::map<std::vector<Cyclotomic>, int, decltype(less)> index(less);
  for (std::size_t i = 0; i < rows.size(); ++i)
    index.emplace(rows[i], static_cast<int>(i));
  std::vector<int> perm;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Cyclotomic> image;
    for (const auto &v : rows[i])
      image.push_back(v.galois(k));
    auto it = index.find(image);
    if (it == index.end()) {
      if (missing_row)
        *missing_row = static_cast<int>(i);
      return std::nullopt;
    }
    perm.push_back(it->second);
  }
  return perm;
}

} // namespace chillag
