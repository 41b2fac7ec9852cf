#pragma once

#include <cstddef>
#include <vector>

#include "chillag/rational.hpp"

namespace chillag {

/// Dense n x n x n array of rationals, indexed (i, j, k).
struct RationalTensor {
  int n = 0;
  std::vector<Rational> data;

  RationalTensor() = default;
  explicit RationalTensor(int size)
      : n(size), data(static_cast<std::size_t>(size) * size * size) {}

  const Rational &operator()(int i, int j, int k) const { return data[index(i, j, k)]; }
  Rational &operator()(int i, int j, int k) { return data[index(i, j, k)]; }

  friend bool operator==(const RationalTensor &, const RationalTensor &) = default;

private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }
};

} // namespace chillag
