#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <ranges>
#include <utility>
#include <vector>

#include "scoregraph/error.hpp"

namespace scoregraph {

struct DtwResult {
  double cost = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> path;  // (index in a, index in b), first to last
};

/// Dynamic time warping with absolute-difference cost. Both endpoints are
/// matched; steps advance one series, the other, or both. The returned path
/// is one optimal alignment, preferring diagonal steps when costs tie.
template <std::ranges::random_access_range A, std::ranges::random_access_range B>
DtwResult dtw(const A& a, const B& b) {
  const std::size_t n = std::ranges::size(a);
  const std::size_t m = std::ranges::size(b);
  if (n == 0 || m == 0) throw Error(ErrorKind::EmptySeries, "dtw needs two non-empty series");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> acc(n * m, inf);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return acc[i * m + j]; };
  auto cost = [&](std::size_t i, std::size_t j) {
    return std::abs(static_cast<double>(std::ranges::begin(a)[i]) - static_cast<double>(std::ranges::begin(b)[j]));
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double prev = 0.0;
      if (i > 0 || j > 0) {
        prev = inf;
        if (i > 0 && j > 0) prev = std::min(prev, at(i - 1, j - 1));
        if (i > 0) prev = std::min(prev, at(i - 1, j));
        if (j > 0) prev = std::min(prev, at(i, j - 1));
      }
      at(i, j) = cost(i, j) + prev;
    }
  }

  DtwResult out;
  out.cost = at(n - 1, m - 1);
  std::size_t i = n - 1, j = m - 1;
  out.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = at(i - 1, j - 1), up = at(i - 1, j), left = at(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    out.path.emplace_back(i, j);
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

}  // namespace scoregraph
