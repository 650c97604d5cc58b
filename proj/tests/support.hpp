#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "circkr/circkr.hpp"

namespace circkr::testing {

/// Enough digits for the spectral sum to resolve inverse entries ~1e-70
/// below the diagonal.
using HighPrecision = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

inline double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, std::abs(x[i] - y[i]));
  return best;
}

inline double max_rel_diff(std::span<const double> x, std::span<const double> ref) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    best = std::max(best, std::abs(x[i] - ref[i]) / std::abs(ref[i]));
  }
  return best;
}

/// Orders, ratios and scalings the acceptance grid sweeps.
inline const std::vector<std::size_t> kGridOrders{3, 4, 5, 8, 16, 64, 200};
inline const std::vector<double> kGridRatios{2.05, -2.05, 2.5, -2.5, 5.0, -5.0, 100.0, -100.0};
inline const std::vector<double> kGridScales{1.0, -0.5, 3.0};

/// True when f_0..f_{n+1} stays finite for this ratio (independent iteration).
inline bool recurrence_fits(double d, std::size_t n) {
  double prev = 0.0, cur = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double next = -d * cur - prev;
    if (!std::isfinite(next)) return false;
    prev = cur;
    cur = next;
  }
  return true;
}

}  // namespace circkr::testing
