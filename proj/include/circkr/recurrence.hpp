#pragma once

// Three-term recurrence f_{i+1} = -d f_i - f_{i-1}, f_0 = 0, f_1 = 1, and
// the scalars derived from it. Every factor of the decomposition is built
// from ratios and products of these values.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "circkr/error.hpp"
#include "circkr/scalar.hpp"
#include "circkr/system_spec.hpp"

namespace circkr {

/// f_0..f_m for a fixed ratio d. `values[i]` is f_i.
template <Scalar Real = double>
struct FSequence {
  Real d{0.0};
  std::vector<Real> values;

  const Real& operator[](std::size_t i) const { return values[i]; }
  std::size_t max_index() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

/// r_1..r_{n-1}; `values[k]` holds r_{k+1}.
template <Scalar Real = double>
struct RCoefficients {
  std::vector<Real> values;

  std::size_t size() const noexcept { return values.size(); }
  const Real& operator[](std::size_t k) const { return values[k]; }
};

/// Last pivot of the circulant back substitution, kept together with the
/// value of the alternative closed form it was checked against.
template <Scalar Real = double>
struct GScalar {
  Real value{0.0};
  Real alternate{0.0};
};

/// Asymptotic |f_{i+1} / f_i| for |d| > 2; 1 otherwise.
inline double growth_ratio(double d) {
  const double ad = std::abs(d);
  if (!(ad > 2.0)) return 1.0;
  return 0.5 * (ad + std::sqrt(ad * ad - 4.0));
}

/// Generates f_0..f_m. Throws Overflow at the first non-finite value, and in
/// permissive mode ZeroPivot at the first vanishing f_i (i >= 1).
template <Scalar Real>
FSequence<Real> generate_f(const Real& d, std::size_t m, Mode mode = Mode::strict) {
  if (m < 1) {
    throw Error(ErrorKind::InvalidSpec, "generate_f: max index must be >= 1");
  }
  if (!detail::is_finite(d)) {
    throw Error(ErrorKind::InvalidSpec, "generate_f: ratio d is not finite");
  }
  if (mode == Mode::strict && !(detail::magnitude(d) > Real(2.0))) {
    throw Error(ErrorKind::InvalidSpec,
                "generate_f: |d| > 2 required in strict mode, got d = " + detail::describe(d));
  }

  FSequence<Real> f{d, {}};
  f.values.reserve(m + 1);
  f.values.push_back(Real(0.0));
  f.values.push_back(Real(1.0));
  for (std::size_t i = 1; i < m; ++i) {
    Real next = -d * f.values[i] - f.values[i - 1];
    if (!detail::is_finite(next)) {
      const std::size_t failing = i + 1;
      const OverflowInfo info{failing, failing >= 2 ? failing - 2 : 0,
                              growth_ratio(static_cast<double>(d))};
      throw Error(ErrorKind::Overflow,
                  "f_" + std::to_string(failing) + " is not finite (d = " + detail::describe(d) +
                      ", growth ratio " + detail::describe(info.growth_ratio) +
                      "); max safe order n = " + std::to_string(info.max_safe_order),
                  info);
    }
    if (next == Real(0.0)) {
      throw Error(ErrorKind::ZeroPivot, "f_" + std::to_string(i + 1) +
                                            " vanishes (d = " + detail::describe(d) + ")");
    }
    f.values.push_back(next);
  }
  return f;
}

/// r_j = f_n f_1 / (f_{j+1} f_j), j = 1..n-1.
template <Scalar Real>
RCoefficients<Real> generate_r(const FSequence<Real>& f, std::size_t n) {
  if (n < 2 || f.max_index() < n) {
    throw Error(ErrorKind::DimensionMismatch,
                "generate_r: f-sequence must reach index n = " + std::to_string(n));
  }
  RCoefficients<Real> r;
  r.values.reserve(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    // Divide before multiplying: f_n alone may be near the top of the range.
    Real value = (f[n] / f[j + 1]) * f[1] / f[j];
    if (!detail::is_finite(value)) {
      throw Error(ErrorKind::Overflow, "r_" + std::to_string(j) + " is not finite",
                  OverflowInfo{j, 0, growth_ratio(static_cast<double>(f.d))});
    }
    r.values.push_back(value);
  }
  return r;
}

/// Relative agreement required between the two closed forms of g.
inline constexpr double kIdentityTolerance = 1e-12;

/// g_{n+1} = 1 - f_{n+1} + sum_j r_j + r_{n-1} f_{n-1}, cross-checked against
/// 1 + f_1 - f_{n+1} + sum_j r_j f_1.
template <Scalar Real>
GScalar<Real> compute_g(const FSequence<Real>& f, const RCoefficients<Real>& r, std::size_t n) {
  if (n < 3 || f.max_index() < n + 1 || r.size() != n - 1) {
    throw Error(ErrorKind::DimensionMismatch, "compute_g: inputs do not match order n");
  }
  Real r_sum(0.0);
  Real r_f1_sum(0.0);
  Real scale(1.0);
  for (std::size_t k = 0; k < r.size(); ++k) {
    r_sum = r_sum + r[k];
    r_f1_sum = r_f1_sum + r[k] * f[1];
    scale = scale + detail::magnitude(r[k]);
  }
  const Real from_r = Real(1.0) - f[n + 1] + r_sum + r[n - 2] * f[n - 1];
  const Real from_f1 = Real(1.0) + f[1] - f[n + 1] + r_f1_sum;
  scale = scale + detail::magnitude(f[n + 1]);

  if (!detail::is_finite(from_r) || !detail::is_finite(from_f1)) {
    throw Error(ErrorKind::Overflow, "g is not finite",
                OverflowInfo{n + 1, 0, growth_ratio(static_cast<double>(f.d))});
  }
  // g is the last pivot; treat it as zero once it is lost in the rounding of
  // the terms it was summed from.
  if (detail::magnitude(from_r) <=
      Real(64.0 * std::numeric_limits<double>::epsilon()) * scale) {
    throw Error(ErrorKind::SingularPivot,
                "g vanishes (" + detail::describe(from_r) + "); matrix is singular");
  }
  const Real gap = detail::magnitude(from_r - from_f1);
  const Real size = detail::max_of(detail::magnitude(from_r), detail::magnitude(from_f1));
  if (gap > Real(kIdentityTolerance) * size) {
    throw Error(ErrorKind::Inconsistency, "closed forms of g disagree: " +
                                              detail::describe(from_r) + " vs " +
                                              detail::describe(from_f1));
  }
  return GScalar<Real>{from_r, from_f1};
}

}  // namespace circkr
