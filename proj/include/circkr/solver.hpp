#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "circkr/error.hpp"
#include "circkr/factors.hpp"
#include "circkr/scalar.hpp"

namespace circkr {

/// Solves A x = b in O(n).
///
/// Forms y = R K (b / a) and back-substitutes A1^T x = y. The last unknown
/// is available first (x_n = y_n / g), after which each row of A1^T has a
/// single new unknown:
///   x_{n-1} = (y_{n-1} - (f_{n-1} + 1) x_n) / (-f_n)
///   x_i     = (y_i - f_i x_{i+1} - x_n) / (-f_{i+1}),  i = n-2..1
/// For the tridiagonal variant R = I and A1^T is upper bidiagonal.
template <Scalar Real>
ScalarVector<Real> solve(const Factorization<Real>& fct, std::span<const Real> b) {
  const std::size_t n = fct.n();
  detail::check_length(b.size(), n, "solve");
  for (std::size_t i = 0; i < n; ++i) {
    if (!detail::is_finite(b[i])) {
      throw Error(ErrorKind::InvalidInput,
                  "solve: right-hand side entry " + std::to_string(i + 1) + " is not finite");
    }
  }

  const auto& f = fct.f;
  const Real a = fct.a();
  // x holds y = R K (b / a) first; the back substitution then overwrites it
  // from the bottom up, each y_i being read once before x_i replaces it.
  ScalarVector<Real> x(n);
  Real acc(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    acc = acc + f[i + 1] * (b[i] / a);
    x[i] = acc;
  }

  if (fct.circulant()) {
    Real tail(0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) tail = tail + fct.r[k] * x[k];
    x[n - 1] = x[n - 1] + tail;
    if (!detail::is_finite(x[n - 1])) {
      throw Error(ErrorKind::Overflow, "solve: updated right-hand side is not finite");
    }
    const Real last = x[n - 1] / fct.g->value;
    x[n - 1] = last;
    x[n - 2] = (x[n - 2] - (f[n - 1] + Real(1.0)) * last) / -f[n];
    for (std::size_t i = n - 2; i-- > 0;) {
      x[i] = (x[i] - f[i + 1] * x[i + 1] - last) / -f[i + 2];
    }
  } else {
    if (!detail::is_finite(x[n - 1])) {
      throw Error(ErrorKind::Overflow, "solve: updated right-hand side is not finite");
    }
    x[n - 1] = x[n - 1] / -f[n + 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - f[i + 1] * x[i + 1]) / -f[i + 2];
  }
  return x;
}

template <Scalar Real>
ScalarVector<Real> solve(const Factorization<Real>& fct, const ScalarVector<Real>& b) {
  return solve(fct, std::span<const Real>(b));
}

/// Solves each column independently. Errors carry the failing column index.
template <Scalar Real>
std::vector<ScalarVector<Real>> solve_many(const Factorization<Real>& fct,
                                           std::span<const ScalarVector<Real>> columns) {
  std::vector<ScalarVector<Real>> out;
  out.reserve(columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    try {
      out.push_back(solve(fct, std::span<const Real>(columns[k])));
    } catch (Error& e) {
      Error tagged(e.kind(), "column " + std::to_string(k + 1) + ": " + e.what());
      tagged.column = k;
      throw tagged;
    }
  }
  return out;
}

template <Scalar Real>
std::vector<ScalarVector<Real>> solve_many(const Factorization<Real>& fct,
                                           const std::vector<ScalarVector<Real>>& columns) {
  return solve_many(fct, std::span<const ScalarVector<Real>>(columns));
}

}  // namespace circkr
