#pragma once

// Implicit O(n) representation of the factors in A = a K^-1 R^-1 A1^T, all
// defined on the normalized matrix A/a (diagonal d = c/a, band 1):
//
//   K      lower triangular, column j constant f_j on and below the diagonal
//   K^-1   lower bidiagonal, diagonal 1/f_i, subdiagonal -1/f_i
//   R      identity with last row (r_1, ..., r_{n-1}, 1)
//   R^-1   identity with last row (-r_1, ..., -r_{n-1}, 1)
//   A1     lower triangular with diagonal (-f_2, ..., -f_n, g), subdiagonal
//          f_1..f_{n-2}, entry (n, n-1) = f_{n-1} + 1 and ones elsewhere in
//          the last row; A1^T = R K (A/a)
//
// The tridiagonal variant has R = I and A1 lower bidiagonal with diagonal
// (-f_2, ..., -f_{n+1}) and subdiagonal f_1..f_{n-1}.
//
// Indices in code are 0-based: position i of a vector pairs with f_{i+1}.

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "circkr/dense_matrix.hpp"
#include "circkr/error.hpp"
#include "circkr/recurrence.hpp"
#include "circkr/scalar.hpp"
#include "circkr/system_spec.hpp"

namespace circkr {

enum class FactorKind { K, K_inv, R, R_inv, A1, A1_inv };

constexpr const char* to_string(FactorKind kind) noexcept {
  switch (kind) {
    case FactorKind::K: return "K";
    case FactorKind::K_inv: return "K_inv";
    case FactorKind::R: return "R";
    case FactorKind::R_inv: return "R_inv";
    case FactorKind::A1: return "A1";
    case FactorKind::A1_inv: return "A1_inv";
  }
  return "?";
}

template <Scalar Real = double>
struct Factorization {
  SystemSpec<Real> spec;
  FSequence<Real> f;     // f_0..f_{n+1}
  RCoefficients<Real> r; // empty for the tridiagonal variant
  std::optional<GScalar<Real>> g;
  Variant variant = Variant::circulant;

  std::size_t n() const noexcept { return spec.n(); }
  const Real& a() const noexcept { return spec.a(); }
  bool circulant() const noexcept { return variant == Variant::circulant; }
};

namespace detail {

inline void check_length(std::size_t got, std::size_t n, const char* what) {
  if (got != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": vector length " +
                                                  std::to_string(got) + " != order " +
                                                  std::to_string(n));
  }
}

template <Scalar Real>
void require_circulant(const Factorization<Real>& fct, const char* what) {
  if (!fct.circulant()) {
    throw Error(ErrorKind::VariantMismatch,
                std::string(what) + " is the identity for the tridiagonal variant");
  }
}

}  // namespace detail

/// y = K x, y_i = sum_{j<=i} f_j x_j.
template <Scalar Real>
ScalarVector<Real> apply_k(const Factorization<Real>& fct, std::span<const Real> x) {
  const std::size_t n = fct.n();
  detail::check_length(x.size(), n, "apply_k");
  ScalarVector<Real> y(n);
  Real acc(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    acc = acc + fct.f[i + 1] * x[i];
    y[i] = acc;
  }
  return y;
}

/// x = K^-1 y, x_1 = y_1 / f_1, x_i = (y_i - y_{i-1}) / f_i.
template <Scalar Real>
ScalarVector<Real> apply_k_inverse(const Factorization<Real>& fct, std::span<const Real> y) {
  const std::size_t n = fct.n();
  detail::check_length(y.size(), n, "apply_k_inverse");
  ScalarVector<Real> x(n);
  x[0] = y[0] / fct.f[1];
  for (std::size_t i = 1; i < n; ++i) x[i] = (y[i] - y[i - 1]) / fct.f[i + 1];
  return x;
}

namespace detail {

template <Scalar Real>
ScalarVector<Real> apply_r_signed(const Factorization<Real>& fct, std::span<const Real> x,
                                  bool inverse, const char* what) {
  require_circulant(fct, what);
  const std::size_t n = fct.n();
  check_length(x.size(), n, what);
  ScalarVector<Real> y(x.begin(), x.end());
  Real acc(0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) acc = acc + fct.r[k] * x[k];
  y[n - 1] = inverse ? x[n - 1] - acc : x[n - 1] + acc;
  return y;
}

}  // namespace detail

/// y = R x: only the last entry changes, to x_n + sum_j r_j x_j.
template <Scalar Real>
ScalarVector<Real> apply_r(const Factorization<Real>& fct, std::span<const Real> x) {
  return detail::apply_r_signed(fct, x, false, "apply_r");
}

template <Scalar Real>
ScalarVector<Real> apply_r_inverse(const Factorization<Real>& fct, std::span<const Real> y) {
  return detail::apply_r_signed(fct, y, true, "apply_r_inverse");
}

/// y = A1^T x, the upper triangular matrix R K (A/a).
template <Scalar Real>
ScalarVector<Real> apply_a1_transpose(const Factorization<Real>& fct, std::span<const Real> x) {
  const std::size_t n = fct.n();
  detail::check_length(x.size(), n, "apply_a1_transpose");
  const auto& f = fct.f;
  ScalarVector<Real> y(n);
  if (!fct.circulant()) {
    for (std::size_t i = 0; i + 1 < n; ++i) y[i] = -f[i + 2] * x[i] + f[i + 1] * x[i + 1];
    y[n - 1] = -f[n + 1] * x[n - 1];
    return y;
  }
  for (std::size_t i = 0; i + 2 < n; ++i) {
    y[i] = -f[i + 2] * x[i] + f[i + 1] * x[i + 1] + x[n - 1];
  }
  y[n - 2] = -f[n] * x[n - 2] + (f[n - 1] + Real(1.0)) * x[n - 1];
  y[n - 1] = fct.g->value * x[n - 1];
  return y;
}

namespace detail {

template <Scalar Real>
DenseMatrix<Real> materialize_a1(const Factorization<Real>& fct) {
  const std::size_t n = fct.n();
  const auto& f = fct.f;
  DenseMatrix<Real> m(n);
  if (!fct.circulant()) {
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = -f[i + 2];
      if (i > 0) m(i, i - 1) = f[i];
    }
    return m;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i) = -f[i + 2];
  for (std::size_t i = 1; i + 1 < n; ++i) m(i, i - 1) = f[i];
  for (std::size_t j = 0; j + 2 < n; ++j) m(n - 1, j) = Real(1.0);
  m(n - 1, n - 2) = f[n - 1] + Real(1.0);
  m(n - 1, n - 1) = fct.g->value;
  return m;
}

template <Scalar Real>
DenseMatrix<Real> materialize_a1_inverse(const Factorization<Real>& fct) {
  const std::size_t n = fct.n();
  const auto& f = fct.f;
  DenseMatrix<Real> m(n);
  // Leading bidiagonal block: entry (i, j) = -f_j / (f_i f_{i+1}), j <= i.
  const std::size_t bidiagonal_rows = fct.circulant() ? n - 1 : n;
  for (std::size_t i = 0; i < bidiagonal_rows; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = -(f[j + 1] / f[i + 1]) / f[i + 2];
  if (!fct.circulant()) return m;

  // Last row by substitution against the last row of A1:
  //   g m(n,j) = -( sum_{k=j}^{n-2} m(k,j) + (f_{n-1} + 1) m(n-1,j) ),
  // carrying the partial column sums in the scaled form
  //   tail_j = -sum_{k=j}^{n-2} m(k,j) = (1 + f_j tail_{j+1}) / f_{j+1}
  // so nothing underflows when the f_i are large.
  const Real g = fct.g->value;
  const Real corner = f[n - 1] + Real(1.0);
  m(n - 1, n - 1) = Real(1.0) / g;
  Real tail(0.0);
  for (std::size_t j = n - 1; j-- > 0;) {
    if (j + 2 < n) tail = (Real(1.0) + f[j + 1] * tail) / f[j + 2];
    m(n - 1, j) = (tail - corner * m(n - 2, j)) / g;
  }
  return m;
}

}  // namespace detail

/// Dense realization of one factor.
template <Scalar Real>
DenseMatrix<Real> materialize(const Factorization<Real>& fct, FactorKind which) {
  const std::size_t n = fct.n();
  check_dense_guard(n, "materialize");
  const auto& f = fct.f;
  switch (which) {
    case FactorKind::K: {
      DenseMatrix<Real> m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m(i, j) = f[j + 1];
      return m;
    }
    case FactorKind::K_inv: {
      DenseMatrix<Real> m(n);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Real(1.0) / f[i + 1];
        if (i > 0) m(i, i - 1) = -m(i, i);
      }
      return m;
    }
    case FactorKind::R:
    case FactorKind::R_inv: {
      detail::require_circulant(fct, which == FactorKind::R ? "R" : "R_inv");
      auto m = DenseMatrix<Real>::identity(n);
      for (std::size_t j = 0; j + 1 < n; ++j)
        m(n - 1, j) = which == FactorKind::R ? fct.r[j] : -fct.r[j];
      return m;
    }
    case FactorKind::A1:
      return detail::materialize_a1(fct);
    case FactorKind::A1_inv:
      return detail::materialize_a1_inverse(fct);
  }
  throw Error(ErrorKind::InvalidInput, "materialize: unknown factor");
}

}  // namespace circkr
