#pragma once

#include <cstddef>

#include "circkr/dense_matrix.hpp"
#include "circkr/error.hpp"
#include "circkr/factors.hpp"
#include "circkr/recurrence.hpp"
#include "circkr/system_spec.hpp"

namespace circkr {

/// Factors the circulant matrix: A = a K^-1 R^-1 A1^T. O(n) time and storage.
template <Scalar Real>
Factorization<Real> decompose(const SystemSpec<Real>& spec) {
  const std::size_t n = spec.n();
  auto f = generate_f(spec.d(), n + 1, spec.mode());
  auto r = generate_r(f, n);
  auto g = compute_g(f, r, n);
  return Factorization<Real>{spec, std::move(f), std::move(r), g, Variant::circulant};
}

/// Factors the same band without corner entries: A = a K^-1 A1^T with R = I.
template <Scalar Real>
Factorization<Real> decompose_tridiagonal(const SystemSpec<Real>& spec) {
  auto f = generate_f(spec.d(), spec.n() + 1, spec.mode());
  return Factorization<Real>{spec, std::move(f), {}, std::nullopt, Variant::tridiagonal};
}

template <Scalar Real>
Factorization<Real> decompose(const SystemSpec<Real>& spec, Variant variant) {
  return variant == Variant::circulant ? decompose(spec) : decompose_tridiagonal(spec);
}

/// Rebuilds the dense matrix from its factors, one column at a time:
/// column j is a K^-1 R^-1 A1^T e_j. O(n^2).
template <Scalar Real>
DenseMatrix<Real> reconstruct(const Factorization<Real>& fct) {
  const std::size_t n = fct.n();
  check_dense_guard(n, "reconstruct");
  DenseMatrix<Real> out(n);
  ScalarVector<Real> unit(n, Real(0.0));
  for (std::size_t j = 0; j < n; ++j) {
    unit[j] = Real(1.0);
    auto col = apply_a1_transpose<Real>(fct, unit);
    if (fct.circulant()) col = apply_r_inverse<Real>(fct, col);
    col = apply_k_inverse<Real>(fct, col);
    for (std::size_t i = 0; i < n; ++i) {
      const Real v = fct.a() * col[i];
      if (!detail::is_finite(v)) {
        throw Error(ErrorKind::Overflow, "reconstruct: non-finite entry");
      }
      out(i, j) = v;
    }
    unit[j] = Real(0.0);
  }
  return out;
}

}  // namespace circkr
