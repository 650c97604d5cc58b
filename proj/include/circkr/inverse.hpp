#pragma once

#include <cstddef>
#include <vector>

#include "circkr/dense_matrix.hpp"
#include "circkr/error.hpp"
#include "circkr/factors.hpp"
#include "circkr/solver.hpp"

namespace circkr {

/// A^-1 = (1/a) (A1^-1)^T R K, assembled in O(n^2).
///
/// With M = A1^-1 and R K equal to K except for its last row
/// f_j (1 + sum_{k>=j} r_k), every entry is a suffix sum over one column of M:
///   A^-1(i,j) = (f_j / a) ( sum_{k=max(i,j)}^{n-1} M(k,i) + M(n,i) rho_j ).
/// For the tridiagonal variant the suffix runs to n and rho is absent.
/// The result is returned exactly symmetric.
template <Scalar Real>
DenseMatrix<Real> inverse_dense(const Factorization<Real>& fct) {
  const std::size_t n = fct.n();
  check_dense_guard(n, "inverse_dense");
  const auto& f = fct.f;
  const DenseMatrix<Real> m = materialize(fct, FactorKind::A1_inv);

  // rho_j = 1 + sum_{k=j}^{n-1} r_k (1-based), circulant only.
  std::vector<Real> rho(n, Real(1.0));
  if (fct.circulant()) {
    Real acc(1.0);
    for (std::size_t j = n - 1; j-- > 0;) {
      acc = acc + fct.r[j];
      rho[j] = acc;
    }
  }

  const std::size_t block = fct.circulant() ? n - 1 : n;
  DenseMatrix<Real> out(n);
  std::vector<Real> suffix(n + 1, Real(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    suffix[block] = Real(0.0);
    for (std::size_t k = block; k-- > i;) suffix[k] = suffix[k + 1] + m(k, i);
    const Real wrap = fct.circulant() ? m(n - 1, i) : Real(0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t from = i > j ? i : j;
      const Real column_sum = from < block ? suffix[from] : Real(0.0);
      out(i, j) = (f[j + 1] / fct.a()) * (column_sum + wrap * rho[j]);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Real mean = (out(i, j) + out(j, i)) / Real(2.0);
      out(i, j) = mean;
      out(j, i) = mean;
    }
  }
  for (const Real& v : out.entries()) {
    if (!detail::is_finite(v)) throw Error(ErrorKind::Overflow, "inverse_dense: non-finite entry");
  }
  return out;
}

/// First row of the circulant inverse, A^-1 e_1 (A is symmetric). O(n).
template <Scalar Real>
ScalarVector<Real> inverse_first_row(const Factorization<Real>& fct) {
  if (!fct.circulant()) {
    throw Error(ErrorKind::VariantMismatch,
                "inverse_first_row: the tridiagonal inverse is not circulant");
  }
  ScalarVector<Real> unit(fct.n(), Real(0.0));
  unit[0] = Real(1.0);
  return solve(fct, std::span<const Real>(unit));
}

}  // namespace circkr
