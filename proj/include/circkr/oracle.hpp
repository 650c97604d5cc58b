#pragma once

// Reference computations that share nothing with the factorization: direct
// construction of A, partial-pivoting LU (Eigen), and the closed-form
// inverse of a circulant matrix through its cosine spectrum. Intended for
// tests and the `check` command.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>

#include "circkr/dense_matrix.hpp"
#include "circkr/error.hpp"
#include "circkr/system_spec.hpp"

namespace circkr::oracle {

/// Diagonal c, band a, corners a (circulant) or 0 (tridiagonal).
template <Scalar Real>
DenseMatrix<Real> build_dense(const SystemSpec<Real>& spec, Variant variant) {
  const std::size_t n = spec.n();
  check_dense_guard(n, "build_dense");
  DenseMatrix<Real> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = spec.c();
    if (i + 1 < n) {
      m(i, i + 1) = spec.a();
      m(i + 1, i) = spec.a();
    }
  }
  if (variant == Variant::circulant) {
    m(0, n - 1) = spec.a();
    m(n - 1, 0) = spec.a();
  }
  return m;
}

namespace detail {

inline Eigen::MatrixXd to_eigen(const DenseMatrix<double>& a) {
  const auto n = static_cast<Eigen::Index>(a.order());
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      a.entries().data(), n, n);
}

inline Eigen::PartialPivLU<Eigen::MatrixXd> factor(const DenseMatrix<double>& a) {
  if (a.order() == 0) throw Error(ErrorKind::DimensionMismatch, "dense oracle: empty matrix");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(to_eigen(a));
  const double scale = lu.matrixLU().cwiseAbs().maxCoeff();
  const double smallest = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(smallest > std::numeric_limits<double>::epsilon() * scale * static_cast<double>(a.order()))) {
    throw Error(ErrorKind::Singular, "dense oracle: zero pivot after partial pivoting");
  }
  return lu;
}

}  // namespace detail

/// Gaussian elimination with partial pivoting.
inline ScalarVector<double> dense_solve(const DenseMatrix<double>& a, std::span<const double> b) {
  if (b.size() != a.order()) {
    throw Error(ErrorKind::DimensionMismatch, "dense_solve: length mismatch");
  }
  const auto lu = detail::factor(a);
  const Eigen::VectorXd rhs =
      Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  const Eigen::VectorXd x = lu.solve(rhs);
  return ScalarVector<double>(x.data(), x.data() + x.size());
}

inline ScalarVector<double> dense_solve(const DenseMatrix<double>& a, const ScalarVector<double>& b) {
  return dense_solve(a, std::span<const double>(b));
}

inline DenseMatrix<double> dense_inverse(const DenseMatrix<double>& a) {
  const auto lu = detail::factor(a);
  const Eigen::MatrixXd inv = lu.inverse();
  DenseMatrix<double> out(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j)
      out(i, j) = inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

/// Whole first row of the circulant inverse through the spectrum
///   (A^-1)_{1,1+k} = (1/n) sum_j cos(2 pi j k / n) / (c + 2a cos(2 pi j / n)).
/// `Real` sets the working precision; use a multiprecision type to resolve
/// entries far below double epsilon relative to the diagonal.
template <class Real, Scalar Input>
std::vector<Real> spectral_first_row(const SystemSpec<Input>& spec) {
  using std::abs;
  using std::cos;
  const std::size_t n = spec.n();
  const Real c = Real(static_cast<double>(spec.c()));
  const Real a = Real(static_cast<double>(spec.a()));
  const Real two_pi = boost::math::constants::two_pi<Real>();

  std::vector<Real> cosines(n);
  for (std::size_t j = 0; j < n; ++j) cosines[j] = cos(two_pi * Real(double(j)) / Real(double(n)));

  const Real tiny = Real(64.0) * std::numeric_limits<Real>::epsilon() * (abs(c) + Real(2.0) * abs(a));
  std::vector<Real> inv_eigen(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Real lambda = c + Real(2.0) * a * cosines[j];
    if (abs(lambda) <= tiny) {
      throw Error(ErrorKind::SingularEigenvalue,
                  "spectral oracle: eigenvalue " + std::to_string(j) + " vanishes");
    }
    inv_eigen[j] = Real(1.0) / lambda;
  }

  std::vector<Real> row(n);
  for (std::size_t k = 0; k < n; ++k) {
    Real sum(0.0);
    for (std::size_t j = 0; j < n; ++j) sum += cosines[(j * k) % n] * inv_eigen[j];
    row[k] = sum / Real(double(n));
  }
  return row;
}

/// Single entry (A^-1)_{1,1+k}; O(n).
template <class Real = double, Scalar Input>
Real spectral_inverse_entry(const SystemSpec<Input>& spec, std::size_t k) {
  using std::abs;
  using std::cos;
  const std::size_t n = spec.n();
  if (k >= n) throw Error(ErrorKind::DimensionMismatch, "spectral_inverse_entry: offset >= n");
  const Real c = Real(static_cast<double>(spec.c()));
  const Real a = Real(static_cast<double>(spec.a()));
  const Real two_pi = boost::math::constants::two_pi<Real>();
  const Real tiny = Real(64.0) * std::numeric_limits<Real>::epsilon() * (abs(c) + Real(2.0) * abs(a));
  Real sum(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const Real lambda = c + Real(2.0) * a * cos(two_pi * Real(double(j)) / Real(double(n)));
    if (abs(lambda) <= tiny) {
      throw Error(ErrorKind::SingularEigenvalue,
                  "spectral oracle: eigenvalue " + std::to_string(j) + " vanishes");
    }
    sum += cos(two_pi * Real(double((j * k) % n)) / Real(double(n))) / lambda;
  }
  return sum / Real(double(n));
}

}  // namespace circkr::oracle
