#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "circkr/error.hpp"
#include "circkr/scalar.hpp"

namespace circkr {

/// Largest order for which dense n x n materialization is allowed.
inline constexpr std::size_t kDenseSizeGuard = 10000;

inline void check_dense_guard(std::size_t n, const char* what) {
  if (n > kDenseSizeGuard) {
    throw Error(ErrorKind::SizeGuard,
                std::string(what) + ": order " + std::to_string(n) +
                    " exceeds dense limit " + std::to_string(kDenseSizeGuard));
  }
}

/// Row-major square matrix. Used for materialized factors, inverses and
/// oracle checks; the factorization itself never stores one.
template <Scalar Real = double>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), entries_(n * n, Real(0.0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Real(1.0);
    return m;
  }

  std::size_t order() const noexcept { return n_; }

  Real& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  std::span<const Real> row(std::size_t i) const {
    return std::span<const Real>(entries_).subspan(i * n_, n_);
  }
  std::span<Real> row(std::size_t i) { return std::span<Real>(entries_).subspan(i * n_, n_); }

  std::span<const Real> entries() const noexcept { return entries_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Real> entries_;
};

template <Scalar Real>
DenseMatrix<Real> operator*(const DenseMatrix<Real>& lhs, const DenseMatrix<Real>& rhs) {
  const std::size_t n = lhs.order();
  if (rhs.order() != n) {
    throw Error(ErrorKind::DimensionMismatch, "matrix product: order mismatch");
  }
  DenseMatrix<Real> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Real lik = lhs(i, k);
      if (lik == Real(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) = out(i, j) + lik * rhs(k, j);
    }
  }
  return out;
}

template <Scalar Real>
ScalarVector<Real> operator*(const DenseMatrix<Real>& m, std::span<const Real> x) {
  const std::size_t n = m.order();
  if (x.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector product: length mismatch");
  }
  ScalarVector<Real> y(n, Real(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    Real acc(0.0);
    for (std::size_t j = 0; j < n; ++j) acc = acc + m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

template <Scalar Real>
ScalarVector<Real> operator*(const DenseMatrix<Real>& m, const ScalarVector<Real>& x) {
  return m * std::span<const Real>(x);
}

template <Scalar Real>
DenseMatrix<Real> transpose(const DenseMatrix<Real>& m) {
  DenseMatrix<Real> t(m.order());
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) t(j, i) = m(i, j);
  return t;
}

/// max_ij |m_ij|
template <Scalar Real>
Real max_norm(const DenseMatrix<Real>& m) {
  Real best(0.0);
  for (const Real& v : m.entries()) best = detail::max_of(best, detail::magnitude(v));
  return best;
}

/// max_i sum_j |m_ij|
template <Scalar Real>
Real inf_norm(const DenseMatrix<Real>& m) {
  Real best(0.0);
  for (std::size_t i = 0; i < m.order(); ++i) {
    Real sum(0.0);
    for (const Real& v : m.row(i)) sum = sum + detail::magnitude(v);
    best = detail::max_of(best, sum);
  }
  return best;
}

template <Scalar Real>
Real max_abs_diff(const DenseMatrix<Real>& lhs, const DenseMatrix<Real>& rhs) {
  if (lhs.order() != rhs.order()) {
    throw Error(ErrorKind::DimensionMismatch, "max_abs_diff: order mismatch");
  }
  Real best(0.0);
  auto l = lhs.entries();
  auto r = rhs.entries();
  for (std::size_t k = 0; k < l.size(); ++k) best = detail::max_of(best, detail::magnitude(l[k] - r[k]));
  return best;
}

template <Scalar Real>
Real inf_norm(std::span<const Real> x) {
  Real best(0.0);
  for (const Real& v : x) best = detail::max_of(best, detail::magnitude(v));
  return best;
}

}  // namespace circkr
