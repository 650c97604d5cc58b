#pragma once

#include <cmath>
#include <concepts>
#include <vector>

namespace circkr {

/// Field-like arithmetic type the factorization is generic over. Built-in
/// floating point types qualify; so do instrumented wrappers that provide
/// `isfinite` and `abs` via ADL.
template <class T>
concept Scalar = std::regular<T> && std::totally_ordered<T> &&
                 std::constructible_from<T, double> && requires(T x, T y) {
                   { x + y } -> std::convertible_to<T>;
                   { x - y } -> std::convertible_to<T>;
                   { x * y } -> std::convertible_to<T>;
                   { x / y } -> std::convertible_to<T>;
                   { -x } -> std::convertible_to<T>;
                 };

template <Scalar Real>
using ScalarVector = std::vector<Real>;

namespace detail {

template <Scalar Real>
bool is_finite(const Real& x) {
  using std::isfinite;
  return isfinite(x);
}

template <Scalar Real>
Real magnitude(const Real& x) {
  using std::abs;
  return abs(x);
}

template <Scalar Real>
Real max_of(const Real& x, const Real& y) {
  return x < y ? y : x;
}

}  // namespace detail
}  // namespace circkr
