#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace circkr {

enum class ErrorKind {
  InvalidSpec,
  Overflow,
  ZeroPivot,
  SingularPivot,
  Inconsistency,
  DimensionMismatch,
  VariantMismatch,
  SizeGuard,
  Singular,
  SingularEigenvalue,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ZeroPivot: return "ZeroPivot";
    case ErrorKind::SingularPivot: return "SingularPivot";
    case ErrorKind::Inconsistency: return "Inconsistency";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::VariantMismatch: return "VariantMismatch";
    case ErrorKind::SizeGuard: return "SizeGuard";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::SingularEigenvalue: return "SingularEigenvalue";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Details attached to an Overflow error.
///
/// `failing_index` is the first recurrence index whose value was not finite;
/// `max_safe_order` is the largest matrix order n that can still be factored
/// at the same ratio d (the circulant path needs f_0..f_{n+1}).
struct OverflowInfo {
  std::size_t failing_index = 0;
  std::size_t max_safe_order = 0;
  double growth_ratio = 0.0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  Error(ErrorKind kind, const std::string& detail, OverflowInfo info)
      : std::runtime_error(detail), kind_(kind), overflow_(info) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<OverflowInfo>& overflow() const noexcept { return overflow_; }

  /// Column index for errors raised from batched solves.
  std::optional<std::size_t> column;

 private:
  ErrorKind kind_;
  std::optional<OverflowInfo> overflow_;
};

}  // namespace circkr
