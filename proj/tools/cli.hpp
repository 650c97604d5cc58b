#pragma once

// Command dispatch for the `circkr` tool. Kept header-only so the test
// suites can drive commands in-process.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circkr/circkr.hpp"
#include "circkr/oracle.hpp"
#include "circkr/text_io.hpp"

namespace circkr::cli {

/// Exit codes are part of the tool's stable interface.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidSpec = 2,
  kOverflow = 3,
  kSingular = 4,
  kDimension = 5,
  kSizeGuard = 6,
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Overflow: return kOverflow;
    case ErrorKind::ZeroPivot:
    case ErrorKind::SingularPivot:
    case ErrorKind::Inconsistency:
    case ErrorKind::Singular:
    case ErrorKind::SingularEigenvalue: return kSingular;
    case ErrorKind::DimensionMismatch: return kDimension;
    case ErrorKind::SizeGuard: return kSizeGuard;
    case ErrorKind::InvalidSpec:
    case ErrorKind::VariantMismatch:
    case ErrorKind::InvalidInput: return kInvalidSpec;
  }
  return kInvalidSpec;
}

/// CIRCKR_STRICT=0 relaxes the diagonal dominance requirement.
inline Mode mode_from_env() {
  const char* value = std::getenv("CIRCKR_STRICT");
  return value != nullptr && std::string(value) == "0" ? Mode::permissive : Mode::strict;
}

/// Residual threshold used by `check`.
inline constexpr double kCheckTolerance = 1e-8;

struct BenchRow {
  std::size_t n = 0;
  double median_seconds = 0.0;
  double ns_per_unknown = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::optional<double> slope;
};

/// Least-squares slope of log(seconds) against log(n).
inline std::optional<double> loglog_slope(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& row : rows) {
    mx += std::log(static_cast<double>(row.n));
    my += std::log(row.median_seconds);
  }
  mx /= static_cast<double>(rows.size());
  my /= static_cast<double>(rows.size());
  double sxy = 0, sxx = 0;
  for (const auto& row : rows) {
    const double dx = std::log(static_cast<double>(row.n)) - mx;
    sxy += dx * (std::log(row.median_seconds) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

/// Times the O(n) solve path. Each repetition solves a batch of right-hand
/// sides (about 2^20 unknowns in total) and records seconds per solve; the
/// median over repetitions is reported. Factorization is timed separately
/// and not included.
inline BenchResult run_bench(const std::vector<std::size_t>& sizes, double d, int reps,
                             Mode mode = Mode::strict) {
  constexpr std::size_t kUnknownsPerRep = std::size_t{1} << 20;
  BenchResult result;
  double sink = 0.0;
  for (const std::size_t n : sizes) {
    const auto fct = decompose(SystemSpec<double>(n, d, 1.0, mode));
    std::vector<double> b(n);
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : b) v = dist(rng);

    const std::size_t batch = std::max<std::size_t>(1, kUnknownsPerRep / n);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(reps));
    for (int rep = 0; rep < reps; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t k = 0; k < batch; ++k) sink += solve(fct, std::span<const double>(b))[k % n];
      const auto stop = std::chrono::steady_clock::now();
      samples.push_back(std::chrono::duration<double>(stop - start).count() /
                        static_cast<double>(batch));
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    const double median = samples.size() % 2 == 1 ? samples[mid]
                                                   : 0.5 * (samples[mid - 1] + samples[mid]);
    result.rows.push_back({n, median, median * 1e9 / static_cast<double>(n)});
  }
  // Keep the solves observable.
  if (std::isnan(sink)) std::cerr << "";
  result.slope = loglog_slope(result.rows);
  return result;
}

namespace detail {

struct SystemOptions {
  std::size_t n = 0;
  double c = 0.0;
  double a = 0.0;
  std::string variant = "circulant";
};

inline void add_system_options(CLI::App& cmd, SystemOptions& opts) {
  cmd.add_option("--n", opts.n, "matrix order (>= 3)")->required();
  cmd.add_option("--c", opts.c, "diagonal value")->required();
  cmd.add_option("--a", opts.a, "off-diagonal and corner value")->required();
  cmd.add_option("--variant", opts.variant, "circulant or tridiagonal")
      ->check(CLI::IsMember({"circulant", "tridiagonal"}));
}

inline Variant variant_of(const SystemOptions& opts) {
  return opts.variant == "tridiagonal" ? Variant::tridiagonal : Variant::circulant;
}

inline Factorization<double> factor(const SystemOptions& opts) {
  return decompose(SystemSpec<double>(opts.n, opts.c, opts.a, mode_from_env()), variant_of(opts));
}

/// Output sink: the named file, or the command's standard output.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline int cmd_decompose(const SystemOptions& opts, const std::string& out_path, bool dense,
                         int precision, std::ostream& out) {
  const auto fct = factor(opts);
  Sink sink(out_path, out);
  auto& os = sink.get();
  os << "variant = " << to_string(fct.variant) << '\n';
  os << "n = " << fct.n() << '\n';
  os << "c = " << text::format(opts.c) << '\n';
  os << "a = " << text::format(opts.a) << '\n';
  os << "d = " << text::format(fct.spec.d()) << '\n';
  if (fct.g) {
    os << "g = " << text::format(fct.g->value) << '\n';
    os << "scaled g (×a) = " << text::format(fct.g->value * fct.a()) << '\n';
  }
  os << "f = " << text::join(fct.f.values, precision, ", ") << '\n';
  if (fct.circulant()) os << "r = " << text::join(fct.r.values, precision, ", ") << '\n';
  if (dense) {
    std::vector<FactorKind> kinds{FactorKind::K, FactorKind::K_inv};
    if (fct.circulant()) {
      kinds.push_back(FactorKind::R);
      kinds.push_back(FactorKind::R_inv);
    }
    kinds.push_back(FactorKind::A1);
    kinds.push_back(FactorKind::A1_inv);
    for (const auto kind : kinds) {
      os << "\n# " << to_string(kind) << '\n';
      text::write_csv(os, materialize(fct, kind), precision);
    }
  }
  return kOk;
}

inline int cmd_solve(const SystemOptions& opts, const std::string& rhs_path,
                     const std::string& out_path, int precision, std::ostream& out) {
  const auto fct = factor(opts);
  std::ifstream in(rhs_path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read right-hand side '" + rhs_path + "'");
  const auto columns = text::read_columns(in);
  if (columns.empty()) throw Error(ErrorKind::DimensionMismatch, "right-hand side file is empty");
  const auto solutions = solve_many(fct, columns);
  Sink sink(out_path, out);
  text::write_columns(sink.get(), solutions, precision);
  return kOk;
}

inline int cmd_invert(const SystemOptions& opts, const std::string& mode,
                      const std::string& out_path, int precision, std::ostream& out) {
  const auto fct = factor(opts);
  if (mode == "first-row") {
    const auto row = inverse_first_row(fct);
    Sink sink(out_path, out);
    text::write_csv_row(sink.get(), row, precision);
  } else {
    const auto inv = inverse_dense(fct);
    Sink sink(out_path, out);
    text::write_csv(sink.get(), inv, precision);
  }
  return kOk;
}

inline int cmd_check(const SystemOptions& opts, std::ostream& out) {
  check_dense_guard(opts.n, "check");
  const auto fct = factor(opts);
  const auto& spec = fct.spec;
  const auto dense = oracle::build_dense(spec, fct.variant);
  const double scale = std::max(1.0, max_norm(dense));

  const double reconstruction = max_abs_diff(reconstruct(fct), dense) / scale;

  std::vector<double> b(spec.n());
  std::mt19937_64 rng(spec.n());
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& v : b) v = dist(rng);
  const auto x = solve(fct, b);
  const auto x_ref = oracle::dense_solve(dense, b);
  double solve_gap = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) solve_gap = std::max(solve_gap, std::abs(x[i] - x_ref[i]));
  const double solve_residual = solve_gap / std::max(inf_norm<double>(x_ref), 1e-300);

  double inverse_residual = 0.0;
  if (fct.circulant()) {
    const auto row = inverse_first_row(fct);
    const auto ref = oracle::spectral_first_row<long double>(spec);
    long double gap = 0.0L, size = 0.0L;
    for (std::size_t k = 0; k < row.size(); ++k) {
      gap = std::max(gap, std::abs(static_cast<long double>(row[k]) - ref[k]));
      size = std::max(size, std::abs(ref[k]));
    }
    inverse_residual = static_cast<double>(gap / size);
  } else {
    const auto inv = inverse_dense(fct);
    const auto ref = oracle::dense_inverse(dense);
    inverse_residual = max_abs_diff(inv, ref) / max_norm(ref);
  }
  const double identity_residual =
      max_abs_diff(inverse_dense(fct) * dense, DenseMatrix<double>::identity(spec.n()));

  const bool ok = reconstruction <= kCheckTolerance && solve_residual <= kCheckTolerance &&
                  inverse_residual <= kCheckTolerance && identity_residual <= kCheckTolerance;
  out << "reconstruction residual = " << text::format(reconstruction, 3) << '\n';
  out << "solve residual = " << text::format(solve_residual, 3) << '\n';
  out << "inverse residual = " << text::format(inverse_residual, 3) << '\n';
  out << "inverse identity residual = " << text::format(identity_residual, 3) << '\n';
  out << "status = " << (ok ? "ok" : "FAIL") << '\n';
  return ok ? kOk : kCheckFailed;
}

inline int cmd_bench(const std::vector<std::size_t>& sizes, double d, int reps, std::ostream& out) {
  for (const auto n : sizes) {
    if (n < 3) throw Error(ErrorKind::InvalidSpec, "bench sizes must be >= 3");
  }
  if (reps < 1) throw Error(ErrorKind::InvalidSpec, "--reps must be >= 1");
  BenchResult result;
  try {
    result = run_bench(sizes, d, reps, mode_from_env());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
    std::string detail = e.what();
    detail += "; use smaller --sizes or a --d closer to 2";
    throw Error(ErrorKind::Overflow, detail);
  }
  out << "n, median_seconds, ns_per_unknown\n";
  for (const auto& row : result.rows) {
    out << row.n << ", " << text::format(row.median_seconds, 6) << ", "
        << text::format(row.ns_per_unknown, 4) << '\n';
  }
  out << "slope = " << (result.slope ? text::format(*result.slope, 4) : std::string("n/a")) << '\n';
  return kOk;
}

}  // namespace detail

/// Parses and runs one command. Errors go to `err` with a first line of the
/// form `ERROR <kind>: <detail>`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose, solve and invert symmetric circulant tridiagonal systems", "circkr"};
  app.require_subcommand(1);

  detail::SystemOptions sys;
  std::string out_path;
  int precision = 6;
  bool dense = false;
  std::string rhs_path;
  std::string invert_mode = "dense";
  std::vector<std::size_t> sizes{4096, 8192, 16384, 32768, 65536};
  double bench_d = 2.0001;
  int reps = 10;

  auto* decompose_cmd = app.add_subcommand("decompose", "print the factor report");
  detail::add_system_options(*decompose_cmd, sys);
  decompose_cmd->add_option("--out", out_path, "write the report to this file");
  decompose_cmd->add_flag("--dense", dense, "append every materialized factor as CSV");
  decompose_cmd->add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));

  auto* solve_cmd = app.add_subcommand("solve", "solve A x = b for one or more right-hand sides");
  detail::add_system_options(*solve_cmd, sys);
  solve_cmd->add_option("--rhs", rhs_path, "right-hand side file")->required();
  solve_cmd->add_option("--out", out_path, "write the solution to this file");
  solve_cmd->add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));

  auto* invert_cmd = app.add_subcommand("invert", "write the inverse matrix");
  detail::add_system_options(*invert_cmd, sys);
  invert_cmd->add_option("--mode", invert_mode, "dense or first-row")
      ->check(CLI::IsMember({"dense", "first-row"}));
  invert_cmd->add_option("--out", out_path, "write the matrix to this file");
  invert_cmd->add_option("--precision", precision, "significant digits")->check(CLI::Range(1, 17));

  auto* check_cmd = app.add_subcommand("check", "compare the factorization against dense oracles");
  detail::add_system_options(*check_cmd, sys);

  auto* bench_cmd = app.add_subcommand("bench", "time the O(n) solve path");
  bench_cmd->add_option("--sizes", sizes, "comma separated orders")->delimiter(',');
  bench_cmd->add_option("--d", bench_d, "normalized diagonal c/a");
  bench_cmd->add_option("--reps", reps, "repetitions per size (median reported)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "ERROR Usage: " << e.what() << '\n';
    return kInvalidSpec;
  }

  try {
    if (*decompose_cmd) return detail::cmd_decompose(sys, out_path, dense, precision, out);
    if (*solve_cmd) return detail::cmd_solve(sys, rhs_path, out_path, precision, out);
    if (*invert_cmd) return detail::cmd_invert(sys, invert_mode, out_path, precision, out);
    if (*check_cmd) return detail::cmd_check(sys, out);
    if (*bench_cmd) return detail::cmd_bench(sizes, bench_d, reps, out);
  } catch (const Error& e) {
    err << "ERROR " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return kInvalidSpec;
}

}  // namespace circkr::cli
