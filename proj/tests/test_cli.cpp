#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

namespace circkr {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "circkr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("circkr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto path = dir_ / name;
    std::ofstream(path) << body;
    return path.string();
  }
  static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  fs::path dir_;
};

TEST_F(CliTest, DecomposeReport) {
  const auto r = run_cli({"decompose", "--n", "5", "--c", "5", "--a", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.err.empty());
  EXPECT_NE(r.out.find("g = 34.03125\n"), std::string::npos);
  EXPECT_NE(r.out.find("scaled g (×a) = 68.0625\n"), std::string::npos);
  EXPECT_NE(r.out.find("f = 0, 1, -2.5, 5.25, -10.625, 21.3125, -42.6562"), std::string::npos);
  EXPECT_NE(r.out.find("r = -8.525, -1.62381, -0.382073, -0.0941176"), std::string::npos);
}

TEST_F(CliTest, DecomposeDenseToFile) {
  const auto path = (dir_ / "report.txt").string();
  const auto r = run_cli({"decompose", "--n", "5", "--c", "5", "--a", "2", "--dense", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const auto body = slurp(path);
  for (const char* section : {"# K\n", "# K_inv\n", "# R\n", "# R_inv\n", "# A1\n", "# A1_inv\n"}) {
    EXPECT_NE(body.find(section), std::string::npos) << section;
  }
  EXPECT_NE(body.find("# R\n1, 0, 0, 0, 0\n"), std::string::npos);
  EXPECT_NE(body.find("-8.525, -1.62381, -0.382073, -0.0941176, 1\n"), std::string::npos);

  const auto tri = run_cli({"decompose", "--n", "5", "--c", "5", "--a", "2", "--dense", "--variant",
                            "tridiagonal"});
  ASSERT_EQ(tri.code, 0);
  EXPECT_EQ(tri.out.find("# R\n"), std::string::npos);
  EXPECT_EQ(tri.out.find("g = "), std::string::npos);
}

TEST_F(CliTest, DecomposeErrors) {
  const auto dominance = run_cli({"decompose", "--n", "4", "--c", "4", "--a", "2"});
  EXPECT_EQ(dominance.code, 2);
  EXPECT_EQ(first_line(dominance.err).rfind("ERROR InvalidSpec: ", 0), 0u);
  EXPECT_TRUE(dominance.out.empty());

  const auto overflow = run_cli({"decompose", "--n", "2000", "--c", "5", "--a", "2"});
  EXPECT_EQ(overflow.code, 3);
  EXPECT_EQ(first_line(overflow.err).rfind("ERROR Overflow: ", 0), 0u);
  EXPECT_NE(overflow.err.find("max safe order n = 1023"), std::string::npos);

  const auto usage = run_cli({"decompose", "--n", "5", "--c", "5"});
  EXPECT_EQ(usage.code, 2);
  EXPECT_EQ(first_line(usage.err).rfind("ERROR Usage: ", 0), 0u);
}

TEST_F(CliTest, PermissiveModeFromEnvironment) {
  ::setenv("CIRCKR_STRICT", "0", 1);
  const auto relaxed = run_cli({"decompose", "--n", "7", "--c", "1.5", "--a", "1"});
  const auto singular = run_cli({"decompose", "--n", "4", "--c", "4", "--a", "2"});
  ::unsetenv("CIRCKR_STRICT");
  EXPECT_EQ(relaxed.code, 0);
  EXPECT_EQ(singular.code, 4);
  EXPECT_EQ(first_line(singular.err).rfind("ERROR SingularPivot: ", 0), 0u);
}

TEST_F(CliTest, Solve) {
  const auto rhs = write("b.txt", "19\n18\n27\n36\n35\n");
  const auto r = run_cli({"solve", "--n", "5", "--c", "5", "--a", "2", "--rhs", rhs});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n2\n3\n4\n5\n");

  const auto zeros = write("z.txt", "0\n0\n0\n0\n0\n");
  EXPECT_EQ(run_cli({"solve", "--n", "5", "--c", "5", "--a", "2", "--rhs", zeros}).out,
            "0\n0\n0\n0\n0\n");

  const auto short_rhs = write("s.txt", "1\n2\n3\n4\n");
  const auto bad = run_cli({"solve", "--n", "5", "--c", "5", "--a", "2", "--rhs", short_rhs});
  EXPECT_EQ(bad.code, 5);
  EXPECT_EQ(first_line(bad.err).rfind("ERROR DimensionMismatch: ", 0), 0u);
}

TEST_F(CliTest, SolveMultipleColumnsToFile) {
  const auto rhs = write("b.txt", "19 12\n18 12\n27 12\n36 12\n35 12\n");
  const auto out = (dir_ / "x.txt").string();
  const auto r = run_cli({"solve", "--n", "5", "--c", "5", "--a", "2", "--rhs", rhs, "--out", out});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(out), "1 1.33333\n2 1.33333\n3 1.33333\n4 1.33333\n5 1.33333\n");
}

TEST_F(CliTest, InvertFirstRowAndDense) {
  const auto row = run_cli({"invert", "--n", "5", "--c", "5", "--a", "2", "--mode", "first-row"});
  EXPECT_EQ(row.code, 0);
  EXPECT_EQ(row.out, "0.313131, -0.141414, 0.040404, 0.040404, -0.141414\n");

  const auto dense = run_cli({"invert", "--n", "5", "--c", "5", "--a", "2", "--mode", "dense"});
  ASSERT_EQ(dense.code, 0);
  std::istringstream lines(dense.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0] + "\n", row.out);
  EXPECT_EQ(rows[1], "-0.141414, 0.313131, -0.141414, 0.040404, 0.040404");

  const auto small = run_cli({"invert", "--n", "4", "--c", "10", "--a", "1", "--mode", "first-row"});
  EXPECT_EQ(small.out.substr(0, small.out.find(',')), "0.102083");
}

TEST_F(CliTest, InvertErrors) {
  const auto tri = run_cli({"invert", "--n", "5", "--c", "5", "--a", "2", "--mode", "first-row",
                            "--variant", "tridiagonal"});
  EXPECT_EQ(tri.code, 2);
  EXPECT_EQ(first_line(tri.err).rfind("ERROR VariantMismatch: ", 0), 0u);
  const auto big = run_cli({"invert", "--n", "10001", "--c", "2.0001", "--a", "1"});
  EXPECT_EQ(big.code, 6);
  EXPECT_EQ(first_line(big.err).rfind("ERROR SizeGuard: ", 0), 0u);
}

TEST_F(CliTest, InverseCsvRoundTrip) {
  const auto path = (dir_ / "inv.csv").string();
  ASSERT_EQ(run_cli({"invert", "--n", "12", "--c", "-4.5", "--a", "2", "--precision", "12", "--out",
                     path}).code,
            0);
  std::ifstream in(path);
  const auto inv = text::read_csv(in);
  const auto a = oracle::build_dense(SystemSpec<double>(12, -4.5, 2.0), Variant::circulant);
  EXPECT_LE(max_abs_diff(inv * a, DenseMatrix<double>::identity(12)), 1e-10);
}

TEST_F(CliTest, OutputIsDeterministic) {
  const std::vector<std::string> args{"invert", "--n", "40", "--c", "2.05", "--a", "1"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST_F(CliTest, Check) {
  const auto golden = run_cli({"check", "--n", "5", "--c", "5", "--a", "2"});
  EXPECT_EQ(golden.code, 0);
  EXPECT_NE(golden.out.find("status = ok"), std::string::npos);
  std::istringstream lines(golden.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("residual = ") == std::string::npos) continue;
    EXPECT_LE(std::stod(line.substr(line.find('=') + 1)), 1e-12) << line;
  }
  EXPECT_EQ(run_cli({"check", "--n", "64", "--c", "-5", "--a", "1"}).code, 0);
  EXPECT_EQ(run_cli({"check", "--n", "200", "--c", "4.1", "--a", "2"}).code, 0);
  EXPECT_EQ(run_cli({"check", "--n", "30", "--c", "7", "--a", "-2", "--variant", "tridiagonal"}).code,
            0);
}

TEST_F(CliTest, BenchSingleSizeAndOverflow) {
  const auto one = run_cli({"bench", "--sizes", "1024", "--reps", "3"});
  EXPECT_EQ(one.code, 0);
  EXPECT_NE(one.out.find("\n1024, "), std::string::npos);
  EXPECT_NE(one.out.find("slope = n/a"), std::string::npos);

  const auto overflow = run_cli({"bench", "--d", "2.5", "--sizes", "65536"});
  EXPECT_EQ(overflow.code, 3);
  EXPECT_EQ(first_line(overflow.err).rfind("ERROR Overflow: ", 0), 0u);
  EXPECT_NE(overflow.err.find("closer to 2"), std::string::npos);
}

}  // namespace
}  // namespace circkr
