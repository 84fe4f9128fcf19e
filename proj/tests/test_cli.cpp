#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qpj/commands.hpp"

namespace qpj::cli {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qpj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("qpj_cli_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

TEST(Cli, ValidatePresets) {
  const auto f = invoke({"validate", "--preset", "free"});
  EXPECT_EQ(f.code, 0);
  EXPECT_NE(f.out.find("no zeros of c"), std::string::npos);
  const auto sh = invoke({"validate", "--preset", "singular-harper"});
  EXPECT_EQ(sh.code, 0);
  EXPECT_NE(sh.out.find("c has 1 zero at x = 0.5"), std::string::npos);
}

TEST(Cli, ValidateRejectsBadModels) {
  const auto dir = scratch("models");
  std::ofstream(dir / "complex_v.txt") << "alpha = 0.618\nc: 0 1 0\nv: 1 1 0\n";
  const auto v = invoke({"validate", "--model", (dir / "complex_v.txt").string()});
  EXPECT_EQ(v.code, 2);
  EXPECT_NE(v.err.find("k = (1)"), std::string::npos);
  std::ofstream(dir / "broken.txt") << "alpha = 0.618\nc: 0 1 0\nc: zero\n";
  const auto b = invoke({"validate", "--model", (dir / "broken.txt").string()});
  EXPECT_EQ(b.code, 2);
  EXPECT_NE(b.err.find("line 3"), std::string::npos);
  EXPECT_EQ(invoke({"validate", "--model", (dir / "missing.txt").string()}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"scan", "--preset", "free", "--emin", "1", "--emax", "1"}).code, 2);
  EXPECT_EQ(invoke({"scan", "--preset", "free", "--step", "0"}).code, 2);
  EXPECT_EQ(invoke({"certify", "--preset", "free"}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({"validate", "--preset", "nonsense"}).code, 2);
}

TEST(Cli, CertifyFree) {
  const auto ds = invoke({"certify", "--preset", "free", "-E", "3", "--phases", "64"});
  EXPECT_EQ(ds.code, 0);
  EXPECT_NE(ds.out.find("status: DS"), std::string::npos);
  EXPECT_NE(ds.out.find("N: 1"), std::string::npos);
  const auto no = invoke({"certify", "--preset", "free", "-E", "0", "--phases", "64"});
  EXPECT_EQ(no.code, 0);
  EXPECT_NE(no.out.find("status: NO_DS"), std::string::npos);
}

TEST(Cli, ScanWritesArtifactsDeterministically) {
  const auto a = scratch("scan_a");
  const auto b = scratch("scan_b");
  const std::vector<std::string> common{"scan", "--preset", "free", "--emin", "1.8", "--emax", "2.2",
                                        "--step", "0.1", "--phases", "32", "--le-steps", "4000",
                                        "--trunc-sizes", "64,128", "--trunc-phases", "2"};
  auto args = common;
  args.insert(args.end(), {"--out", a.string(), "--workers", "1"});
  ASSERT_EQ(invoke(args).code, 0);
  args = common;
  args.insert(args.end(), {"--out", b.string(), "--workers", "2"});
  ASSERT_EQ(invoke(args).code, 0);
  for (const char* f : {"scan.csv", "summary.json", "bands.svg"}) {
    ASSERT_TRUE(std::filesystem::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(Cli, OtherCommands) {
  const auto dir = scratch("other");
  EXPECT_EQ(invoke({"le-curve", "--preset", "amo", "--emin", "-1", "--emax", "1", "--step", "0.5",
                    "--le-steps", "2000", "--out", dir.string()})
                .code,
            0);
  EXPECT_TRUE(std::filesystem::exists(dir / "le_curve.csv"));
  EXPECT_EQ(invoke({"spectrum", "--preset", "free", "--trunc-sizes", "32,64", "--trunc-phases", "2", "--out",
                    dir.string()})
                .code,
            0);
  EXPECT_TRUE(std::filesystem::exists(dir / "spectrum.csv"));
  const auto s = invoke({"sections", "--preset", "free", "-E", "3", "--phases", "16", "--out", dir.string()});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("suspect 0"), std::string::npos);
}

}  // namespace
}  // namespace qpj::cli
