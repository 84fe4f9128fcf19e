#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qpj/model.hpp"
#include "qpj/spectrum.hpp"

namespace qpj::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

struct RunConfig {
  std::string model_path;
  std::string preset;
  double lambda = 0.5;
  double alpha = golden_alpha();
  double e_min = -3.0;
  double e_max = 3.0;
  double step = 0.01;
  double energy = 0.0;
  long phases = 512;
  std::vector<long> trunc_sizes{512, 1024};
  long trunc_phases = 8;
  int n_max = 64;
  double margin = 0.05;
  double tolerance = 1e-8;  // m-function truncation tolerance
  long le_steps = 100'000;
  long le_phases = 8;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  std::string kind = "A";
  std::string section = "s_minus";
  std::filesystem::path out = ".";
};

JacobiModel load(const RunConfig& c);
ScanConfig scan_config(const RunConfig& c);

int cmd_validate(const RunConfig& c, std::ostream& out);
int cmd_scan(const RunConfig& c, std::ostream& out);
int cmd_certify(const RunConfig& c, std::ostream& out);
int cmd_le_curve(const RunConfig& c, std::ostream& out);
int cmd_spectrum(const RunConfig& c, std::ostream& out);
int cmd_sections(const RunConfig& c, std::ostream& out);

// Parses argv and dispatches; maps errors to exit codes (2 usage/config, 1 numerical/internal).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpj::cli
