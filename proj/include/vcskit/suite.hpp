#pragma once

// Suite configuration and the full certification battery for one family.

#include "vcskit/checks.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace vcskit::cli {

struct Tolerances {
  double normalization = 1e-9;
  double moment = 1e-9;
  double moment_interpolating = 1e-7;
  double eigenrelation = 1e-8;
  double bch = 1e-8;  // also the displacement check
  double su11_exponential = 1e-7;
  double uncertainty = 1e-8;
  double uncertainty_bound = 1e-10;
  double algebra = 1e-12;
  double holomorphic_image = 1e-10;
  double mobius = 1e-10;

  bool operator==(const Tolerances&) const = default;
};

struct SuiteConfig {
  std::string family = "canonical";
  double kappa = 1.0;
  int n = 2;
  int M = 64;
  int M_check = 24;
  verify::GridSpec grid;
  double tol = 1e-6;  // resolution, kernel and isometry
  Tolerances tolerances;
  std::uint64_t seed = 0xC0FFEE;
  std::string out;  // empty: standard output
  std::string format = "jsonl";
  bool grid_convergence = true;

  bool operator==(const SuiteConfig&) const = default;

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
  vcs::FamilySpec family_spec() const;
};

void to_json(nlohmann::json& j, const SuiteConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, SuiteConfig& c);

SuiteConfig load_config(const std::string& path);
void save_config(const SuiteConfig& c, const std::string& path);

/// Largest radius used for random labels of each family in the stock suite.
double stock_radius(vcs::Family f);
/// Smaller cap for the kernel-reproduction labels.
double kernel_radius(vcs::Family f);

struct SuiteResult {
  std::vector<verify::VerificationReport> reports;
  int failures() const { return verify::count_failures(reports); }
};

/// Runs the battery for cfg's family. Exceptions raised by a single check
/// become a failing report carrying the message.
SuiteResult run_suite(const SuiteConfig& cfg);

/// Coefficient dump of |Z, j> (one-based j) plus the kernel row
/// K_{j,l}(Z†, Z_ref). Labels are polar quaternions for n = 2; for n = 1
/// r and theta give z = r e^{i theta}.
nlohmann::json dump_state(const SuiteConfig& cfg, const matrixdomain::PolarQuaternion& label, int j,
                          const matrixdomain::PolarQuaternion& reference = {});

}  // namespace vcskit::cli
