// vcs-kit: run certification suites and dump coherent states.
//
// Exit status: verify returns the number of failed checks (capped at 63);
// usage and configuration errors return 64; dump returns 0 or 64.

#include "vcskit/suite.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <regex>

namespace {

using vcskit::cli::SuiteConfig;

constexpr int kUsageError = 64;
constexpr int kMaxFailureCode = 63;

struct Flags {
  std::string config;
  std::string write_config;
  std::string family;
  double kappa = 0.0;
  int n = 0;
  int M = 0;
  int M_check = 0;
  int grid_r = 0;
  int grid_zeta = 0;
  std::string grid_sphere;
  double rmax = 0.0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  bool no_convergence = false;
};

void add_config_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config file; flags override its values");
  app->add_option("--write-config", f.write_config, "write the effective config to this path and exit");
  app->add_option("--family", f.family, "canonical | gilmore-perelomov | barut-girardello | interpolating");
  app->add_option("--kappa", f.kappa, "SU(1,1) label (1, 3/2, 2, ...)");
  app->add_option("--n", f.n, "internal dimension (1 or 2)");
  app->add_option("--M", f.M, "Fock truncation");
  app->add_option("--M-check", f.M_check, "highest mode certified by the quadrature checks");
  app->add_option("--grid-r", f.grid_r, "radial Gauss-Legendre nodes");
  app->add_option("--grid-zeta", f.grid_zeta, "trapezoid nodes in zeta");
  app->add_option("--grid-sphere", f.grid_sphere, "sphere grid as POLARxAZIMUTH, e.g. 32x64");
  app->add_option("--rmax", f.rmax, "radial cutoff (0 = from the tail bound)");
  app->add_option("--tol", f.tol, "tolerance for resolution, kernel and isometry");
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--out", f.out, "output path (default: stdout)");
  app->add_option("--format", f.format, "report format")->check(CLI::IsMember({"jsonl", "csv"}));
  app->add_flag("--no-grid-convergence", f.no_convergence, "skip the grid-doubling rerun");
}

SuiteConfig resolve(const CLI::App* app, const Flags& f) {
  SuiteConfig c = f.config.empty() ? SuiteConfig{} : vcskit::cli::load_config(f.config);
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--family")) c.family = f.family;
  if (given("--kappa")) c.kappa = f.kappa;
  if (given("--n")) c.n = f.n;
  if (given("--M")) c.M = f.M;
  if (given("--M-check")) c.M_check = f.M_check;
  if (given("--grid-r")) c.grid.radial = f.grid_r;
  if (given("--grid-zeta")) c.grid.zeta = f.grid_zeta;
  if (given("--grid-sphere")) {
    static const std::regex re(R"((\d+)[xX×*](\d+))");
    std::smatch m;
    if (!std::regex_match(f.grid_sphere, m, re)) {
      throw std::invalid_argument("--grid-sphere expects POLARxAZIMUTH, got '" + f.grid_sphere + "'");
    }
    c.grid.sphere_polar = std::stoi(m[1]);
    c.grid.sphere_azimuth = std::stoi(m[2]);
  }
  if (given("--rmax")) c.grid.r_max = f.rmax;
  if (given("--tol")) c.tol = f.tol;
  if (given("--seed")) c.seed = f.seed;
  if (given("--out")) c.out = f.out;
  if (given("--format")) c.format = f.format;
  if (f.no_convergence) c.grid_convergence = false;
  // An unset M_check follows a small M down rather than making the config invalid.
  if (!given("--M-check") && f.config.empty() && c.M_check >= c.M) c.M_check = std::max(0, c.M - 1);
  vcskit::vcs::parse_family(c.family);
  c.validate();
  return c;
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  fn(os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector coherent state toolkit"};
  app.require_subcommand(1);

  Flags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "run the certification suite for one family");
  add_config_flags(verify, verify_flags);

  Flags dump_flags;
  double r = 0.0, theta = 0.0, phi = 0.0, psi = 0.0;
  double ref_r = 0.0, ref_theta = 0.0, ref_phi = 0.0, ref_psi = 0.0;
  int j = 1;
  CLI::App* dump = app.add_subcommand("dump", "write the coefficients of |Z, j> and a kernel row");
  add_config_flags(dump, dump_flags);
  dump->add_option("--r", r, "label radius");
  dump->add_option("--theta", theta, "label angle theta (zeta for n = 1)");
  dump->add_option("--phi", phi, "label angle phi");
  dump->add_option("--psi", psi, "label angle psi");
  dump->add_option("--j", j, "component index, 1-based");
  dump->add_option("--ref-r", ref_r, "reference label radius for the kernel row");
  dump->add_option("--ref-theta", ref_theta);
  dump->add_option("--ref-phi", ref_phi);
  dump->add_option("--ref-psi", ref_psi);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (verify->parsed()) {
      const SuiteConfig cfg = resolve(verify, verify_flags);
      if (!verify_flags.write_config.empty()) {
        vcskit::cli::save_config(cfg, verify_flags.write_config);
        return 0;
      }
      const auto result = vcskit::cli::run_suite(cfg);
      with_output(cfg.out, [&](std::ostream& os) {
        vcskit::verify::write_reports(os, result.reports, vcskit::verify::parse_report_format(cfg.format));
      });
      const int failures = result.failures();
      if (failures > 0) {
        std::cerr << "vcs-kit: " << failures << " of " << result.reports.size() << " checks failed\n";
        for (const auto& rep : result.reports) {
          if (!rep.pass && rep.params.contains("error")) {
            std::cerr << "  " << rep.check << ": " << rep.params["error"].get<std::string>() << '\n';
          }
        }
      }
      return std::min(failures, kMaxFailureCode);
    }
    const SuiteConfig cfg = resolve(dump, dump_flags);
    if (!dump_flags.write_config.empty()) {
      vcskit::cli::save_config(cfg, dump_flags.write_config);
      return 0;
    }
    const auto doc = vcskit::cli::dump_state(cfg, {r, theta, phi, psi}, j, {ref_r, ref_theta, ref_phi, ref_psi});
    with_output(cfg.out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "vcs-kit: error: " << e.what() << '\n';
    return kUsageError;
  }
}
