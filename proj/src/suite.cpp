#include "vcskit/suite.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>

namespace vcskit::cli {

using verify::VerificationReport;

void SuiteConfig::validate() const {
  const vcs::Family f = vcs::parse_family(family);
  if (f != vcs::Family::canonical && !fock::is_discrete_series_label(kappa)) {
    throw std::invalid_argument("kappa must be one of 1, 3/2, 2, ...");
  }
  if (n != 1 && n != 2) throw std::invalid_argument("n must be 1 or 2");
  if (M < 2) throw std::invalid_argument("M must be at least 2");
  if (M_check < 0 || M_check >= M) throw std::invalid_argument("M_check must satisfy 0 <= M_check < M");
  if (grid.radial < 2 || grid.zeta < 1 || grid.sphere_polar < 1 || grid.sphere_azimuth < 1) {
    throw std::invalid_argument("grid sizes must be positive (radial >= 2)");
  }
  if (grid.r_max < 0.0) throw std::invalid_argument("rmax must be >= 0 (0 selects it automatically)");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (format != "jsonl" && format != "csv") throw std::invalid_argument("format must be jsonl or csv");
}

vcs::FamilySpec SuiteConfig::family_spec() const { return vcs::family_spec(family, kappa); }

namespace {

nlohmann::json tolerances_json(const Tolerances& t) {
  return {{"normalization", t.normalization},
          {"moment", t.moment},
          {"moment_interpolating", t.moment_interpolating},
          {"eigenrelation", t.eigenrelation},
          {"bch", t.bch},
          {"su11_exponential", t.su11_exponential},
          {"uncertainty", t.uncertainty},
          {"uncertainty_bound", t.uncertainty_bound},
          {"algebra", t.algebra},
          {"holomorphic_image", t.holomorphic_image},
          {"mobius", t.mobius}};
}

void read_tolerances(const nlohmann::json& j, Tolerances& t) {
  const std::map<std::string, double*> fields{{"normalization", &t.normalization},
                                              {"moment", &t.moment},
                                              {"moment_interpolating", &t.moment_interpolating},
                                              {"eigenrelation", &t.eigenrelation},
                                              {"bch", &t.bch},
                                              {"su11_exponential", &t.su11_exponential},
                                              {"uncertainty", &t.uncertainty},
                                              {"uncertainty_bound", &t.uncertainty_bound},
                                              {"algebra", &t.algebra},
                                              {"holomorphic_image", &t.holomorphic_image},
                                              {"mobius", &t.mobius}};
  for (const auto& [key, value] : j.items()) {
    auto it = fields.find(key);
    if (it == fields.end()) throw std::invalid_argument("unknown tolerance '" + key + "'");
    *it->second = value.get<double>();
  }
}

}  // namespace

void to_json(nlohmann::json& j, const SuiteConfig& c) {
  j = nlohmann::json{{"family", c.family},
                     {"kappa", c.kappa},
                     {"n", c.n},
                     {"M", c.M},
                     {"M_check", c.M_check},
                     {"grid",
                      {{"radial", c.grid.radial},
                       {"zeta", c.grid.zeta},
                       {"sphere", {c.grid.sphere_polar, c.grid.sphere_azimuth}}}},
                     {"rmax", c.grid.r_max},
                     {"tol", c.tol},
                     {"tolerances", tolerances_json(c.tolerances)},
                     {"seed", c.seed},
                     {"out", c.out},
                     {"format", c.format},
                     {"grid_convergence", c.grid_convergence}};
}

void from_json(const nlohmann::json& j, SuiteConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "family") c.family = value.get<std::string>();
    else if (key == "kappa") c.kappa = value.get<double>();
    else if (key == "n") c.n = value.get<int>();
    else if (key == "M") c.M = value.get<int>();
    else if (key == "M_check") c.M_check = value.get<int>();
    else if (key == "rmax") c.grid.r_max = value.get<double>();
    else if (key == "tol") c.tol = value.get<double>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "out") c.out = value.get<std::string>();
    else if (key == "format") c.format = value.get<std::string>();
    else if (key == "grid_convergence") c.grid_convergence = value.get<bool>();
    else if (key == "tolerances") read_tolerances(value, c.tolerances);
    else if (key == "grid") {
      for (const auto& [gk, gv] : value.items()) {
        if (gk == "radial") c.grid.radial = gv.get<int>();
        else if (gk == "zeta") c.grid.zeta = gv.get<int>();
        else if (gk == "sphere") {
          const auto s = gv.get<std::vector<int>>();
          if (s.size() != 2) throw std::invalid_argument("grid.sphere must be [polar, azimuth]");
          c.grid.sphere_polar = s[0];
          c.grid.sphere_azimuth = s[1];
        } else {
          throw std::invalid_argument("unknown grid key '" + gk + "'");
        }
      }
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  SuiteConfig c;
  from_json(nlohmann::json::parse(in), c);
  return c;
}

void save_config(const SuiteConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file " + path);
  out << nlohmann::json(c).dump(2) << '\n';
}

double stock_radius(vcs::Family f) { return f == vcs::Family::gilmore_perelomov ? 0.9 : 3.0; }

double kernel_radius(vcs::Family f) { return f == vcs::Family::gilmore_perelomov ? 0.5 : 1.5; }

namespace {

using matrixdomain::MatrixVariable;
using matrixdomain::Quaternion;
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Quaternion random_quaternion(Rng& rng, double r) {
  std::normal_distribution<double> g;
  std::array<double, 4> x{};
  double len = 0.0;
  while (len < 1e-6) {
    for (auto& v : x) v = g(rng);
    len = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  }
  return Quaternion(x[0], x[1], x[2], x[3]).scaled(r / len);
}

MatrixVariable random_label(Rng& rng, int n, double r_cap) {
  const double r = uniform(rng, 0.05, 1.0) * r_cap;
  if (n == 1) return MatrixVariable::scalar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
  return MatrixVariable::from_quaternion(random_quaternion(rng, r).to_polar());
}

fock::StateVector random_state(Rng& rng, fock::TruncatedSpace space, int support) {
  std::normal_distribution<double> g;
  fock::StateVector v(space);
  for (int j = 0; j < space.n; ++j) {
    for (int m = 0; m <= support; ++m) v(j, m) = cplx(g(rng), g(rng));
  }
  v.coeffs.normalize();
  return v;
}

VerificationReport failed(const std::string& check, const SuiteConfig& cfg, const std::exception& e) {
  return VerificationReport::make(check, vcs::to_string(vcs::parse_family(cfg.family)), cfg.kappa, cfg.M,
                                  std::numeric_limits<double>::infinity(), 0.0, {{"error", e.what()}});
}

struct Battery {
  const SuiteConfig& cfg;
  std::vector<VerificationReport>& out;

  void run(const std::string& name, const std::function<VerificationReport()>& f) {
    try {
      out.push_back(f());
    } catch (const std::exception& e) {
      out.push_back(failed(name, cfg, e));
    }
  }
};

// Inputs drawn once so that grid-doubled reruns see the same samples.
struct Samples {
  std::vector<MatrixVariable> labels;
  std::vector<std::pair<MatrixVariable, MatrixVariable>> kernel_pairs;
  std::vector<fock::StateVector> isometry_states;
};

std::vector<VerificationReport> quadrature_checks(const SuiteConfig& cfg, const vcs::FamilySpec& fam,
                                                  const verify::GridSpec& grid, const Samples& s,
                                                  verify::GramCache& cache) {
  std::vector<VerificationReport> out;
  Battery b{cfg, out};
  b.run("resolution", [&] {
    return verify::check_resolution(fam, cfg.n, cfg.M, cfg.M_check, grid, cfg.tol, &cache).report;
  });
  b.run("kernel", [&] {
    return verify::check_kernel(fam, s.kernel_pairs, grid, cfg.tol, &cache, {true, cfg.M_check + 1});
  });
  b.run("isometry", [&] { return verify::check_isometry(fam, s.isometry_states, grid, cfg.tol, &cache); });
  return out;
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  const vcs::FamilySpec fam = cfg.family_spec();
  const vcs::Family f = fam.name();
  const Tolerances& t = cfg.tolerances;
  Rng rng(cfg.seed);

  Samples s;
  for (int i = 0; i < 20; ++i) s.labels.push_back(random_label(rng, cfg.n, stock_radius(f)));
  for (int i = 0; i < 10; ++i) {
    MatrixVariable a = random_label(rng, cfg.n, kernel_radius(f));
    MatrixVariable b = random_label(rng, cfg.n, kernel_radius(f));
    s.kernel_pairs.emplace_back(std::move(a), std::move(b));
  }
  const fock::TruncatedSpace iso_space(cfg.n, cfg.M_check + 1);
  s.isometry_states.push_back(fock::StateVector::basis(iso_space, 0, 0));
  for (int i = 0; i < 10; ++i) s.isometry_states.push_back(random_state(rng, iso_space, cfg.M_check));

  SuiteResult result;
  auto& out = result.reports;
  Battery b{cfg, out};

  b.run("normalization", [&] { return verify::check_normalization(fam, s.labels, cfg.M, t.normalization); });
  b.run("moment", [&] {
    const bool interp = f == vcs::Family::interpolating;
    return verify::check_moment(fam, interp ? 10 : 20, interp ? t.moment_interpolating : t.moment);
  });
  b.run("eigenrelation", [&] { return verify::check_eigenrelation(fam, s.labels, cfg.M, t.eigenrelation); });

  verify::GramCache cache;
  const auto quad = quadrature_checks(cfg, fam, cfg.grid, s, cache);
  out.insert(out.end(), quad.begin(), quad.end());

  if (f == vcs::Family::canonical) {
    b.run("algebra", [&] { return verify::check_algebra(verify::AlgebraRep::oscillator, 0.0, cfg.M, t.algebra); });
  } else {
    b.run("algebra", [&] { return verify::check_algebra(verify::AlgebraRep::su11, cfg.kappa, cfg.M, t.algebra); });
    b.run("algebra", [&] {
      return verify::check_algebra(verify::AlgebraRep::interpolating, cfg.kappa, cfg.M, t.algebra);
    });
  }

  if (f == vcs::Family::canonical && cfg.n == 2) {
    std::vector<Quaternion> qs;
    for (int i = 0; i < 10; ++i) qs.push_back(random_quaternion(rng, uniform(rng, 0.05, 2.0)));
    std::vector<Quaternion> small;
    for (int i = 0; i < 5; ++i) small.push_back(random_quaternion(rng, uniform(rng, 0.05, 1.5)));

    const auto ladder = fock::build_ladder(fam.xs(), cfg.M);
    const auto qp = fock::quadrature_pair(ladder.lower, ladder.raise);
    const auto Q = fock::tensorize(qp.q, 2);
    const auto P = fock::tensorize(qp.p, 2);
    b.run("uncertainty_minimal", [&] {
      std::vector<fock::StateVector> states;
      for (const auto& q : qs) {
        auto pair = vcs::minimal_uncertainty_pair(q, cfg.M);
        states.push_back(std::move(pair.plus));
        states.push_back(std::move(pair.minus));
      }
      return verify::check_uncertainty(states, Q, P, verify::UncertaintyMode::minimal, t.uncertainty);
    });
    b.run("uncertainty_bound", [&] {
      std::vector<fock::StateVector> states;
      const fock::TruncatedSpace space(2, cfg.M);
      for (int i = 0; i < 50; ++i) states.push_back(random_state(rng, space, cfg.M - 2));
      for (const auto& q : qs) {
        const MatrixVariable z = MatrixVariable::from_quaternion(q.to_polar());
        fock::StateVector v = vcs::build_state(fam, z, 0, cfg.M);
        v.coeffs.normalize();
        states.push_back(std::move(v));
      }
      return verify::check_uncertainty(states, Q, P, verify::UncertaintyMode::lower_bound, t.uncertainty_bound);
    });
    b.run("displacement", [&] { return verify::check_displacement(small, std::max(cfg.M, 48), t.bch); });
    b.run("bch", [&] { return verify::check_bch(small, std::max(cfg.M, 48), t.bch); });
    b.run("holomorphic_image", [&] {
      std::vector<fock::StateVector> states;
      const fock::TruncatedSpace space(2, cfg.M);
      for (int i = 0; i < 5; ++i) states.push_back(random_state(rng, space, std::min(cfg.M_check, cfg.M - 1)));
      return verify::check_holomorphic_image(states, qs, t.holomorphic_image);
    });
  }

  if (f == vcs::Family::gilmore_perelomov) {
    if (cfg.n == 2) {
      b.run("su11_exponential", [&] {
        std::vector<Quaternion> ws;
        for (int i = 0; i < 5; ++i) ws.push_back(random_quaternion(rng, uniform(rng, 0.05, 1.0)));
        return verify::check_su11_exponential(cfg.kappa, ws, std::max(cfg.M, 96), t.su11_exponential);
      });
    }
    b.run("mobius", [&] {
      std::vector<cplx> z0s;
      std::vector<cplx> points;
      for (int i = 0; i < 4; ++i) z0s.push_back(std::polar(uniform(rng, 0.0, 0.8), uniform(rng, 0.0, 6.283)));
      for (int i = 0; i < 10; ++i) points.push_back(std::polar(uniform(rng, 0.0, 0.8), uniform(rng, 0.0, 6.283)));
      return verify::check_mobius(cfg.kappa, z0s, points, t.mobius);
    });
  }

  if (f == vcs::Family::barut_girardello) {
    b.run("bg_annihilation", [&] {
      std::vector<cplx> ws;
      for (int i = 0; i < 10; ++i) ws.push_back(std::polar(uniform(rng, 0.05, 3.0), uniform(rng, 0.0, 6.283)));
      return verify::check_bg_annihilation(cfg.kappa, ws, cfg.M, t.eigenrelation);
    });
  }

  if (cfg.grid_convergence) {
    verify::GramCache doubled_cache;
    const auto doubled = quadrature_checks(cfg, fam, cfg.grid.doubled(), s, doubled_cache);
    const auto conv = verify::check_grid_convergence(quad, doubled);
    out.insert(out.end(), conv.begin(), conv.end());
  }
  for (auto& r : out) r.params["seed"] = cfg.seed;
  return result;
}

nlohmann::json dump_state(const SuiteConfig& cfg, const matrixdomain::PolarQuaternion& label, int j,
                          const matrixdomain::PolarQuaternion& reference) {
  cfg.validate();
  if (j < 1 || j > cfg.n) throw std::invalid_argument("j must be in 1.." + std::to_string(cfg.n));
  const vcs::FamilySpec fam = cfg.family_spec();
  auto make = [&](const matrixdomain::PolarQuaternion& p) {
    if (!fam.in_domain(p.r)) {
      throw vcs::OutOfDomain("label radius " + std::to_string(p.r) + " outside the domain of " +
                             vcs::to_string(fam.name()));
    }
    return cfg.n == 2 ? MatrixVariable::from_quaternion(p) : MatrixVariable::scalar(p.r, p.theta);
  };
  const MatrixVariable z = make(label);
  const MatrixVariable zref = make(reference);
  const fock::StateVector state = vcs::build_state(fam, z, j - 1, cfg.M);
  nlohmann::json out = vcs::state_to_json(fam, nlohmann::json(label), j - 1, state);
  const MatrixXc k = vcs::kernel(fam, z, zref, cfg.M);
  nlohmann::json row = nlohmann::json::array();
  for (int l = 0; l < cfg.n; ++l) row.push_back({k(j - 1, l).real(), k(j - 1, l).imag()});
  out["kernel_reference"] = reference;
  out["kernel_row"] = std::move(row);
  return out;
}

}  // namespace vcskit::cli
