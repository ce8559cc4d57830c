// Acceptance run: one line per criterion, nonzero exit when any fails.

#include "vcskit/checks.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace vcskit;
using namespace vcskit::verify;
using vcs::Family;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
using Rng = std::mt19937_64;

struct Case {
  Family family;
  double kappa;
};

const std::vector<Case> kAllFamilies{{Family::canonical, 1.0},        {Family::gilmore_perelomov, 1.0},
                                     {Family::gilmore_perelomov, 1.5}, {Family::gilmore_perelomov, 2.0},
                                     {Family::barut_girardello, 1.0},  {Family::barut_girardello, 2.0},
                                     {Family::interpolating, 1.0},     {Family::interpolating, 1.5}};

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

MatrixVariable random_label(Rng& rng, double r_cap) {
  return MatrixVariable::from_quaternion(random_quaternion(rng, uniform(rng, 0.0, 1.0) * r_cap).to_polar());
}

StateVector random_state(Rng& rng, fock::TruncatedSpace space, int support) {
  std::normal_distribution<double> g;
  StateVector v(space);
  for (int j = 0; j < space.n; ++j)
    for (int m = 0; m <= support; ++m) v(j, m) = cplx(g(rng), g(rng));
  v.coeffs.normalize();
  return v;
}

std::string tag(const Case& c) {
  std::string s = vcs::to_string(c.family);
  if (c.family != Family::canonical) s += " k=" + std::to_string(c.kappa).substr(0, 3);
  return s;
}

// Worst report of a criterion plus the reports that fed it.
struct Criterion {
  int id;
  std::string name;
  std::vector<VerificationReport> reports;
  std::string detail;

  bool pass() const {
    if (reports.empty()) return false;
    for (const auto& r : reports)
      if (!r.pass) return false;
    return true;
  }
};

void print(const Criterion& c, double seconds) {
  const VerificationReport* worst = nullptr;
  double worst_ratio = -1.0;
  for (const auto& r : c.reports) {
    const double ratio = r.tol > 0 ? r.residual / r.tol : r.residual;
    if (!r.pass || ratio > worst_ratio) {
      worst_ratio = r.pass ? ratio : std::numeric_limits<double>::infinity();
      worst = &r;
      if (!r.pass) break;
    }
  }
  std::printf("[%s] %2d %-26s", c.pass() ? "PASS" : "FAIL", c.id, c.name.c_str());
  if (worst != nullptr) {
    std::printf(" worst %-18s %-22s residual %.3e tol %.0e", worst->check.c_str(),
                (worst->family + (worst->kappa == 0.0 || worst->family == "canonical"
                                      ? ""
                                      : " k=" + std::to_string(worst->kappa).substr(0, 3)))
                    .c_str(),
                worst->residual, worst->tol);
  }
  std::printf("  (%zu reports, %.1fs)%s%s\n", c.reports.size(), seconds, c.detail.empty() ? "" : "  ",
              c.detail.c_str());
  if (!c.pass()) {
    for (const auto& r : c.reports) {
      if (!r.pass) std::printf("       failed: %s %s\n", r.check.c_str(), r.params.dump().c_str());
    }
  }
}

VerificationReport guarded(const std::string& check, const Case& c, const std::function<VerificationReport()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return VerificationReport::make(check, vcs::to_string(c.family), c.kappa, 0,
                                    std::numeric_limits<double>::infinity(), 0.0, {{"error", e.what()}});
  }
}

constexpr int kM = 64;
constexpr int kMCheck = 24;

struct QuadratureInputs {
  std::vector<std::pair<MatrixVariable, MatrixVariable>> kernel_pairs;
  std::vector<StateVector> isometry_states;
};

double quadrature_tol(Family f) {
  return f == Family::barut_girardello || f == Family::interpolating ? 1e-5 : 1e-6;
}

}  // namespace

int main() {
  Rng rng(0xC0FFEE);
  std::vector<Criterion> results;
  const auto t_start = std::chrono::steady_clock::now();
  auto timed = [&](Criterion c, const std::function<void(Criterion&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body(c);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    print(c, dt);
    std::fflush(stdout);
    results.push_back(std::move(c));
  };

  timed({1, "normalization", {}, "20 labels per family, auto M"}, [&](Criterion& c) {
    for (const Case& k : kAllFamilies) {
      const double cap = k.family == Family::gilmore_perelomov ? 0.95 : 3.0;
      std::vector<MatrixVariable> labels;
      for (int i = 0; i < 20; ++i) labels.push_back(random_label(rng, cap));
      const auto fam = vcs::family_spec(k.family, k.kappa);
      c.reports.push_back(guarded("normalization", k, [&] { return check_normalization(fam, labels, 0, 1e-9); }));
    }
  });

  timed({2, "moment conditions", {}, "canonical, G-P m<=20; INT printed form m<=10"}, [&](Criterion& c) {
    for (const Case& k : kAllFamilies) {
      if (k.family == Family::barut_girardello) continue;
      const auto fam = vcs::family_spec(k.family, k.kappa);
      const bool interp = k.family == Family::interpolating;
      c.reports.push_back(
          guarded("moment", k, [&] { return check_moment(fam, interp ? 10 : 20, interp ? 1e-7 : 1e-9); }));
    }
  });

  // Inputs for the quadrature criteria, fixed so the grid-doubled rerun sees the same samples.
  std::vector<QuadratureInputs> inputs;
  for (const Case& k : kAllFamilies) {
    QuadratureInputs in;
    if (k.family == Family::canonical) {
      for (int i = 0; i < 10; ++i) {
        MatrixVariable a = random_label(rng, 1.5);
        MatrixVariable b = random_label(rng, 1.5);
        in.kernel_pairs.emplace_back(std::move(a), std::move(b));
      }
    }
    const fock::TruncatedSpace space(2, kMCheck + 1);
    for (int i = 0; i < 10; ++i) in.isometry_states.push_back(random_state(rng, space, kMCheck));
    inputs.push_back(std::move(in));
  }

  struct QuadratureRun {
    std::vector<VerificationReport> resolution, kernel, isometry;
  };
  auto run_quadrature = [&](const GridSpec& grid) {
    QuadratureRun q;
    for (std::size_t i = 0; i < kAllFamilies.size(); ++i) {
      const Case& k = kAllFamilies[i];
      const auto fam = vcs::family_spec(k.family, k.kappa);
      const double tol = quadrature_tol(k.family);
      GramCache cache;
      q.resolution.push_back(guarded("resolution", k, [&] {
        return check_resolution(fam, 2, kM, kMCheck, grid, tol, &cache).report;
      }));
      if (!inputs[i].kernel_pairs.empty()) {
        q.kernel.push_back(guarded("kernel", k, [&] {
          return check_kernel(fam, inputs[i].kernel_pairs, grid, 1e-6, &cache, {true, kMCheck + 1});
        }));
      }
      q.isometry.push_back(guarded("isometry", k, [&] {
        return check_isometry(fam, inputs[i].isometry_states, grid, 1e-6, &cache);
      }));
    }
    return q;
  };

  const GridSpec grid;
  QuadratureRun base;
  timed({3, "resolution of identity", {}, "n=2, modes<=24"}, [&](Criterion& c) {
    base = run_quadrature(grid);
    c.reports = base.resolution;
  });
  timed({4, "reproducing kernel", {}, "canonical, 10 random pairs"}, [&](Criterion& c) { c.reports = base.kernel; });

  timed({5, "eigenrelation", {}, "20 labels per family, auto M"}, [&](Criterion& c) {
    for (const Case& k : kAllFamilies) {
      const double cap = k.family == Family::gilmore_perelomov ? 0.95 : 3.0;
      std::vector<MatrixVariable> labels;
      for (int i = 0; i < 20; ++i) labels.push_back(random_label(rng, cap));
      const auto fam = vcs::family_spec(k.family, k.kappa);
      c.reports.push_back(guarded("eigenrelation", k, [&] { return check_eigenrelation(fam, labels, 0, 1e-8); }));
    }
  });

  timed({6, "BCH / displacement", {}, "10 labels r<=1.5, M=48"}, [&](Criterion& c) {
    std::vector<Quaternion> qs;
    for (int i = 0; i < 10; ++i) qs.push_back(random_quaternion(rng, uniform(rng, 0.0, 1.5)));
    const Case k{Family::canonical, 1.0};
    c.reports.push_back(guarded("displacement", k, [&] { return check_displacement(qs, 48, 1e-8); }));
    c.reports.push_back(guarded("bch", k, [&] { return check_bch(qs, 48, 1e-8); }));
  });

  timed({7, "SU(1,1) exponential", {}, "G-P, 10 labels |w|<=1, M=96"}, [&](Criterion& c) {
    std::vector<Quaternion> ws;
    for (int i = 0; i < 10; ++i) ws.push_back(random_quaternion(rng, uniform(rng, 0.0, 1.0)));
    for (double kappa : {1.0, 1.5, 2.0}) {
      const Case k{Family::gilmore_perelomov, kappa};
      c.reports.push_back(guarded("su11_exponential", k, [&] { return check_su11_exponential(kappa, ws, 96, 1e-7); }));
    }
  });

  timed({8, "uncertainty", {}, "|q,+-> for 10 q r<=2; 50 random states"}, [&](Criterion& c) {
    const int M = kM;
    const auto ladder = fock::build_ladder(vcs::family_spec(Family::canonical).xs(), M);
    const auto qp = fock::quadrature_pair(ladder.lower, ladder.raise);
    const auto Q = fock::tensorize(qp.q, 2);
    const auto P = fock::tensorize(qp.p, 2);
    std::vector<StateVector> minimal;
    for (int i = 0; i < 10; ++i) {
      auto pair = vcs::minimal_uncertainty_pair(random_quaternion(rng, uniform(rng, 0.0, 2.0)), M);
      minimal.push_back(std::move(pair.plus));
      minimal.push_back(std::move(pair.minus));
    }
    std::vector<StateVector> generic;
    for (int i = 0; i < 50; ++i) generic.push_back(random_state(rng, {2, M}, M - 2));
    const Case k{Family::canonical, 1.0};
    c.reports.push_back(
        guarded("uncertainty_minimal", k, [&] { return check_uncertainty(minimal, Q, P, UncertaintyMode::minimal, 1e-8); }));
    c.reports.push_back(guarded("uncertainty_bound", k, [&] {
      return check_uncertainty(generic, Q, P, UncertaintyMode::lower_bound, 1e-10);
    }));
  });

  timed({9, "algebra", {}, "oscillator; su11 and INT for k in {1, 3/2, 2}, M=64"}, [&](Criterion& c) {
    c.reports.push_back(check_algebra(AlgebraRep::oscillator, 0.0, kM, 1e-12));
    for (double kappa : {1.0, 1.5, 2.0}) {
      c.reports.push_back(check_algebra(AlgebraRep::su11, kappa, kM, 1e-12));
      c.reports.push_back(check_algebra(AlgebraRep::interpolating, kappa, kM, 1e-12));
    }
  });

  timed({10, "isometry", {}, "10 random states per family; holomorphic image"}, [&](Criterion& c) {
    c.reports = base.isometry;
    std::vector<StateVector> psis;
    for (int i = 0; i < 10; ++i) psis.push_back(random_state(rng, {2, kM}, kMCheck));
    std::vector<Quaternion> qs;
    for (int i = 0; i < 10; ++i) qs.push_back(random_quaternion(rng, uniform(rng, 0.0, 2.0)));
    c.reports.push_back(guarded("holomorphic_image", {Family::canonical, 1.0},
                                [&] { return check_holomorphic_image(psis, qs, 1e-10); }));
  });

  timed({11, "grid convergence", {}, "radial, zeta and sphere grids doubled"}, [&](Criterion& c) {
    const QuadratureRun doubled = run_quadrature(grid.doubled());
    for (auto [a, b] : {std::pair{&base.resolution, &doubled.resolution}, std::pair{&base.kernel, &doubled.kernel},
                        std::pair{&base.isometry, &doubled.isometry}}) {
      const auto conv = check_grid_convergence(*a, *b);
      c.reports.insert(c.reports.end(), conv.begin(), conv.end());
    }
  });

  int failures = 0;
  for (const auto& c : results) failures += c.pass() ? 0 : 1;
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  std::printf("%zu criteria, %d failed, %.1fs\n", results.size(), failures, total);
  return failures == 0 ? 0 : 1;
}
