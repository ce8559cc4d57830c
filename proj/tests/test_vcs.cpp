#include "vcskit/specfun.hpp"
#include "vcskit/states.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>
#include <nlohmann/json.hpp>

#include <numbers>
#include <random>

using namespace vcskit;
using namespace vcskit::vcs;
using matrixdomain::PolarQuaternion;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<FamilySpec> all_families() {
  return {family_spec(Family::canonical),
          family_spec(Family::gilmore_perelomov, 1.0),
          family_spec(Family::gilmore_perelomov, 1.5),
          family_spec(Family::gilmore_perelomov, 2.0),
          family_spec(Family::barut_girardello, 1.0),
          family_spec(Family::barut_girardello, 2.0),
          family_spec(Family::interpolating, 1.0),
          family_spec(Family::interpolating, 1.5)};
}

double cap(const FamilySpec& fam) { return fam.name() == Family::gilmore_perelomov ? 0.95 : 3.0; }

MatrixVariable random_label(std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return MatrixVariable::from_quaternion({r_max * u(rng), pi * u(rng), pi * u(rng), 2 * pi * u(rng)});
}

// ρ(m) from the family definitions, without the library's sequences.
double rho_oracle(const FamilySpec& fam, int m) {
  const double k2 = 2 * fam.kappa();
  switch (fam.name()) {
    case Family::canonical:
      return std::tgamma(m + 1.0);
    case Family::gilmore_perelomov:
      return std::tgamma(m + 1.0) * std::tgamma(k2) / std::tgamma(k2 + m);
    case Family::barut_girardello:
      return std::tgamma(m + 1.0) * std::tgamma(k2 + m);
    case Family::interpolating:
      return std::pow(std::tgamma(k2 + m), 2);
  }
  return 0.0;
}

double lambda_oracle(const FamilySpec& fam, double r) {
  const double k = fam.kappa();
  switch (fam.name()) {
    case Family::canonical:
      return 2 * std::exp(-r * r);
    case Family::gilmore_perelomov:
      return 2 * (2 * k - 1) * std::pow(1 - r * r, 2 * k - 2);
    case Family::barut_girardello:
      return 4 * std::pow(r, 2 * k - 1) * boost::math::cyl_bessel_k(2 * k - 1, 2 * r);
    case Family::interpolating:
      return 4 * std::pow(r, 4 * k - 2) * boost::math::cyl_bessel_k(0.0, 2 * r);
  }
  return 0.0;
}

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("canonical") == Family::canonical);
  CHECK(parse_family("gilmore-perelomov") == Family::gilmore_perelomov);
  CHECK(parse_family("gilmore_perelomov") == Family::gilmore_perelomov);
  CHECK(parse_family("bg") == Family::barut_girardello);
  CHECK(parse_family("int") == Family::interpolating);
  CHECK(to_string(Family::barut_girardello) == "barut_girardello");
  CHECK_THROWS_AS(parse_family("squeezed"), UnknownFamily);
  CHECK_THROWS(family_spec(Family::gilmore_perelomov, 1.25));
}

TEST_CASE("family catalogue values") {
  const FamilySpec c = family_spec(Family::canonical);
  CHECK(c.normalization(0.0) == doctest::Approx(2.0));
  CHECK(c.rho(3) == doctest::Approx(6.0));
  CHECK(c.lambda(1.3) == doctest::Approx(2 * std::exp(-1.69)));
  CHECK(std::isinf(c.radius_bound()));

  const FamilySpec gp = family_spec(Family::gilmore_perelomov, 1.0);
  CHECK(gp.rho(1) == doctest::Approx(0.5));
  CHECK(gp.radius_bound() == 1.0);
  CHECK(gp.lambda(0.7) == doctest::Approx(2.0));
  CHECK_FALSE(gp.in_domain(1.0));
  CHECK_THROWS_AS(gp.normalization(1.0), OutOfDomain);

  const FamilySpec bg = family_spec(Family::barut_girardello, 1.0);
  for (double r : {0.3, 1.0, 2.5}) {
    CHECK(bg.normalization(r) == doctest::Approx(2 * boost::math::cyl_bessel_i(1.0, 2 * r) / r).epsilon(1e-13));
  }
  CHECK(bg.normalization(0.0) == doctest::Approx(2.0));
  CHECK(bg.normalization(1e-9) == doctest::Approx(2.0));

  const FamilySpec in = family_spec(Family::interpolating, 1.5);
  CHECK(in.normalization(1.2, 1) ==
        doctest::Approx(specfun::hyp1f2(1, 3, 3, 1.44) / std::pow(std::tgamma(3.0), 2)).epsilon(1e-14));
}

TEST_CASE("ρ sequences, densities and normalizations agree with independent forms") {
  for (const FamilySpec& fam : all_families()) {
    CAPTURE(to_string(fam.name()));
    CAPTURE(fam.kappa());
    for (int m = 0; m <= 20; ++m) {
      CHECK(fam.rho(m) == doctest::Approx(rho_oracle(fam, m)).epsilon(1e-12));
    }
    for (double r : {0.05, 0.4, 0.9}) {
      CHECK(fam.lambda(r) == doctest::Approx(lambda_oracle(fam, r)).epsilon(1e-12));
      CHECK(fam.weight(r) == doctest::Approx(fam.normalization(r) * fam.lambda(r) / (2 * pi)).epsilon(1e-13));
    }
    for (double r : {0.0, 0.2, 0.8, cap(fam)}) {
      CHECK(fam.normalization(r) == doctest::Approx(fam.normalization_series(r)).epsilon(1e-12));
    }
  }
}

TEST_CASE("moment problem solved by λ") {
  // Independent double-exponential quadrature.
  boost::math::quadrature::exp_sinh<double> half_line;
  boost::math::quadrature::tanh_sinh<double> interval;
  for (const FamilySpec& fam : all_families()) {
    CAPTURE(to_string(fam.name()));
    CAPTURE(fam.kappa());
    const int m_max = fam.name() == Family::interpolating ? 10 : 20;
    for (int m = 0; m <= m_max; m += 2) {
      CAPTURE(m);
      auto f = [&](double r) {
        if (r < 1e-8 || r > 60) return 0.0;
        return lambda_oracle(fam, r) * std::pow(r, 2 * m + 1);
      };
      const double value = fam.name() == Family::gilmore_perelomov ? interval.integrate(f, 0.0, 1.0)
                                                                   : half_line.integrate(f);
      CHECK(value == doctest::Approx(rho_oracle(fam, m)).epsilon(1e-9));
    }
  }
  // Printed scalar form for the interpolating family.
  for (double kappa : {1.0, 1.5}) {
    const FamilySpec in = family_spec(Family::interpolating, kappa);
    for (int m = 0; m <= 6; ++m) {
      auto f = [&](double t) { return t > 0 && t < 3600 ? std::pow(t, m) * in.printed_moment_density(t) : 0.0; };
      CHECK(pi * half_line.integrate(f) == doctest::Approx(std::pow(std::tgamma(2 * kappa + m), 2)).epsilon(1e-8));
    }
  }
}

TEST_CASE("tail bound and required truncation") {
  const FamilySpec c = family_spec(Family::canonical);
  const int M = c.required_truncation(3.0, 1e-14);
  double tail = 0.0, total = 0.0;
  for (int m = 0; m < 400; ++m) {
    const double t = std::exp(2 * m * std::log(3.0) - std::lgamma(m + 1.0));
    total += t;
    if (m >= M) tail += t;
  }
  CHECK(tail <= 1e-14 * total);
  CHECK(std::exp(c.log_tail_bound(3.0, M)) >= tail);
  CHECK(c.required_truncation(3.0, 1e-14) > c.required_truncation(1.0, 1e-14));
  const FamilySpec gp = family_spec(Family::gilmore_perelomov, 1.5);
  CHECK(gp.required_truncation(0.9) > 150);
  CHECK(gp.required_truncation(0.9) <= 256);
}

TEST_CASE("normalization of random labels") {
  std::mt19937_64 rng(0xC0FFEE);
  for (const FamilySpec& fam : all_families()) {
    CAPTURE(to_string(fam.name()));
    for (int i = 0; i < 20; ++i) {
      const MatrixVariable z = random_label(rng, cap(fam));
      const int M = fam.required_truncation(z.radius(), 1e-16);
      const double total = build_state(fam, z, 0, M).squared_norm() + build_state(fam, z, 1, M).squared_norm();
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("canonical states") {
  const FamilySpec c = family_spec(Family::canonical);
  for (int j = 0; j < 2; ++j) {
    const StateVector s = build_state(c, MatrixVariable::from_quaternion({0.0, 0.3, 0.2, 0.1}), j, 16);
    CHECK(std::abs(s(j, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(s.squared_norm() == doctest::Approx(0.5));
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    const MatrixVariable z = random_label(rng, 3.0);
    CHECK(build_state(c, z, 1, 80).squared_norm() == doctest::Approx(0.5).epsilon(1e-13));
  }
  // |c_{1,m}|² = e^{-1}/(2 m!) at r = 1.
  const StateVector s = build_state(c, MatrixVariable::from_quaternion({1.0, 0.7, 1.1, 2.0}), 0, 40);
  for (int m = 0; m < 10; ++m) {
    const double col = std::norm(s(0, m)) + std::norm(s(1, m));
    CHECK(col == doctest::Approx(std::exp(-1.0) / (2 * std::tgamma(m + 1.0))).epsilon(1e-13));
  }
}

TEST_CASE("tail budget") {
  const FamilySpec c = family_spec(Family::canonical);
  const MatrixVariable z = MatrixVariable::from_quaternion({2.0, 0.5, 0.5, 0.5});
  try {
    build_state(c, z, 0, 2);
    FAIL("expected a tail-budget error");
  } catch (const TailBudgetError& e) {
    CHECK(e.given_M() == 2);
    CHECK(e.required_M() == c.required_truncation(2.0));
    CHECK(e.radius() == doctest::Approx(2.0));
  }
  CHECK_NOTHROW(state_coefficients(c, z, 0, 2));
  CHECK_THROWS_AS(build_state(c, z, 2, 64), std::out_of_range);
}

TEST_CASE("ladder actions on coherent states") {
  std::mt19937_64 rng(9);
  for (const FamilySpec& fam : all_families()) {
    CAPTURE(to_string(fam.name()));
    const MatrixVariable z = random_label(rng, 0.8 * cap(fam));
    const int M = fam.required_truncation(z.radius(), 1e-24);
    const fock::Ladder l = fock::build_ladder(fam.xs(), M);
    const MatrixXc A = fock::tensorize(l.lower, 2).matrix;
    const MatrixXc Ad = fock::tensorize(l.raise, 2).matrix;
    const MatrixXc N = fock::tensorize(l.number, 2).matrix;
    const MatrixXc ZI = fock::kron(z.matrix(), fock::OperatorMatrix{MatrixXc::Identity(M, M), 1, M, M - 1}).matrix;
    const double lnN = log_normalization(fam, z);
    for (int j = 0; j < 2; ++j) {
      const StateVector s = build_state(fam, z, j, M);
      CHECK((A * s.coeffs - ZI * s.coeffs).norm() < 1e-10);
      const VectorXc up = Ad * s.coeffs;
      const VectorXc num = N * s.coeffs;
      for (int m = 1; m < M - 1; ++m) {
        const MatrixXc p = matrixdomain::variable_power(z, m - 1);
        for (int jj = 0; jj < 2; ++jj) {
          // √x_m N^{-1/2} (Z^{m-1})_{jj,j} / √ρ(m-1)
          const cplx expect = std::sqrt(fam.x(m)) * std::exp(-0.5 * lnN - 0.5 * fam.log_rho(m - 1)) * p(jj, j);
          CHECK(std::abs(up(s.space.index(jj, m)) - expect) < 1e-12);
          CHECK(std::abs(num(s.space.index(jj, m)) - fam.x(m) * s(jj, m)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("kernel") {
  std::mt19937_64 rng(21);
  const FamilySpec c = family_spec(Family::canonical);
  for (int i = 0; i < 10; ++i) {
    const MatrixVariable z = random_label(rng, 2.0);
    const MatrixVariable zp = random_label(rng, 2.0);
    const MatrixXc k = kernel(c, z, zp, 64);
    CHECK((k - kernel_series(c, z, zp, 64)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((kernel(c, zp, z, 64) - k.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(kernel(c, z, z, 64).trace() - 1.0) < 1e-13);
  }
  const MatrixVariable z = random_label(rng, 1.0);
  const MatrixVariable zero = MatrixVariable::from_quaternion({});
  const MatrixXc k0 = kernel(c, z, zero, 40);
  const double scale = std::exp(-0.5 * log_normalization(c, z) - 0.5 * std::log(2.0));
  CHECK((k0 - scale * MatrixXc::Identity(2, 2)).norm() < 1e-14);
  const MatrixXc kz = kernel(c, zero, zero, 40);
  CHECK((kz - 0.5 * MatrixXc::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("superposition norm matches the kernel form") {
  std::mt19937_64 rng(4);
  const FamilySpec gp = family_spec(Family::gilmore_perelomov, 1.5);
  const MatrixVariable z = random_label(rng, 0.8);
  const int M = gp.required_truncation(z.radius());
  const std::vector<StateVector> basis{build_state(gp, z, 0, M), build_state(gp, z, 1, M)};
  const std::vector<cplx> c{{0.6, 0.0}, {0.0, 0.8}};
  const StateVector s = superpose(basis, c);
  const MatrixXc k = kernel(gp, z, z, M);
  cplx expected = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) expected += std::conj(c[j]) * c[l] * k(j, l);
  CHECK(std::abs(s.squared_norm() - expected) < 1e-14);
}

TEST_CASE("minimal uncertainty pair") {
  const auto p0 = minimal_uncertainty_pair(Quaternion(0, 0, 0, 0), 16);
  CHECK(p0.plus.squared_norm() == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(p0.plus(0, 0)) + std::abs(p0.plus(1, 0)) - 1.0) < 1e-15);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    const Quaternion q = matrixdomain::quaternion_from_polar({2.0 * (i + 1) / 10.0, 1.0 + 0.1 * i, 0.3 * i, 0.5 * i});
    const auto pair = minimal_uncertainty_pair(q, 64);
    CHECK(pair.plus.squared_norm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(pair.minus.squared_norm() == doctest::Approx(1.0).epsilon(1e-13));
    const fock::OperatorMatrix id{MatrixXc::Identity(64, 64), 1, 64, 63};
    const MatrixXc QI = fock::kron(q.matrix(), id).matrix;
    CHECK((QI * pair.plus.coeffs - pair.diag.z * pair.plus.coeffs).norm() < 1e-13);
    CHECK((QI * pair.minus.coeffs - std::conj(pair.diag.z) * pair.minus.coeffs).norm() < 1e-13);
  }
}

TEST_CASE("disentangling map") {
  CHECK(disentangle_map(Quaternion(0, 0, 0, 0)).radius() == 0.0);
  const Quaternion q = disentangle_map(Quaternion(1, 0, 0, 0));
  CHECK(q.radius() == doctest::Approx(0.7615941560).epsilon(1e-10));
  CHECK(q.components()[0] == doctest::Approx(std::tanh(1.0)));
  for (double r : {0.01, 1.0, 5.0, 15.0}) {
    const Quaternion w = matrixdomain::quaternion_from_polar({r, 0.4, 1.0, 2.0});
    const Quaternion d = disentangle_map(w);
    CHECK(d.radius() < 1.0);
    CHECK(d.radius() == doctest::Approx(std::tanh(r)));
  }
}

TEST_CASE("Möbius action") {
  const double kappa = 1.5;
  const std::vector<cplx> f{{1.0, 0.0}, {0.3, -0.2}, {0.0, 0.5}, {-0.1, 0.1}};
  const cplx z{0.2, -0.35};
  CHECK(std::abs(mobius_action(kappa, Matrix2c::Identity(), f, z) - evaluate_monomial_expansion(kappa, f, z)) < 1e-15);

  const Matrix2c g1 = su11_boost({0.3, 0.1});
  Matrix2c rot;
  rot << std::polar(1.0, 0.4), 0.0, 0.0, std::polar(1.0, -0.4);
  const Matrix2c g2 = rot * su11_boost({-0.2, 0.5});
  CHECK(std::abs(g1.determinant() - 1.0) < 1e-14);
  // U(g1)(U(g2) f) = U(g1 g2) f, composing by hand at the point level.
  for (const cplx pt : {cplx(0.0, 0.0), cplx(0.5, 0.1), cplx(-0.3, -0.6)}) {
    const cplx a1 = g1(0, 0), b1 = g1(0, 1);
    const cplx w = (std::conj(a1) * pt - b1) / (a1 - std::conj(b1) * pt);
    const cplx lhs = std::pow(a1 - std::conj(b1) * pt, -2 * kappa) * mobius_action(kappa, g2, f, w);
    CHECK(std::abs(lhs - mobius_action(kappa, g1 * g2, f, pt)) < 1e-12);
  }
  CHECK_THROWS(mobius_action(kappa, Matrix2c::Identity(), f, {1.0, 0.0}));
  Matrix2c bad;
  bad << 2.0, 0.0, 0.0, 2.0;
  CHECK_THROWS(mobius_action(kappa, bad, f, z));
  CHECK_THROWS(su11_boost({1.0, 0.0}));
}

TEST_CASE("coherent image") {
  const int M = 40;
  const Quaternion q = matrixdomain::quaternion_from_polar({1.2, 0.9, 0.6, 2.4});
  const double r2 = 1.44;

  const StateVector vac = StateVector::basis({2, M}, 0, 0);
  const CoherentImage img = coherent_image(vac, q);
  CHECK(std::abs(img.direct(0) - std::exp(-r2 / 2) / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(img.direct(1)) < 1e-15);
  CHECK((img.direct - img.projector_form).norm() < 1e-14);

  const auto d = matrixdomain::diagonalize_quaternion(q);
  StateVector psi({2, M});
  psi(0, 1) = d.u(0, 0);
  psi(1, 1) = d.u(1, 0);
  const CoherentImage one = coherent_image(psi, q);
  const Vector2c expect = std::exp(-r2 / 2) / std::sqrt(2.0) * std::conj(d.z) * d.u.col(0);
  CHECK((one.direct - expect).norm() < 1e-14);
  CHECK((one.projector_form - expect).norm() < 1e-14);

  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  StateVector rnd({2, M});
  for (int j = 0; j < 2; ++j)
    for (int m = 0; m < 12; ++m) rnd(j, m) = {g(rng), g(rng)};
  const CoherentImage ri = coherent_image(rnd, q);
  CHECK((ri.direct - ri.projector_form).norm() < 1e-12);
}

TEST_CASE("state dump") {
  const FamilySpec c = family_spec(Family::canonical);
  const StateVector s = build_state(c, MatrixVariable::from_quaternion({}), 1, 8);
  const nlohmann::json j = state_to_json(c, nlohmann::json::object(), 1, s);
  REQUIRE(j["coefficients"].size() == 1);
  CHECK(j["coefficients"][0][0] == 2);
  CHECK(j["coefficients"][0][1] == 0);
  CHECK(j["coefficients"][0][2].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(j["family"] == "canonical");
  CHECK(j["j"] == 2);
}
