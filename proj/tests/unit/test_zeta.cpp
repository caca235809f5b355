#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qgraph/error.hpp"
#include "qgraph/oracle.hpp"
#include "qgraph/zeta.hpp"

using namespace qgraph;
using namespace qgraph::testing;

namespace {

constexpr double euler_gamma = 0.57721566490153286061;

Bond free_bond(double length) { return make_bond(1, 1, 2, length); }

// Finite part at s = -1/2 of the Dirichlet zeta of [0, L] with V = c, from
// sum_k binom(-s, k) c^k (L/pi)^{2s+2k} zeta_R(2s+2k); only k = 1 is singular.
double constant_potential_fp(double c, double length) {
  const double r = length / pi;
  double sum = -pi / (12.0 * length) + 0.5 * c * r * (euler_gamma + std::log(r) - 1.0);
  double binom = -0.125;  // binom(1/2, 2)
  for (int k = 2; k < 60; ++k) {
    sum += binom * std::pow(c, k) * std::pow(r, 2 * k - 1) * riemann_zeta(2.0 * k - 1.0);
    binom *= (0.5 - k) / (k + 1.0);
  }
  return sum;
}

}  // namespace

TEST_SUITE("zeta") {

TEST_CASE("Dirichlet interval: zeta(s) = (L/pi)^{2s} zeta_R(2s)") {
  const ZetaEvaluation z = zeta_dir_bond(free_bond(1.0), 0.75, 0.0);
  CHECK(z.value.real() == doctest::Approx(riemann_zeta(1.5) / std::pow(pi, 1.5)).epsilon(1e-10));
  CHECK(z.value.real() == doctest::Approx(0.46914897078115537).epsilon(1e-8));
  CHECK(z.value.imag() == 0.0);
  const ZetaEvaluation z2 = zeta_dir_bond(free_bond(2.0), 0.75, 0.0);
  CHECK(z2.value.real() == doctest::Approx(1.32695367450417765).epsilon(1e-8));
  for (double s : {0.3, 0.6, 0.9}) {
    CAPTURE(s);
    CHECK(zeta_dir_bond(free_bond(1.3), s, 0.0).value.real() ==
          doctest::Approx(dirichlet_interval_zeta(1.3, s, 0.0).real()).epsilon(1e-9));
  }
}

TEST_CASE("Dirichlet interval with a spectral shift") {
  for (double gamma : {0.5, 1.0, 4.0}) {
    for (double s : {0.4, 0.75}) {
      CAPTURE(gamma);
      CAPTURE(s);
      CHECK(zeta_dir_bond(free_bond(1.0), s, gamma).value.real() ==
            doctest::Approx(dirichlet_interval_zeta(1.0, s, gamma).real()).epsilon(1e-9));
    }
  }
}

TEST_CASE("Dirichlet interval at complex s") {
  for (cplx s : {cplx(0.75, 0.1), cplx(0.75, 1.0), cplx(0.3, 0.5), cplx(0.95, 2.0)}) {
    CAPTURE(s);
    const cplx ref = dirichlet_interval_zeta(1.0, s, 0.0);
    CHECK(std::abs(zeta_dir_bond(free_bond(1.0), s, 0.0).value - ref) < 1e-8);
  }
}

TEST_CASE("integration by parts leaves the value unchanged") {
  // (sin pi s / pi) int_0^inf t^{-2s} d/dt log(sinh(tL)/t) dt, trapezoidal in log t.
  const double s = 0.75, len = 1.0, h = 0.01;
  double sum = 0.0;
  for (double x = -120.0; x <= 120.0; x += h) {
    const double t = std::exp(x);
    const double dlog = t < 1e-4 ? len * len * t / 3.0 : len / std::tanh(t * len) - 1.0 / t;
    sum += std::pow(t, 1.0 - 2.0 * s) * dlog;
  }
  const double unparted = std::sin(pi * s) / pi * sum * h;
  CHECK(zeta_dir_bond(free_bond(len), s, 0.0).value.real() == doctest::Approx(unparted).epsilon(1e-9));
}

TEST_CASE("strip of validity is enforced") {
  CHECK_THROWS_AS(zeta_dir_bond(free_bond(1.0), 1.2, 0.0), UnsupportedError);
  CHECK_THROWS_AS(zeta_dir_bond(free_bond(1.0), -1.2, 0.0), UnsupportedError);
  const GraphDocument doc = load("star_delta1.json");
  CHECK_THROWS_AS(zeta_im(doc.graph, doc.matching, 1.0, 0.0), UnsupportedError);
  CHECK_THROWS_AS(zeta_im(doc.graph, doc.matching, -1.1, 0.0), UnsupportedError);
  CHECK_NOTHROW(zeta_im(doc.graph, doc.matching, -0.9, 0.0));
}

TEST_CASE("Dirichlet matching has no interaction part") {
  const GraphDocument doc = load("interval_dirichlet.json");
  const ZetaEvaluation z = zeta_im(doc.graph, doc.matching, 0.75, 0.0);
  CHECK(std::abs(z.value) < 1e-14);
  const MinusHalfData mh = minus_half_data(doc.graph, doc.matching);
  CHECK(mh.fp_im == doctest::Approx(0.0));
  CHECK(mh.res_im == doctest::Approx(0.0));
}

TEST_CASE("real s gives a real value") {
  const GraphDocument doc = load("star_delta1.json");
  for (double s : {-0.5 + 1e-3, 0.3, 0.75}) {
    const ZetaEvaluation z = zeta_total(doc.graph, doc.matching, s, 0.5);
    CHECK(std::abs(z.value.imag()) < 1e-12);
  }
}

TEST_CASE("finite parts of the free Dirichlet interval") {
  for (double len : {0.5, 1.0, 2.0}) {
    const GraphDocument doc = interval(len, PotentialSpec::zero(), dirichlet(1), dirichlet(2));
    const MinusHalfData mh = minus_half_data(doc.graph, doc.matching);
    CHECK(mh.fp_dir[0] == doctest::Approx(-pi / (12.0 * len)).epsilon(1e-9));
    CHECK(mh.res_dir[0] == doctest::Approx(0.0));
    CHECK(mh.fp_total == doctest::Approx(-pi / (12.0 * len)).epsilon(1e-9));
  }
}

TEST_CASE("disconnected Dirichlet intervals add") {
  GraphDocument doc;
  doc.graph = MetricGraph(4, {make_bond(1, 1, 2, 1.0), make_bond(2, 3, 4, 0.7)});
  doc.matching = build_vertex_conditions(doc.graph, {dirichlet(1), dirichlet(2), dirichlet(3), dirichlet(4)});
  const MinusHalfData mh = minus_half_data(doc.graph, doc.matching);
  CHECK(mh.fp_total == doctest::Approx(-pi / 12.0 * (1.0 + 1.0 / 0.7)).epsilon(1e-9));
}

TEST_CASE("constant potential: residue and finite part from the binomial series") {
  for (double c : {0.5, 2.0}) {
    for (double len : {1.0, 1.7}) {
      CAPTURE(c);
      CAPTURE(len);
      const GraphDocument doc = interval(len, PotentialSpec::constant(c), dirichlet(1), dirichlet(2));
      const MinusHalfData mh = minus_half_data(doc.graph, doc.matching);
      CHECK(mh.res_dir[0] == doctest::Approx(c * len / (4.0 * pi)).epsilon(1e-10));
      CHECK(mh.fp_dir[0] == doctest::Approx(constant_potential_fp(c, len)).epsilon(1e-8));
    }
  }
}

TEST_CASE("residues of the interaction part") {
  const GraphDocument star = load("star_delta1.json");
  CHECK(minus_half_data(star.graph, star.matching).res_im == doctest::Approx(1.0 / (6.0 * pi)).epsilon(1e-9));
  const GraphDocument robin = load("robin_interval.json");
  CHECK(minus_half_data(robin.graph, robin.matching).res_im == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-9));
  const GraphDocument neumann_star = load("star_delta0.json");
  CHECK(minus_half_data(neumann_star.graph, neumann_star.matching).res_im == doctest::Approx(0.0));
}

TEST_CASE("gamma derivative equals -s zeta(s + 1, gamma)") {
  const GraphDocument doc = load("star_delta1.json");
  const double s = 0.75, gamma = 1.0, h = 1e-3;
  const double plus = zeta_total(doc.graph, doc.matching, s, gamma + h).value.real();
  const double minus = zeta_total(doc.graph, doc.matching, s, gamma - h).value.real();
  const double derivative = (plus - minus) / (2.0 * h);
  const SpectrumWindow w = scan_spectrum(doc.graph, doc.matching, 300.0);
  const DirectZeta next = zeta_direct(w, s + 1.0, gamma);
  CHECK(derivative == doctest::Approx(-s * next.value.real()).epsilon(1e-6));
}

TEST_CASE("vanishing F(0) is reported") {
  const GraphDocument nn = interval(1.0, PotentialSpec::zero(), neumann(1), neumann(2));
  const AsymptoticData asym = asymptotic_F_coefficients(nn.graph, nn.matching);
  CHECK_THROWS_AS(check_F_at_zero(nn.graph, nn.matching, asym), NumericalError);
  const GraphDocument star = load("star_delta1.json");
  CHECK_NOTHROW(check_F_at_zero(star.graph, star.matching,
                                asymptotic_F_coefficients(star.graph, star.matching)));
}

}  // TEST_SUITE
