#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qgraph/secular.hpp"
#include "qgraph/wkb.hpp"

using namespace qgraph;
using namespace qgraph::testing;

namespace {

// |F(it) t^{N-2B} / c_N - 1 - eta t^-J|
double expansion_residual(const GraphDocument& doc, const AsymptoticData& asym, double t) {
  const SecularValue f = F_imag(doc.graph, doc.matching, t);
  const int two_b = doc.graph.slot_count();
  const cplx scaled = std::exp(cplx(f.log_abs + (asym.n - two_b) * std::log(t), f.phase)) / asym.c_n;
  const cplx eta = asym.j ? asym.eta() * std::pow(t, -*asym.j) : 0.0;
  return std::abs(scaled - 1.0 - eta);
}

}  // namespace

TEST_SUITE("wkb") {

TEST_CASE("leading coefficients at an endpoint touched by the potential") {
  const double x0 = 0.1, w = 0.2, h = 2.0;
  const Bond b = make_bond(1, 1, 2, 1.0, PotentialSpec::bump(x0, w, h));
  const std::vector<double> s = wkb_coefficients(b, BondDirection::forward, 4);
  REQUIRE(s.size() == 6);
  CHECK(s[0] == -1.0);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == doctest::Approx(-0.5 * bump(0.0, x0, w, h)).epsilon(1e-13));
  CHECK(s[3] == doctest::Approx(-0.25 * bump_prime(0.0, x0, w, h)).epsilon(1e-12));
  // The other end lies outside the support.
  for (double v : wkb_coefficients(b, BondDirection::reverse, 4)) CHECK(std::abs(v) <= 1.0);
  const std::vector<double> r = wkb_coefficients(b, BondDirection::reverse, 4);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] == 0.0);
}

TEST_CASE("constant potential gives the expansion of -sqrt(t^2 + c)") {
  // -sqrt(t^2 + c) = -t - c/(2t) + c^2/(8 t^3) - ...
  const double c = 1.7;
  const std::vector<double> s =
      wkb_coefficients(make_bond(1, 1, 2, 1.0, PotentialSpec::constant(c)), BondDirection::forward, 4);
  CHECK(s[2] == doctest::Approx(-c / 2.0));
  CHECK(s[3] == doctest::Approx(0.0));
  CHECK(s[4] == doctest::Approx(c * c / 8.0));
  CHECK(s[5] == doctest::Approx(0.0));
}

TEST_CASE("compactly supported bump has vanishing endpoint coefficients") {
  const Bond b = make_bond(1, 1, 2, 1.0, PotentialSpec::bump(0.5, 0.2, 4.0));
  for (auto dir : {BondDirection::forward, BondDirection::reverse}) {
    const std::vector<double> s = wkb_coefficients(b, dir, 4);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] == 0.0);
  }
}

TEST_CASE("truncation order does not change shared coefficients") {
  const Bond b = make_bond(1, 1, 2, 1.0, PotentialSpec::bump(0.05, 0.2, 3.0));
  const std::vector<double> s2 = wkb_coefficients(b, BondDirection::forward, 2);
  const std::vector<double> s4 = wkb_coefficients(b, BondDirection::forward, 4);
  REQUIRE(s2.size() == 4);
  for (std::size_t i = 0; i < s2.size(); ++i) CHECK(s2[i] == doctest::Approx(s4[i]).epsilon(1e-14));
}

TEST_CASE("Dirichlet interval: N = 2B and no subleading term") {
  const GraphDocument doc = load("interval_dirichlet.json");
  const AsymptoticData a = asymptotic_F_coefficients(doc.graph, doc.matching);
  CHECK(a.n == 2);
  CHECK(std::abs(a.c_n - 1.0) < 1e-12);
  CHECK_FALSE(a.j.has_value());
}

TEST_CASE("delta star: N, c_N and eta from the closed-form secular function") {
  // With Dirichlet leaves, F(it) ~ -(lambda + sum t coth t L_b) ~ -(3t + lambda).
  for (double lambda : {0.0, 1.0, 2.5}) {
    CAPTURE(lambda);
    const GraphDocument doc = star({1.0, 1.0, 1.0}, lambda);
    const AsymptoticData a = asymptotic_F_coefficients(doc.graph, doc.matching);
    CHECK(a.n == 5);
    CHECK(std::abs(a.c_n + 3.0) < 1e-10);
    if (lambda == 0.0) {
      CHECK_FALSE(a.j.has_value());
    } else {
      REQUIRE(a.j.has_value());
      CHECK(*a.j == 1);
      CHECK(a.eta().real() == doctest::Approx(lambda / 3.0).epsilon(1e-10));
    }
  }
  const GraphDocument robin = load("robin_interval.json");
  const AsymptoticData r = asymptotic_F_coefficients(robin.graph, robin.matching);
  CHECK(r.n == 1);
  REQUIRE(r.j.has_value());
  CHECK(*r.j == 1);
  CHECK(r.eta().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("free-graph coefficients are those of det(A - tB)") {
  for (const char* file : {"star_delta1.json", "circle_flux_1.json", "robin_interval.json"}) {
    CAPTURE(file);
    const GraphDocument doc = load(file);
    const AsymptoticData a = asymptotic_F_coefficients(doc.graph, doc.matching);
    const int two_b = doc.graph.slot_count();
    REQUIRE(a.exact);
    for (double t : {0.7, 1.3, 2.0}) {
      cplx poly = 0.0;
      for (int j = 0; j < static_cast<int>(a.coefficients.size()); ++j)
        poly += a.coefficients[j] * std::pow(t, two_b - j);
      const cplx direct = (doc.matching.a - t * doc.matching.b).determinant();
      CHECK(std::abs(poly - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("expansion residual decays like t^-(J+1)") {
  // A constant potential makes the O(t^-2) correction nonzero.
  const GraphDocument doc = star({1.0, 0.8, 1.3}, 1.0,
                                 {PotentialSpec::constant(2.0), PotentialSpec::zero(), PotentialSpec::zero()});
  const AsymptoticData a = asymptotic_F_coefficients(doc.graph, doc.matching);
  REQUIRE(a.j.has_value());
  CHECK(a.fit_discrepancy < 1e-6);
  const double r1 = expansion_residual(doc, a, 100.0);
  const double r2 = expansion_residual(doc, a, 1000.0);
  const double slope = std::log10(r2 / r1);
  CHECK(slope <= -(*a.j + 1) + 0.05);
}

TEST_CASE("d constants and their reflection invariance") {
  const GraphDocument doc = load("chain_bump.json");
  const std::vector<double> d = d_constants(doc.graph);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(3.0 * 0.1206900322437876242).epsilon(1e-12));
  CHECK(d[2] == 0.0);
}

}  // TEST_SUITE
