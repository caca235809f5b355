#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qgraph/casimir.hpp"
#include "qgraph/error.hpp"
#include "qgraph/oracle.hpp"

using namespace qgraph;
using namespace qgraph::testing;

TEST_SUITE("casimir") {

TEST_CASE("Dirichlet interval: E = -pi/(24 L), F = -pi/(24 L^2)") {
  for (double len : {0.5, 1.0, 2.0}) {
    CAPTURE(len);
    const GraphDocument doc = interval(len, PotentialSpec::zero(), dirichlet(1), dirichlet(2));
    const EnergyResult e = vacuum_energy(doc.graph, doc.matching, 1.0);
    CHECK(e.fp_half == doctest::Approx(-pi / (24.0 * len)).epsilon(1e-9));
    CHECK_FALSE(e.ambiguous);
    CHECK(e.finite_energy_at_mu == e.fp_half);
    const ForceResult f = casimir_force(doc.graph, doc.matching, 0);
    CHECK(f.force == doctest::Approx(-pi / (24.0 * len * len)).epsilon(1e-8));
    CHECK(f.interaction_part == doctest::Approx(0.0));
  }
}

TEST_CASE("disconnected intervals: energies add") {
  GraphDocument doc;
  doc.graph = MetricGraph(4, {make_bond(1, 1, 2, 1.0), make_bond(2, 3, 4, 2.5)});
  doc.matching = build_vertex_conditions(doc.graph, {dirichlet(1), dirichlet(2), dirichlet(3), dirichlet(4)});
  const EnergyResult e = vacuum_energy(doc.graph, doc.matching, 1.0);
  CHECK(e.fp_half == doctest::Approx(-pi / 24.0 * (1.0 + 1.0 / 2.5)).epsilon(1e-9));
  CHECK(casimir_force(doc.graph, doc.matching, 1).force ==
        doctest::Approx(-pi / (24.0 * 2.5 * 2.5)).epsilon(1e-8));
}

TEST_CASE("Neumann star: energy from the union of interval spectra") {
  // Three equal Dirichlet-leaved bonds with a Kirchhoff centre: the spectrum is
  // {j pi / L} twice and {(j + 1/2) pi / L} once, so E = 2(-pi/(24L)) + pi/(48L).
  const GraphDocument doc = load("star_delta0.json");
  const EnergyResult e = vacuum_energy(doc.graph, doc.matching, 1.0);
  CHECK(e.fp_half == doctest::Approx(-pi / 16.0).epsilon(1e-9));
  CHECK_FALSE(e.ambiguous);
  // By symmetry dE/dL_b = (1/3) dE/dL at common length L.
  for (int b = 0; b < 3; ++b) {
    const ForceResult f = casimir_force(doc.graph, doc.matching, b);
    CHECK(f.force == doctest::Approx(-pi / 48.0).epsilon(1e-8));
  }
}

TEST_CASE("force decomposition is exact") {
  const GraphDocument doc = load("chain_bump.json");
  for (int b = 0; b < 3; ++b) {
    const ForceResult f = casimir_force(doc.graph, doc.matching, b);
    CHECK(f.force == f.dirichlet_part + f.interaction_part);
    CHECK(f.bond == b);
  }
}

TEST_CASE("force agrees with a finite difference of the energy") {
  for (const char* file : {"star_delta1.json", "chain_bump.json", "interval_bump.json"}) {
    const GraphDocument doc = load(file);
    for (int b = 0; b < doc.graph.bond_count(); ++b) {
      CAPTURE(file);
      CAPTURE(b);
      const double force = casimir_force(doc.graph, doc.matching, b).force;
      const double fd = energy_finite_difference(doc.graph, doc.matching, b, 1e-3);
      CHECK(fd == doctest::Approx(force).epsilon(1e-5));
    }
  }
}

TEST_CASE("bump interval: residue d/(2 pi) makes the energy scale dependent") {
  const GraphDocument doc = load("interval_bump.json");
  const double d = potential_integral(doc.graph.bond(0).potential, doc.graph.bond(0).length);
  const EnergyResult e1 = vacuum_energy(doc.graph, doc.matching, 1.0);
  const EnergyResult e2 = vacuum_energy(doc.graph, doc.matching, 2.0);
  CHECK(e1.ambiguous);
  CHECK(e1.res_half == doctest::Approx(d / (4.0 * pi)).epsilon(1e-9));
  CHECK(e2.fp_half == e1.fp_half);
  CHECK(e2.finite_energy_at_mu - e1.finite_energy_at_mu ==
        doctest::Approx(std::log(4.0) * e1.res_half).epsilon(1e-12));
}

TEST_CASE("compact bumps keep the force independent of mu") {
  for (double center : {0.3, 0.5, 0.7}) {
    CAPTURE(center);
    const GraphDocument doc =
        interval(1.0, PotentialSpec::bump(center, 0.2, 2.0), delta(1, 1.0), dirichlet(2));
    CHECK(std::abs(mu_sensitivity(doc.graph, doc.matching, 0)) < 1e-8);
  }
  const GraphDocument free = load("star_delta1.json");
  CHECK(mu_sensitivity(free.graph, free.matching, 0) == 0.0);
}

TEST_CASE("force on a bond whose potential reaches an endpoint is refused") {
  const GraphDocument con = interval(1.0, PotentialSpec::constant(1.0), dirichlet(1), dirichlet(2));
  CHECK_THROWS_AS(casimir_force(con.graph, con.matching, 0), UnsupportedError);
  const GraphDocument edge = interval(1.0, PotentialSpec::bump(0.1, 0.2, 1.0), dirichlet(1), dirichlet(2));
  CHECK_THROWS_AS(casimir_force(edge.graph, edge.matching, 0), UnsupportedError);
  // Energies are still available and flagged.
  CHECK(vacuum_energy(con.graph, con.matching, 1.0).ambiguous);
}

TEST_CASE("bad bond index") {
  const GraphDocument doc = load("interval_dirichlet.json");
  CHECK_THROWS_AS(casimir_force(doc.graph, doc.matching, 3), ValidationError);
}

}  // TEST_SUITE
