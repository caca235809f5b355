// qgraph: command-line front end. Units are natural (hbar = 2m = 1), so
// E = k^2 and lengths are in the units of the graph file.

#include <charconv>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qgraph/casimir.hpp"
#include "qgraph/error.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/oracle.hpp"
#include "qgraph/zeta.hpp"
#include "report.hpp"

namespace {

using namespace qgraph;
using cli::format_double;
using cli::Report;

enum Exit { ok = 0, invalid = 2, numerical = 3, unsupported = 4 };

struct Config {
  std::string graph_path;
  std::string format = "csv";
  int threads = 1;
  double tol = 0.0;  // 0: module defaults
  double k_max = 0.0;
  std::string s = "0.75";
  double gamma = 0.0;
  double mu = 1.0;
  int bond = 1;
  double step = 1e-4;
};

cplx parse_s(const std::string& text) {
  auto parse = [&](std::string_view part) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || p != part.data() + part.size())
      throw ValidationError("--s expects re or re,im, got \"" + text + "\"");
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse(text), 0.0};
  return {parse(std::string_view(text).substr(0, comma)),
          parse(std::string_view(text).substr(comma + 1))};
}

void emit(const Report& r, const Config& cfg) {
  if (cfg.format == "json") r.write_json(std::cout);
  else r.write_csv(std::cout);
}

int bond_index(const MetricGraph& g, int id) {
  for (int i = 0; i < g.bond_count(); ++i)
    if (g.bond(i).id == id) return i;
  throw ValidationError("no bond with id " + std::to_string(id));
}

ZetaOptions zeta_options(const Config& cfg) {
  ZetaOptions z;
  if (cfg.tol > 0.0) z.rel_tol = cfg.tol;
  return z;
}

int run_validate(const GraphDocument& doc, const Config& cfg) {
  const ValidationReport rep = validate_matching(doc.matching, &doc.graph);
  Report r({"check", "result", "detail"}, {true, true, true});
  for (const auto& c : rep.checks)
    r.row({c.name, c.skipped ? "skipped" : (c.passed ? "pass" : "fail"), c.detail});
  emit(r, cfg);
  return rep.passed() ? ok : invalid;
}

int run_spectrum(const GraphDocument& doc, const Config& cfg) {
  if (!(cfg.k_max > 0.0)) throw ValidationError("spectrum needs --k-max > 0");
  ScanOptions so;
  so.threads = cfg.threads;
  if (cfg.tol > 0.0) so.root_tol = cfg.tol;
  const SpectrumWindow w = scan_spectrum(doc.graph, doc.matching, cfg.k_max, so);
  Report r({"index", "k", "E", "multiplicity"});
  int index = 1;
  for (const auto& root : w.roots) {
    r.row({std::to_string(index), format_double(root.k), format_double(root.k * root.k),
           std::to_string(root.multiplicity)});
    index += root.multiplicity;
  }
  emit(r, cfg);
  return ok;
}

int run_zeta(const GraphDocument& doc, const Config& cfg) {
  const cplx s = parse_s(cfg.s);
  const ZetaEvaluation z = zeta_total(doc.graph, doc.matching, s, cfg.gamma, zeta_options(cfg));
  Report r({"re_s", "im_s", "gamma", "re_value", "im_value", "error_estimate"});
  r.row({format_double(s.real()), format_double(s.imag()), format_double(cfg.gamma),
         format_double(z.value.real()), format_double(z.value.imag()),
         format_double(z.quadrature_error)});
  emit(r, cfg);
  return ok;
}

int run_energy(const GraphDocument& doc, const Config& cfg) {
  CasimirOptions co;
  co.zeta = zeta_options(cfg);
  const EnergyResult e = vacuum_energy(doc.graph, doc.matching, cfg.mu, co);
  Report r({"fp_half", "res_half", "mu", "finite_energy_at_mu", "ambiguous"});
  r.row({format_double(e.fp_half), format_double(e.res_half), format_double(e.mu),
         format_double(e.finite_energy_at_mu), e.ambiguous ? "true" : "false"});
  emit(r, cfg);
  if (e.ambiguous) {
    std::cerr << "warning: res_half = " << format_double(e.res_half)
              << " is nonzero, so the energy carries the (1/eps + ln mu^2) res_half term and "
                 "finite_energy_at_mu depends on mu\n";
  }
  return ok;
}

int run_force(const GraphDocument& doc, const Config& cfg) {
  CasimirOptions co;
  co.relative_step = cfg.step;
  co.zeta = zeta_options(cfg);
  const int index = bond_index(doc.graph, cfg.bond);
  const ForceResult f = casimir_force(doc.graph, doc.matching, index, co);
  Report r({"bond", "force", "dirichlet_part", "interaction_part", "error_estimate"});
  r.row({std::to_string(cfg.bond), format_double(f.force), format_double(f.dirichlet_part),
         format_double(f.interaction_part), format_double(f.error_estimate)});
  emit(r, cfg);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vacuum energy, Casimir forces and spectra of quantum graphs (units hbar = 2m = 1)"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph_path, "graph file (JSON)")->required();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads")
        ->check(CLI::Range(1, 1024))
        ->capture_default_str();
    sub->add_option("--tol", cfg.tol, "relative tolerance override")->check(CLI::PositiveNumber);
  };
  auto* validate = app.add_subcommand("validate", "check rank, Hermiticity and locality");
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues with k <= k_max");
  auto* zeta = app.add_subcommand("zeta", "spectral zeta function zeta(s, gamma)");
  auto* energy = app.add_subcommand("energy", "vacuum energy at s = -1/2");
  auto* force = app.add_subcommand("force", "Casimir force on one bond");
  for (auto* sub : {validate, spectrum, zeta, energy, force}) common(sub);
  spectrum->add_option("--k-max", cfg.k_max, "upper end of the k window")->required();
  zeta->add_option("--s", cfg.s, "re[,im]")->capture_default_str();
  zeta->add_option("--gamma", cfg.gamma, "spectral shift, >= 0")->capture_default_str();
  energy->add_option("--mu", cfg.mu, "renormalisation scale")->capture_default_str();
  force->add_option("--bond", cfg.bond, "bond id")->capture_default_str();
  force->add_option("--step", cfg.step, "relative length step h/L")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return invalid;
  }

  try {
    const GraphDocument doc = load_graph_file(cfg.graph_path);
    if (!validate->parsed()) {
      const ValidationReport rep = validate_matching(doc.matching, &doc.graph);
      if (!rep.passed()) {
        for (const auto& c : rep.checks)
          if (!c.passed && !c.skipped) std::cerr << "error: " << c.name << ": " << c.detail << '\n';
        return invalid;
      }
    }
    if (validate->parsed()) return run_validate(doc, cfg);
    if (spectrum->parsed()) return run_spectrum(doc, cfg);
    if (zeta->parsed()) return run_zeta(doc, cfg);
    if (energy->parsed()) return run_energy(doc, cfg);
    return run_force(doc, cfg);
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return unsupported;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return invalid;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return invalid;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical;
  }
}
