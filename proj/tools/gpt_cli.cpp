#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gpt/interference.hpp"
#include "gpt/io.hpp"
#include "gpt/phase.hpp"
#include "gpt/qubit.hpp"

namespace {

using gpt::Group;
using gpt::Measurement;
using gpt::Theory;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBudget = 4;

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

Group ambient_group(const Theory& theory, bool exclude_reflections) {
  Group g = gpt::automorphism_group(theory);
  if (exclude_reflections &&
      theory.transform_policy() == gpt::TransformPolicy::all_automorphisms)
    return gpt::orientation_subgroup(g, theory);
  return g;
}

void print_group_report(const Theory& theory, const Group& g, const std::string& fmt) {
  gpt::GroupName name = gpt::identify(g);
  bool discrepancy = theory.name() == "gbit-4-2";
  if (fmt == "json") {
    ordered_json j;
    j["theory"] = theory.name();
    j["order"] = g.order();
    j["abelian"] = g.abelian();
    j["identified_as"] = name.to_string();
    j["generator_count"] = g.generators().size();
    if (discrepancy) {
      j["discrepancy_note"] = {
          {"computed_order", g.order()},
          {"published_claim", "s8 semidirect C2 (order 80640)"},
          {"resolution", "exhaustive search over vertex permutations with exact "
                         "linear realizability is authoritative; the computed order "
                         "is the hyperoctahedral count for the 4-cube"}};
    }
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "theory: " << theory.name() << "\n"
            << "order: " << g.order() << "\n"
            << "abelian: " << (g.abelian() ? "yes" : "no") << "\n"
            << "identified as: " << name.to_string() << "\n"
            << "generators: " << g.generators().size() << "\n";
  if (discrepancy) {
    std::cout << "discrepancy: computed order " << g.order()
              << " conflicts with the published claim of s8 semidirect C2 "
                 "(order 80640) for this state space; the exhaustively computed "
                 "order is authoritative\n";
  }
}

int cmd_theory_show(const std::string& name, const std::string& fmt) {
  auto theory = gpt::resolve_theory(name);
  if (fmt == "json") {
    std::cout << gpt::theory_to_json(*theory);
    return 0;
  }
  std::cout << "name: " << theory->name() << "\n"
            << "blocks:";
  for (const gpt::Block& b : theory->layout().blocks())
    std::cout << " " << b.label << "(" << b.outcomes() << ")";
  std::cout << "\nvertices: " << theory->extreme_points().size() << "\n"
            << "affine dimension: " << theory->affine_dim() << "\n"
            << "N: " << theory->distinguishable_count() << "\n"
            << "facets: " << theory->facets().size() << "\n"
            << "transform policy: " << gpt::to_string(theory->transform_policy()) << "\n"
            << "measurements:";
  for (const Measurement& m : theory->measurements()) std::cout << " " << m.label();
  std::cout << "\n";
  if (theory->name() == "spekkens") {
    auto spek = gpt::spekkens_bit();
    std::cout << "ontic vertices: " << spek->ontic_vertices().size() << "\n"
              << "allowed group: " << spek->allowed_group_label() << " (order "
              << theory->explicit_group().size() << ")\n";
  }
  return 0;
}

int cmd_theory_validate(const std::string& path) {
  auto theory = gpt::load_theory_file(path);
  std::cout << "ok: " << theory->name() << " (" << theory->extreme_points().size()
            << " vertices, " << theory->facets().size() << " facets)\n";
  return 0;
}

int cmd_interfere(const std::string& name, const std::string& measurement,
                  const std::string& fmt) {
  auto theory = gpt::resolve_theory(name);
  const Measurement& m = theory->measurement(measurement);
  Group ambient = gpt::automorphism_group(*theory);
  gpt::PhaseGroupResult phase = gpt::phase_group(*theory, m, ambient);

  gpt::Transform t_h = [&]() {
    try {
      return gpt::hadamard_for(*theory);
    } catch (const gpt::ValidationError&) {
      // No registered beam splitter: run the circuit with the identity.
      return theory->validate_transform(gpt::RMat::identity(theory->total_dim()));
    }
  }();
  gpt::InterferenceTable table = gpt::interference_table(*theory, t_h, phase, m);

  if (fmt == "json") {
    ordered_json j;
    j["theory"] = theory->name();
    j["measurement"] = m.label();
    j["rows"] = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json jr;
      jr["element"] = row.element_label;
      jr["outputs"] = row.symbolic;
      j["rows"].push_back(jr);
    }
    j["nontrivial"] = table.nontrivial;
    std::cout << j.dump(2) << "\n";
  } else if (fmt == "csv") {
    std::cout << "element";
    for (std::size_t i = 0; i < m.effects().size(); ++i) std::cout << ",outcome" << i;
    std::cout << "\n";
    for (const auto& row : table.rows) {
      std::cout << row.element_label;
      for (const auto& s : row.symbolic) std::cout << "," << s;
      std::cout << "\n";
    }
  } else {
    for (const auto& row : table.rows) {
      std::cout << row.element_label << ":";
      for (const auto& s : row.symbolic) std::cout << " " << s;
      std::cout << "\n";
    }
    if (!table.nontrivial) std::cout << "no non-trivial interference\n";
  }
  return 0;
}

int cmd_verify_theorem(const std::vector<std::string>& names) {
  bool all_ok = true;
  for (const std::string& name : names) {
    auto theory = gpt::resolve_theory(name);
    bool classical = gpt::is_classical(*theory);
    // First registered maximal measurement drives the construction.
    const Measurement* maximal = nullptr;
    for (const Measurement& m : theory->measurements()) {
      if (gpt::verify_maximal(*theory, m)) {
        maximal = &m;
        break;
      }
    }
    if (!maximal) {
      std::cout << name << ": FAIL (no maximal measurement)\n";
      all_ok = false;
      continue;
    }
    gpt::CanonicalPhaseMap cmap = gpt::canonical_phase_map(*theory, *maximal);
    bool ok;
    std::ostringstream detail;
    if (classical) {
      Group ambient = gpt::automorphism_group(*theory);
      gpt::PhaseGroupResult phase = gpt::phase_group(*theory, *maximal, ambient);
      ok = cmap.identity_on_states && phase.is_trivial && cmap.maps_into_state_space &&
           cmap.fixes_effects_on_hull;
      detail << "classical; phase group order " << phase.group.order()
             << "; canonical map is the identity on states";
    } else {
      ok = cmap.maps_into_state_space && cmap.fixes_effects_on_hull &&
           cmap.witness.has_value() && !cmap.identity_on_states;
      detail << "non-classical; witness vertices";
      if (cmap.witness) detail << " " << cmap.witness->first << "," << cmap.witness->second;
      detail << " merge under the canonical map";
    }
    std::cout << name << ": " << (ok ? "pass" : "FAIL") << " (" << detail.str() << ")\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : kExitValidation;
}

std::vector<double> parse_csv_doubles(const std::string& s, std::size_t expect,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.size() != expect)
    throw gpt::ParseError(what + " wants " + std::to_string(expect) + " comma-separated values");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact GPT state spaces, symmetry groups, phase groups, and interference"};
  app.require_subcommand(1);

  std::string fmt = "text";
  app.add_option("--format", fmt, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  auto* theory_cmd = app.add_subcommand("theory", "inspect or validate theories");
  theory_cmd->fallthrough();
  theory_cmd->require_subcommand(1);
  std::string theory_name, theory_path;
  auto* show = theory_cmd->add_subcommand("show", "print a theory summary");
  show->fallthrough();
  show->add_option("theory", theory_name, "built-in name or file")->required();
  auto* validate = theory_cmd->add_subcommand("validate", "validate a theory file");
  validate->fallthrough();
  validate->add_option("file", theory_path, "theory file")->required();

  auto* autog = app.add_subcommand("auto-group", "reversible transformation group");
  autog->fallthrough();
  std::string autog_theory;
  bool exclude_reflections = false;
  autog->add_option("theory", autog_theory)->required();
  autog->add_flag("--exclude-reflections", exclude_reflections,
                  "keep only orientation-preserving elements");

  auto* phaseg = app.add_subcommand("phase-group", "phase group of a measurement");
  phaseg->fallthrough();
  std::string pg_theory, pg_measurement;
  bool pg_exclude = false;
  phaseg->add_option("theory", pg_theory)->required();
  phaseg->add_option("measurement", pg_measurement)->required();
  phaseg->add_flag("--exclude-reflections", pg_exclude);

  auto* interfere = app.add_subcommand("interfere", "symbolic interference table");
  interfere->fallthrough();
  std::string int_theory, int_measurement;
  interfere->add_option("theory", int_theory)->required();
  interfere->add_option("measurement", int_measurement)->required();

  auto* verify = app.add_subcommand("verify-theorem",
                                    "trivial-phase <=> classicality, constructively");
  verify->fallthrough();
  std::vector<std::string> verify_theories{"classical-2", "classical-3", "classical-4",
                                           "gbit-2-2",    "gbit-3-2",    "gbit-4-2",
                                           "gbit-2-3",    "spekkens"};
  verify->add_option("--theories", verify_theories, "theories to check")->delimiter(',');

  auto* qubit_cmd = app.add_subcommand("qubit", "closed-form qubit numerics");
  qubit_cmd->fallthrough();
  qubit_cmd->require_subcommand(1);
  double phi = 0, alpha = 0, beta = 0;
  std::string lambda_csv = "1,1,0,0", gauge_csv = "0,0,1";
  auto* mzi = qubit_cmd->add_subcommand("mzi", "interferometer fringe");
  mzi->fallthrough();
  mzi->add_option("--phi", phi, "phase in radians")->required();
  mzi->add_option("--lambda", lambda_csv, "gauge parameters l1,l2,l3,l4");
  auto* effects = qubit_cmd->add_subcommand("effects", "general binary-measurement effects");
  effects->fallthrough();
  effects->add_option("--alpha", alpha)->required();
  effects->add_option("--beta", beta)->required();
  effects->add_option("--gauge", gauge_csv, "A,B,C with A+B+C=1");
  auto* tprob = qubit_cmd->add_subcommand("tprob", "probability-picture basis rotation");
  tprob->fallthrough();
  tprob->add_option("--alpha", alpha)->required();
  tprob->add_option("--beta", beta)->required();
  tprob->add_option("--gauge", gauge_csv, "A,B,C with A+B+C=1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*show) return cmd_theory_show(theory_name, fmt);
    if (*validate) return cmd_theory_validate(theory_path);
    if (*autog) {
      auto theory = gpt::resolve_theory(autog_theory);
      print_group_report(*theory, ambient_group(*theory, exclude_reflections), fmt);
      return 0;
    }
    if (*phaseg) {
      auto theory = gpt::resolve_theory(pg_theory);
      const Measurement& m = theory->measurement(pg_measurement);
      Group ambient = ambient_group(*theory, pg_exclude);
      gpt::PhaseGroupResult result = gpt::phase_group(*theory, m, ambient);
      if (fmt == "json") {
        ordered_json j;
        j["theory"] = theory->name();
        j["measurement"] = m.label();
        j["ambient_order"] = ambient.order();
        j["order"] = result.group.order();
        j["abelian"] = result.group.abelian();
        j["identified_as"] = result.name.to_string();
        j["trivial"] = result.is_trivial;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "theory: " << theory->name() << "\n"
                  << "measurement: " << m.label() << "\n"
                  << "ambient order: " << ambient.order() << "\n"
                  << "phase group order: " << result.group.order() << "\n"
                  << "abelian: " << (result.group.abelian() ? "yes" : "no") << "\n"
                  << "identified as: " << result.name.to_string() << "\n"
                  << "trivial: " << (result.is_trivial ? "yes" : "no") << "\n";
      }
      return 0;
    }
    if (*interfere) return cmd_interfere(int_theory, int_measurement, fmt);
    if (*verify) return cmd_verify_theorem(verify_theories);
    if (*mzi) {
      auto l = parse_csv_doubles(lambda_csv, 4, "--lambda");
      auto [p, q] = gpt::qubit::mzi_output(phi, {l[0], l[1], l[2], l[3]});
      gpt::qubit::Vec6 sf = gpt::qubit::mzi_final_state(phi, {l[0], l[1], l[2], l[3]});
      if (fmt == "json") {
        ordered_json j;
        j["phi"] = phi;
        j["p_plus"] = p;
        j["p_minus"] = q;
        j["final_state"] = std::vector<double>(sf.begin(), sf.end());
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "P(Z=+1) = " << format_double(p) << "\n"
                  << "P(Z=-1) = " << format_double(q) << "\n"
                  << "final state:";
        for (double v : sf) std::cout << " " << format_double(v);
        std::cout << "\n";
      }
      return 0;
    }
    if (*effects || *tprob) {
      auto g = parse_csv_doubles(gauge_csv, 3, "--gauge");
      gpt::qubit::Gauge gauge(g[0], g[1], g[2]);
      if (*effects) {
        auto [e, ep] = gpt::qubit::qubit_effects(alpha, beta, gauge);
        std::cout << "e:";
        for (double v : e) std::cout << " " << format_double(v);
        std::cout << "\ne_perp:";
        for (double v : ep) std::cout << " " << format_double(v);
        std::cout << "\n";
      } else {
        gpt::qubit::Mat6 m = gpt::qubit::t_prob(alpha, beta, gauge);
        for (const auto& row : m) {
          for (std::size_t c = 0; c < row.size(); ++c)
            std::cout << (c ? " " : "") << format_double(row[c]);
          std::cout << "\n";
        }
      }
      return 0;
    }
  } catch (const gpt::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const gpt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const gpt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
