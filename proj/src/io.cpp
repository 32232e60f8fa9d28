#include "gpt/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gpt {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json rvec_to_json(const RVec& v) {
  ordered_json arr = ordered_json::array();
  for (const Rational& r : v) arr.push_back(rational_to_string(r));
  return arr;
}

RVec rvec_from_json(const ordered_json& arr) {
  if (!arr.is_array()) throw ParseError("expected an array of rationals");
  RVec v;
  for (const auto& item : arr) {
    if (!item.is_string()) throw ParseError("rationals must be \"num/den\" strings");
    v.push_back(parse_rational(item.get<std::string>()));
  }
  return v;
}

}  // namespace

std::string theory_to_json(const Theory& theory) {
  ordered_json j;
  j["schema_version"] = 1;
  j["name"] = theory.name();
  j["layout"] = ordered_json::array();
  for (const Block& b : theory.layout().blocks()) {
    ordered_json jb;
    jb["label"] = b.label;
    jb["outcomes"] = b.outcome_labels;
    j["layout"].push_back(jb);
  }
  j["extreme_points"] = ordered_json::array();
  for (const State& v : theory.extreme_points())
    j["extreme_points"].push_back(rvec_to_json(v.coords()));
  j["facets"] = ordered_json::array();
  for (const Facet& f : theory.facets()) {
    ordered_json jf;
    jf["covector"] = rvec_to_json(f.covector);
    jf["bound"] = rational_to_string(f.bound);
    j["facets"].push_back(jf);
  }
  j["distinguishable_count"] = theory.distinguishable_count();
  j["transform_policy"] = to_string(theory.transform_policy());
  j["measurements"] = ordered_json::array();
  for (const Measurement& m : theory.measurements()) {
    ordered_json jm;
    jm["label"] = m.label();
    jm["effects"] = ordered_json::array();
    for (const Effect& e : m.effects()) jm["effects"].push_back(rvec_to_json(e.coords()));
    j["measurements"].push_back(jm);
  }
  if (!theory.explicit_group().empty()) {
    j["explicit_group"] = ordered_json::array();
    for (const auto& [label, t] : theory.explicit_group()) {
      ordered_json jt;
      jt["label"] = label;
      jt["matrix"] = ordered_json::array();
      for (std::size_t r = 0; r < t.matrix().rows(); ++r)
        jt["matrix"].push_back(rvec_to_json(t.matrix().row(r)));
      j["explicit_group"].push_back(jt);
    }
  }
  return j.dump(2) + "\n";
}

std::shared_ptr<Theory> theory_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("theory file: ") + e.what());
  }
  try {
    if (j.value("schema_version", 0) != 1)
      throw ParseError("unsupported schema_version (expected 1)");
    std::vector<Block> blocks;
    for (const auto& jb : j.at("layout"))
      blocks.push_back(
          Block{jb.at("label").get<std::string>(),
                jb.at("outcomes").get<std::vector<std::string>>()});
    MeasurementLayout layout(blocks);

    std::vector<RVec> vertices;
    for (const auto& jv : j.at("extreme_points")) vertices.push_back(rvec_from_json(jv));
    std::vector<Facet> facets;
    for (const auto& jf : j.at("facets"))
      facets.push_back(Facet{rvec_from_json(jf.at("covector")),
                             parse_rational(jf.at("bound").get<std::string>())});

    auto theory = std::make_shared<Theory>(
        j.at("name").get<std::string>(), layout, std::move(vertices), std::move(facets),
        j.at("distinguishable_count").get<std::size_t>(),
        transform_policy_from_string(j.at("transform_policy").get<std::string>()));

    for (const auto& jm : j.value("measurements", ordered_json::array())) {
      std::vector<Effect> effects;
      for (const auto& je : jm.at("effects"))
        effects.push_back(theory->make_effect(rvec_from_json(je)));
      theory->register_measurement(
          Measurement(jm.at("label").get<std::string>(), std::move(effects), *theory));
    }
    if (j.contains("explicit_group")) {
      std::vector<std::pair<std::string, Transform>> group;
      for (const auto& jt : j.at("explicit_group")) {
        std::vector<RVec> rows;
        for (const auto& jr : jt.at("matrix")) rows.push_back(rvec_from_json(jr));
        group.emplace_back(jt.at("label").get<std::string>(),
                           theory->validate_transform(RMat::from_rows(rows)));
      }
      theory->set_explicit_group(std::move(group));
    }
    return theory;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("theory file: ") + e.what());
  }
}

std::shared_ptr<Theory> load_theory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open theory file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return theory_from_json(buf.str());
}

void save_theory_file(const Theory& theory, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write theory file '" + path + "'");
  out << theory_to_json(theory);
}

std::shared_ptr<Theory> resolve_theory(const std::string& name_or_path) {
  try {
    return built_in_theory(name_or_path);
  } catch (const ParseError&) {
    return load_theory_file(name_or_path);
  }
}

}  // namespace gpt
