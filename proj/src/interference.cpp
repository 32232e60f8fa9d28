#include "gpt/interference.hpp"

#include <algorithm>
#include <map>

namespace gpt {

namespace {

// Matrix of a coordinate read map: (M x)_i = x_{read[i]}.
RMat read_map_matrix(const std::vector<std::size_t>& read) {
  RMat m(read.size(), read.size());
  for (std::size_t i = 0; i < read.size(); ++i) m.at(i, read[i]) = 1;
  return m;
}

// gbit beam splitter: X and Z blocks swap, Y outcomes swap.
const std::vector<std::size_t> kGbitHadamardRead = {4, 5, 3, 2, 0, 1};
// toy-bit beam splitter: X and Z blocks swap, Y fixed.
const std::vector<std::size_t> kSpekkensHadamardRead = {4, 5, 2, 3, 0, 1};

// Z-phase square elements on the X/Y coordinates (Z block fixed), in the
// standard order: rotations by 90, 180, 270, 0 degrees, then the four
// reflections.
const std::vector<std::vector<std::size_t>> kGbitZPhaseReads = {
    {3, 2, 0, 1, 4, 5},  // g1
    {1, 0, 3, 2, 4, 5},  // g2
    {2, 3, 1, 0, 4, 5},  // g3
    {0, 1, 2, 3, 4, 5},  // g4
    {1, 0, 2, 3, 4, 5},  // g5
    {3, 2, 1, 0, 4, 5},  // g6
    {0, 1, 3, 2, 4, 5},  // g7
    {2, 3, 0, 1, 4, 5},  // g8
};

std::vector<std::size_t> vertex_perm_of(const Theory& theory, const RMat& m) {
  std::vector<std::size_t> perm(theory.extreme_points().size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    auto idx = theory.vertex_index(m * theory.extreme_points()[i].coords());
    if (!idx) throw ValidationError("matrix does not permute the extreme points");
    perm[i] = *idx;
  }
  return perm;
}

}  // namespace

Transform hadamard_for(const Theory& theory) {
  if (theory.name().rfind("gbit-3-2", 0) == 0)
    return theory.validate_transform(read_map_matrix(kGbitHadamardRead));
  if (theory.name() == "spekkens" || theory.name() == "octahedron")
    return theory.validate_transform(read_map_matrix(kSpekkensHadamardRead));
  throw ValidationError("no beam-splitter transform registered for theory '" +
                        theory.name() + "'");
}

std::optional<std::vector<std::size_t>> coordinate_read_map(const Theory& theory,
                                                            const RMat& composite) {
  const std::size_t d = theory.total_dim();
  std::vector<std::size_t> read(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      bool match = true;
      for (const State& v : theory.extreme_points()) {
        RVec w = composite * v.coords();
        if (w[i] != v[j]) {
          match = false;
          break;
        }
      }
      if (match) {
        if (read[i] != d) return std::nullopt;  // ambiguous coordinate
        read[i] = j;
      }
    }
    if (read[i] == d) return std::nullopt;  // no coordinate feeds output i
  }
  return read;
}

std::vector<std::pair<std::string, RMat>> gbit_z_phase_elements() {
  std::vector<std::pair<std::string, RMat>> out;
  for (std::size_t i = 0; i < kGbitZPhaseReads.size(); ++i)
    out.emplace_back("g" + std::to_string(i + 1), read_map_matrix(kGbitZPhaseReads[i]));
  return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> gbit_z_conjugates(
    const Theory& theory) {
  Transform h = hadamard_for(theory);
  RMat h_inv = inverse(h.matrix());
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& [label, g] : gbit_z_phase_elements()) {
    RMat composite = h_inv * g * h.matrix();
    auto read = coordinate_read_map(theory, composite);
    if (!read) throw ValidationError("conjugate of " + label + " is not a read map");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < read->size(); ++i)
      labels.push_back(theory.layout().coord_label((*read)[i]));
    out.emplace_back(label, std::move(labels));
  }
  return out;
}

std::string phase_element_label(const Theory& theory, const GroupElement& e) {
  if (!e.label.empty()) return "g" + e.label;
  if (theory.name() == "gbit-3-2") {
    for (const auto& [label, m] : gbit_z_phase_elements()) {
      try {
        if (vertex_perm_of(theory, m) == e.vertex_perm) return label;
      } catch (const ValidationError&) {
      }
    }
  }
  bool is_id = true;
  for (std::size_t i = 0; i < e.vertex_perm.size(); ++i)
    if (e.vertex_perm[i] != i) is_id = false;
  if (is_id) return "identity";
  // Fall back to the vertex permutation in one-line notation.
  std::string s = "perm[";
  for (std::size_t i = 0; i < e.vertex_perm.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e.vertex_perm[i]);
  }
  return s + "]";
}

InterferenceTable interference_table(const Theory& theory, const Transform& t_h,
                                     const PhaseGroupResult& phase, const Measurement& m) {
  RMat h_inv = inverse(t_h.matrix());
  InterferenceTable table;

  // Which coordinate does each effect read? Symbolic rows need one-hot
  // effects.
  std::vector<std::optional<std::size_t>> effect_coord;
  for (const Effect& e : m.effects()) {
    std::optional<std::size_t> coord;
    bool one_hot = true;
    for (std::size_t c = 0; c < e.dim(); ++c) {
      if (e.coords()[c] == 0) continue;
      if (e.coords()[c] != 1 || coord) {
        one_hot = false;
        break;
      }
      coord = c;
    }
    effect_coord.push_back(one_hot ? coord : std::nullopt);
  }

  for (const GroupElement& g : phase.group.elements()) {
    InterferenceRow row;
    row.element_label = phase_element_label(theory, g);
    RMat composite = h_inv * g.transform.matrix() * t_h.matrix();
    auto read = coordinate_read_map(theory, composite);
    bool symbolic_ok = read.has_value();
    for (const auto& c : effect_coord) symbolic_ok = symbolic_ok && c.has_value();
    if (symbolic_ok) {
      for (const auto& c : effect_coord)
        row.symbolic.push_back(theory.layout().coord_label((*read)[*c]));
    }
    for (const State& v : theory.extreme_points()) {
      RVec w = composite * v.coords();
      RVec dist;
      for (const Effect& e : m.effects()) dist.push_back(dot(e.coords(), w));
      row.numeric.push_back(std::move(dist));
    }
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const InterferenceRow& a, const InterferenceRow& b) {
              if (a.element_label.size() != b.element_label.size())
                return a.element_label.size() < b.element_label.size();
              return a.element_label < b.element_label;
            });
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].numeric != table.rows[0].numeric) {
      table.nontrivial = true;
      break;
    }
  }
  return table;
}

std::vector<std::vector<std::string>> indistinguishable_partition(
    const InterferenceTable& t) {
  std::vector<std::vector<std::string>> blocks;
  std::vector<const InterferenceRow*> reps;
  for (const InterferenceRow& row : t.rows) {
    bool placed = false;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (reps[b]->numeric == row.numeric) {
        blocks[b].push_back(row.element_label);
        placed = true;
        break;
      }
    }
    if (!placed) {
      blocks.push_back({row.element_label});
      reps.push_back(&row);
    }
  }
  return blocks;
}

bool commutes(const Transform& a, const Transform& b, const Theory& theory) {
  return theory.same_action(a.matrix() * b.matrix(), b.matrix() * a.matrix());
}

LocalityResult locality_admissible(const std::vector<Transform>& a,
                                   const std::vector<Transform>& b, const Theory& theory,
                                   const Measurement& m) {
  LocalityResult result;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (commutes(a[i], b[j], theory)) continue;
      result.admissible = false;
      RMat ab = a[i].matrix() * b[j].matrix();
      RMat ba = b[j].matrix() * a[i].matrix();
      for (std::size_t v = 0; v < theory.extreme_points().size(); ++v) {
        const RVec& x = theory.extreme_points()[v].coords();
        RVec sab, sba;
        for (const Effect& e : m.effects()) {
          sab.push_back(dot(e.coords(), ab * x));
          sba.push_back(dot(e.coords(), ba * x));
        }
        if (sab != sba) {
          result.witness = LocalityWitness{i, j, v, std::move(sab), std::move(sba)};
          return result;
        }
      }
      // The orderings differ as maps but agree on every statistic of m;
      // keep searching other pairs for a statistical witness.
    }
  }
  return result;
}

}  // namespace gpt
