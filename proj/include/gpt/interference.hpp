#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpt/phase.hpp"

namespace gpt {

/// The discrete beam-splitter transform for a registered theory: the gbit
/// version swaps the X and Z blocks and swaps the Y outcomes; the toy-bit
/// version swaps X and Z and leaves Y fixed. Both are involutions.
Transform hadamard_for(const Theory& theory);

/// One row of an interference table: a phase-element label plus the output
/// distribution of the measurement after the composite H^-1 g H, expressed
/// symbolically as input-coordinate labels when the composite permutes
/// coordinates on the state space.
struct InterferenceRow {
  std::string element_label;
  std::vector<std::string> symbolic;  // one entry per measurement effect; empty if numeric
  std::vector<RVec> numeric;          // per-vertex output distributions (fallback/check)
};

struct InterferenceTable {
  std::vector<InterferenceRow> rows;
  bool nontrivial = false;
};

InterferenceTable interference_table(const Theory& theory, const Transform& t_h,
                                     const PhaseGroupResult& phase, const Measurement& m);

/// Blocks of phase elements whose table rows are identical.
std::vector<std::vector<std::string>> indistinguishable_partition(const InterferenceTable& t);

/// The composite H^-1 g H as a permutation of coordinate labels on the state
/// space, when one exists: out[i] = index of the input coordinate feeding
/// output coordinate i.
std::optional<std::vector<std::size_t>> coordinate_read_map(const Theory& theory,
                                                            const RMat& composite);

/// The eight explicit Z-phase elements of the 3-in 2-out gbit, as matrices
/// acting on the X/Y square (identity on Z), in their standard order
/// g1..g8: the rotations by 90/180/270/0 degrees followed by the four
/// reflections.
std::vector<std::pair<std::string, RMat>> gbit_z_phase_elements();

/// The conjugated action H g_i H of each explicit element, expressed as a
/// full 6-coordinate symbolic output row.
std::vector<std::pair<std::string, std::vector<std::string>>> gbit_z_conjugates(
    const Theory& theory);

/// Label a phase-group element by matching its vertex action against the
/// standard element set: g1..g8 for the gbit square, permutation words for
/// the toy bit (whose explicit group already carries labels).
std::string phase_element_label(const Theory& theory, const GroupElement& e);

/// Equality of a.b and b.a as actions on the state space.
bool commutes(const Transform& a, const Transform& b, const Theory& theory);

/// Cross-commutativity of two sets of operations. When some pair fails, the
/// witness holds the pair indices, a vertex, and the measurement's outcome
/// distributions under the two orderings.
struct LocalityWitness {
  std::size_t a_index = 0;
  std::size_t b_index = 0;
  std::size_t vertex = 0;
  RVec stats_ab;
  RVec stats_ba;
};

struct LocalityResult {
  bool admissible = true;
  std::optional<LocalityWitness> witness;
};

LocalityResult locality_admissible(const std::vector<Transform>& a,
                                   const std::vector<Transform>& b, const Theory& theory,
                                   const Measurement& m);

}  // namespace gpt
