#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpt/group.hpp"

namespace gpt {

/// Phase group of a measurement: the maximal subgroup of the ambient
/// reversible group whose elements leave every outcome probability of the
/// measurement unchanged on every state.
struct PhaseGroupResult {
  Group group;
  std::string measurement_label;
  GroupName name;
  bool is_trivial = false;
};

PhaseGroupResult phase_group(const Theory& theory, const Measurement& m,
                             const Group& ambient);

/// Independent maximality confirmation: every ambient element outside the
/// phase group violates the stabilizer condition on at least one
/// (vertex, effect) pair. Returns false if any excluded element slipped
/// through or any included element fails the condition.
bool verify_maximal_phase_group(const Theory& theory, const Measurement& m,
                                const Group& ambient, const PhaseGroupResult& result);

/// A measurement is maximal when it perfectly distinguishes N extreme points:
/// there exist vertices v_1..v_N with e_i . v_j = delta_ij.
bool verify_maximal(const Theory& theory, const Measurement& m);

/// Classical = some registered maximal measurement's statistics map is
/// injective on the state space: affine dimension equals N - 1 and the
/// statistics map has full rank on the affine hull.
bool is_classical(const Theory& theory);

/// The constructive map T = sum_i mu_i e_i^T of the classicality theorem,
/// with its proof obligations evaluated:
///  (a) T maps every extreme point into the state space,
///  (b) e_i . T = e_i on the affine hull,
///  (c) for a non-classical theory, a witness pair of distinct extreme
///      points with equal measurement statistics that T merges.
struct CanonicalPhaseMap {
  RMat matrix;
  std::vector<std::size_t> anchors;  // vertex index of mu_i per effect
  bool maps_into_state_space = false;
  bool fixes_effects_on_hull = false;
  bool identity_on_states = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

CanonicalPhaseMap canonical_phase_map(const Theory& theory, const Measurement& m);

/// Possibly-irreversible phase dynamics check for a single map.
struct PhaseDynamicsReport {
  bool preserves_state_space = false;
  bool preserves_measurement = false;
  bool is_reversible = false;
  std::vector<std::size_t> changed_states;  // extreme points moved by the map
};

PhaseDynamicsReport phase_dynamics_report(const Theory& theory, const Measurement& m,
                                          const RMat& matrix);

/// Convex combination of phase-group elements; weights must be nonnegative
/// and sum to 1. The result is phase dynamics for the same measurement.
RMat mixture_of_phase_elements(const std::vector<std::pair<Rational, RMat>>& weighted);

/// Block-averaging decoherence: replaces the statistics of every block except
/// `frozen_block` with the uniform distribution.
RMat decoherence_map(const Theory& theory, std::size_t frozen_block);

/// The measurement-setting map: forces `target_block`'s statistics to the
/// one-hot distribution on its first outcome, identity elsewhere.
RMat measurement_setting_map(const Theory& theory, std::size_t target_block);

}  // namespace gpt
