#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gpt/core.hpp"

namespace gpt {

/// Classical n-outcome system: a simplex with one fiducial block.
/// Registers the maximal fiducial measurement; for n=4 also a two-bit parity
/// measurement (outcomes read as 00,01,10,11).
std::shared_ptr<Theory> classical_dit(std::size_t n);

/// m-in n-out gbit: the full product of m outcome simplices.
/// Registers the fiducial blocks plus the named extras used by the standard
/// fixtures (see standard_measurements()).
std::shared_ptr<Theory> gbit(std::size_t m, std::size_t n,
                             std::size_t max_vertices = 64);

/// The epistemic octahedron as a standalone polytope theory with
/// all_automorphisms policy (no ontic embedding).
std::shared_ptr<Theory> octahedron_theory();

enum class SpekkensBasis { X, Y, Z };

/// Spekkens toy bit: epistemic octahedron plus the embedded ontic tetrahedron
/// and the S4-induced explicit transform group.
class SpekkensBit {
 public:
  SpekkensBit();

  const std::shared_ptr<Theory>& base() const { return base_; }
  const std::vector<RVec>& ontic_vertices() const { return ontic_vertices_; }
  std::string allowed_group_label() const { return "induced S4"; }

  /// Pure epistemic state for (basis, outcome); outcome is +1 or -1.
  State epistemic_state(SpekkensBasis basis, int outcome) const;

  /// Measurement update rule: randomize the hidden variable over the
  /// outcome's support. Throws if the requested outcome has probability zero.
  State measure_update(const State& s, SpekkensBasis basis, int outcome) const;

  /// Outcome distribution (P(+1), P(-1)) of a basis measurement on s.
  std::pair<Rational, Rational> outcome_distribution(const State& s,
                                                     SpekkensBasis basis) const;

 private:
  std::shared_ptr<Theory> base_;
  std::vector<RVec> ontic_vertices_;
};

std::shared_ptr<SpekkensBit> spekkens_bit();

/// Named access to all measurements registered on a built-in theory.
std::vector<std::string> standard_measurement_names(const Theory& theory);

/// Builder registry keyed by CLI name: classical-N, gbit-M-N, spekkens,
/// octahedron. Throws ParseError for unknown names.
std::shared_ptr<Theory> built_in_theory(const std::string& name);
std::vector<std::string> built_in_theory_names();

/// Qubit ball constraint in stacked-probability coordinates:
/// sum_W (p(0|W) - 1/2)^2 <= 1/4. Exact for rational points.
bool qubit_ball_member(const RVec& v);

}  // namespace gpt
