#include "gpt/phase.hpp"

#include <algorithm>
#include <functional>

namespace gpt {

namespace {

// Does t leave every outcome probability of m unchanged on every extreme
// point? Linearity + convexity extend this to the whole state space.
bool stabilizes(const Theory& theory, const Measurement& m, const RMat& t) {
  for (const Effect& e : m.effects()) {
    for (const State& v : theory.extreme_points()) {
      if (dot(e.coords(), t * v.coords()) != dot(e.coords(), v.coords())) return false;
    }
  }
  return true;
}

}  // namespace

PhaseGroupResult phase_group(const Theory& theory, const Measurement& m,
                             const Group& ambient) {
  std::vector<GroupElement> kept;
  for (const GroupElement& e : ambient.elements()) {
    if (stabilizes(theory, m, e.transform.matrix())) kept.push_back(e);
  }
  Group g(std::move(kept), theory);
  PhaseGroupResult result{std::move(g), m.label(), GroupName{}, false};
  result.name = identify(result.group);
  result.is_trivial = result.group.order() == 1;
  return result;
}

bool verify_maximal_phase_group(const Theory& theory, const Measurement& m,
                                const Group& ambient, const PhaseGroupResult& result) {
  for (const GroupElement& e : ambient.elements()) {
    bool in_phase = result.group.find(e.vertex_perm).has_value();
    bool stab = stabilizes(theory, m, e.transform.matrix());
    if (in_phase != stab) return false;
  }
  return true;
}

bool verify_maximal(const Theory& theory, const Measurement& m) {
  const std::size_t n = theory.distinguishable_count();
  if (m.effects().size() < n) return false;
  // Bipartite matching between effects and vertices with e_i . v = 1 and
  // e_j . v = 0 for j != i. Polytopes here are tiny; greedy with backtracking.
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t v = 0; v < theory.extreme_points().size(); ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < m.effects().size() && ok; ++j) {
        Rational p = dot(m.effects()[j].coords(), theory.extreme_points()[v].coords());
        if (p != Rational(i == j ? 1 : 0)) ok = false;
      }
      if (ok) candidates[i].push_back(v);
    }
  }
  std::vector<bool> used(theory.extreme_points().size(), false);
  std::function<bool(std::size_t)> match = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t v : candidates[i]) {
      if (used[v]) continue;
      used[v] = true;
      if (match(i + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return match(0);
}

bool is_classical(const Theory& theory) {
  bool any_maximal = false;
  for (const Measurement& m : theory.measurements()) {
    if (!verify_maximal(theory, m)) continue;
    any_maximal = true;
    if (theory.affine_dim() != theory.distinguishable_count() - 1) continue;
    // Statistics map restricted to the affine hull: rank of
    // [e_i . (v_k - v_0)] over an affine basis must equal affine_dim.
    const auto& basis = theory.span_basis();
    const RVec& v0 = theory.extreme_points()[basis[0]].coords();
    RMat stat(m.effects().size(), theory.affine_dim());
    for (std::size_t k = 0; k < theory.affine_dim(); ++k) {
      RVec d = vec_sub(theory.extreme_points()[basis[k + 1]].coords(), v0);
      for (std::size_t i = 0; i < m.effects().size(); ++i)
        stat.at(i, k) = dot(m.effects()[i].coords(), d);
    }
    if (rank(stat) == theory.affine_dim()) return true;
  }
  if (!any_maximal) throw ValidationError("no maximal measurement registered");
  return false;
}

CanonicalPhaseMap canonical_phase_map(const Theory& theory, const Measurement& m) {
  if (!verify_maximal(theory, m))
    throw ValidationError("canonical phase map requires a maximal measurement");
  const std::size_t n = theory.distinguishable_count();
  const std::size_t d = theory.total_dim();

  CanonicalPhaseMap out;
  out.matrix = RMat(d, d);
  // mu_i = lexicographically smallest extreme point perfectly selected by
  // effect i. Extreme points are stored in lexicographic order, so the first
  // hit wins.
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::size_t> pick;
    for (std::size_t v = 0; v < theory.extreme_points().size() && !pick; ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        Rational p = dot(m.effects()[j].coords(), theory.extreme_points()[v].coords());
        if (p != Rational(i == j ? 1 : 0)) ok = false;
      }
      if (ok) pick = v;
    }
    if (!pick) throw ValidationError("measurement lost maximality during anchor search");
    out.anchors.push_back(*pick);
    const RVec& mu = theory.extreme_points()[*pick].coords();
    const RVec& e = m.effects()[i].coords();
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out.matrix.at(r, c) += mu[r] * e[c];
  }

  // (a) vertices land in the state space.
  out.maps_into_state_space = true;
  for (const State& v : theory.extreme_points())
    if (!theory.membership(out.matrix * v.coords())) out.maps_into_state_space = false;

  // (b) e_i . T = e_i on the affine hull (checked on all extreme points).
  out.fixes_effects_on_hull = true;
  for (std::size_t i = 0; i < n; ++i)
    for (const State& v : theory.extreme_points())
      if (dot(m.effects()[i].coords(), out.matrix * v.coords()) !=
          dot(m.effects()[i].coords(), v.coords()))
        out.fixes_effects_on_hull = false;

  out.identity_on_states = true;
  for (const State& v : theory.extreme_points())
    if (out.matrix * v.coords() != v.coords()) out.identity_on_states = false;

  // (c) witness pair: distinct extreme points with equal statistics, merged
  // by T.
  for (std::size_t a = 0; a < theory.extreme_points().size() && !out.witness; ++a) {
    for (std::size_t b = a + 1; b < theory.extreme_points().size(); ++b) {
      const RVec& va = theory.extreme_points()[a].coords();
      const RVec& vb = theory.extreme_points()[b].coords();
      bool same_stats = true;
      for (std::size_t i = 0; i < n && same_stats; ++i)
        if (dot(m.effects()[i].coords(), va) != dot(m.effects()[i].coords(), vb))
          same_stats = false;
      if (same_stats && out.matrix * va == out.matrix * vb) {
        out.witness = {a, b};
        break;
      }
    }
  }
  return out;
}

PhaseDynamicsReport phase_dynamics_report(const Theory& theory, const Measurement& m,
                                          const RMat& matrix) {
  PhaseDynamicsReport report;
  report.preserves_state_space = true;
  std::vector<std::optional<std::size_t>> images;
  for (std::size_t i = 0; i < theory.extreme_points().size(); ++i) {
    RVec w = matrix * theory.extreme_points()[i].coords();
    if (!theory.membership(w)) report.preserves_state_space = false;
    if (w != theory.extreme_points()[i].coords()) report.changed_states.push_back(i);
    images.push_back(theory.vertex_index(w));
  }
  report.preserves_measurement = stabilizes(theory, m, matrix);
  // Reversible within the theory: the extreme-point set is permuted
  // bijectively.
  std::vector<bool> hit(theory.extreme_points().size(), false);
  report.is_reversible = true;
  for (const auto& img : images) {
    if (!img || hit[*img]) {
      report.is_reversible = false;
      break;
    }
    hit[*img] = true;
  }
  return report;
}

RMat mixture_of_phase_elements(const std::vector<std::pair<Rational, RMat>>& weighted) {
  if (weighted.empty()) throw ValidationError("empty mixture");
  Rational total = 0;
  RMat acc(weighted[0].second.rows(), weighted[0].second.cols());
  for (const auto& [w, m] : weighted) {
    if (w < 0) throw ValidationError("negative mixture weight");
    if (m.rows() != acc.rows() || m.cols() != acc.cols())
      throw LayoutError("mixture dimension mismatch");
    total += w;
    acc = acc + m.scaled(w);
  }
  if (total != 1) throw ValidationError("mixture weights must sum to 1");
  return acc;
}

RMat decoherence_map(const Theory& theory, std::size_t frozen_block) {
  const auto& layout = theory.layout();
  RMat d(layout.total_dim(), layout.total_dim());
  for (std::size_t j = 0; j < layout.blocks().size(); ++j) {
    std::size_t off = layout.block_offset(j);
    std::size_t l = layout.blocks()[j].outcomes();
    for (std::size_t r = 0; r < l; ++r)
      for (std::size_t c = 0; c < l; ++c)
        d.at(off + r, off + c) =
            (j == frozen_block) ? Rational(r == c ? 1 : 0)
                                : Rational(1) / Rational(static_cast<long>(l));
  }
  return d;
}

RMat measurement_setting_map(const Theory& theory, std::size_t target_block) {
  const auto& layout = theory.layout();
  RMat p = RMat::identity(layout.total_dim());
  std::size_t off = layout.block_offset(target_block);
  std::size_t l = layout.blocks()[target_block].outcomes();
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c < l; ++c) p.at(off + r, off + c) = Rational(r == 0 ? 1 : 0);
  return p;
}

}  // namespace gpt
