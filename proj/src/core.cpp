#include "gpt/core.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gpt {

MeasurementLayout::MeasurementLayout(std::vector<Block> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw LayoutError("layout needs at least one block");
  for (const auto& b : blocks_) {
    if (b.outcomes() < 2) throw LayoutError("block '" + b.label + "' needs >= 2 outcomes");
    offsets_.push_back(total_dim_);
    total_dim_ += b.outcomes();
  }
}

std::pair<std::size_t, std::size_t> MeasurementLayout::locate(std::size_t coord) const {
  if (coord >= total_dim_) throw LayoutError("coordinate out of range");
  for (std::size_t j = blocks_.size(); j-- > 0;) {
    if (coord >= offsets_[j]) return {j, coord - offsets_[j]};
  }
  throw LayoutError("unreachable");
}

std::string MeasurementLayout::coord_label(std::size_t coord) const {
  auto [j, i] = locate(coord);
  return "P(" + blocks_[j].outcome_labels[i] + "|" + blocks_[j].label + ")";
}

std::optional<std::size_t> MeasurementLayout::block_index(const std::string& label) const {
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    if (blocks_[j].label == label) return j;
  return std::nullopt;
}

bool MeasurementLayout::operator==(const MeasurementLayout& other) const {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    if (blocks_[j].label != other.blocks_[j].label ||
        blocks_[j].outcome_labels != other.blocks_[j].outcome_labels)
      return false;
  }
  return true;
}

State::State(RVec coords, const Theory& theory) : coords_(std::move(coords)) {
  if (coords_.size() != theory.total_dim())
    throw LayoutError("state dimension does not match layout");
  if (!theory.membership(coords_))
    throw ValidationError("state coordinates violate the theory's H-rep");
}

Effect::Effect(RVec coords, const Theory& theory) : coords_(std::move(coords)) {
  if (coords_.size() != theory.total_dim())
    throw LayoutError("effect dimension does not match layout");
  for (const State& v : theory.extreme_points()) {
    Rational p = dot(coords_, v.coords());
    if (p < 0 || p > 1)
      throw ValidationError("effect gives probability outside [0,1] on an extreme point");
  }
}

Measurement::Measurement(std::string label, std::vector<Effect> effects,
                         const Theory& theory)
    : label_(std::move(label)), effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("measurement needs at least one effect");
  for (const State& v : theory.extreme_points()) {
    Rational total = 0;
    for (const Effect& e : effects_) total += dot(e.coords(), v.coords());
    if (total != 1)
      throw ValidationError("measurement '" + label_ + "' effects do not sum to 1 on an extreme point");
  }
}

std::string to_string(TransformPolicy p) {
  switch (p) {
    case TransformPolicy::all_automorphisms: return "all_automorphisms";
    case TransformPolicy::exclude_reflections: return "exclude_reflections";
    case TransformPolicy::explicit_group: return "explicit_group";
  }
  return "?";
}

TransformPolicy transform_policy_from_string(const std::string& s) {
  if (s == "all_automorphisms") return TransformPolicy::all_automorphisms;
  if (s == "exclude_reflections") return TransformPolicy::exclude_reflections;
  if (s == "explicit_group") return TransformPolicy::explicit_group;
  throw ParseError("unknown transform_policy '" + s + "'");
}

Theory::Theory(std::string name, MeasurementLayout layout, std::vector<RVec> extreme_points,
               std::vector<Facet> facets, std::size_t distinguishable_count,
               TransformPolicy policy)
    : name_(std::move(name)),
      layout_(std::move(layout)),
      facets_(std::move(facets)),
      n_(distinguishable_count),
      policy_(policy) {
  if (extreme_points.empty()) throw ValidationError("theory needs extreme points");
  // Canonical vertex ordering: lexicographic on coordinates.
  std::sort(extreme_points.begin(), extreme_points.end(), lex_less);
  for (std::size_t i = 1; i < extreme_points.size(); ++i)
    if (extreme_points[i] == extreme_points[i - 1])
      throw ValidationError("duplicate extreme point");
  for (auto& v : extreme_points) extreme_points_.push_back(State(std::move(v), *this));

  // Affine dimension and a spanning basis of extreme points.
  const std::size_t d = total_dim();
  {
    RMat diffs(extreme_points_.size() > 0 ? extreme_points_.size() - 1 : 0, d);
    for (std::size_t i = 1; i < extreme_points_.size(); ++i) {
      RVec delta = vec_sub(extreme_points_[i].coords(), extreme_points_[0].coords());
      for (std::size_t c = 0; c < d; ++c) diffs.at(i - 1, c) = delta[c];
    }
    affine_dim_ = rank(diffs);
  }
  // Greedy linearly independent subset of vertices.
  std::vector<RVec> picked;
  for (std::size_t i = 0; i < extreme_points_.size(); ++i) {
    picked.push_back(extreme_points_[i].coords());
    if (rank(RMat::from_rows(picked)) == picked.size()) {
      span_basis_.push_back(i);
    } else {
      picked.pop_back();
    }
    if (picked.size() == affine_dim_ + 1) break;
  }
  if (span_basis_.size() != affine_dim_ + 1)
    throw ValidationError("failed to find a state-space spanning basis");

  validate_vreps_hreps();
}

bool Theory::membership(const RVec& v) const {
  if (v.size() != total_dim()) throw LayoutError("membership: dimension mismatch");
  for (std::size_t j = 0; j < layout_.blocks().size(); ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < layout_.blocks()[j].outcomes(); ++i) {
      const Rational& p = v[layout_.block_offset(j) + i];
      if (p < 0 || p > 1) return false;
      sum += p;
    }
    if (sum != 1) return false;
  }
  for (const Facet& f : facets_) {
    if (dot(f.covector, v) > f.bound) return false;
  }
  return true;
}

void Theory::validate_vreps_hreps() const {
  const std::size_t d = total_dim();
  // Every extreme point satisfies every facet; every facet is tight at
  // >= affine_dim extreme points.
  for (const Facet& f : facets_) {
    std::size_t tight = 0;
    for (const State& v : extreme_points_) {
      Rational lhs = dot(f.covector, v.coords());
      if (lhs > f.bound) throw ValidationError("extreme point violates a facet");
      if (lhs == f.bound) ++tight;
    }
    if (tight < affine_dim_)
      throw ValidationError("facet tight at fewer than affine-dim extreme points");
  }
  // Each vertex must be extreme: the constraints active at it (tight facets,
  // block normalizations, tight coordinate bounds) pin it down uniquely.
  for (const State& v : extreme_points_) {
    std::vector<RVec> active;
    for (std::size_t j = 0; j < layout_.blocks().size(); ++j) {
      RVec u(d, 0);
      for (std::size_t i = 0; i < layout_.blocks()[j].outcomes(); ++i)
        u[layout_.block_offset(j) + i] = 1;
      active.push_back(u);
    }
    for (const Facet& f : facets_)
      if (dot(f.covector, v.coords()) == f.bound) active.push_back(f.covector);
    for (std::size_t c = 0; c < d; ++c) {
      if (v[c] == 0 || v[c] == 1) {
        RVec u(d, 0);
        u[c] = 1;
        active.push_back(u);
      }
    }
    if (rank(RMat::from_rows(active)) != d)
      throw ValidationError("listed point is not a vertex of the H-rep");
  }
  // Cross-check: enumerate H-rep vertices by intersecting facet subsets and
  // require each to be listed. Skip when the facet count is large enough to
  // make subset enumeration pointless (all built-ins are tiny).
  // Equality systems: block normalizations always active.
  std::vector<RVec> eqs;
  std::vector<Rational> eq_rhs;
  for (std::size_t j = 0; j < layout_.blocks().size(); ++j) {
    RVec u(d, 0);
    for (std::size_t i = 0; i < layout_.blocks()[j].outcomes(); ++i)
      u[layout_.block_offset(j) + i] = 1;
    eqs.push_back(u);
    eq_rhs.push_back(1);
  }
  // All inequality covectors: facets plus coordinate bounds.
  std::vector<RVec> ineq;
  std::vector<Rational> ineq_rhs;
  for (const Facet& f : facets_) {
    ineq.push_back(f.covector);
    ineq_rhs.push_back(f.bound);
  }
  for (std::size_t c = 0; c < d; ++c) {
    RVec lo(d, 0), hi(d, 0);
    lo[c] = -1;
    hi[c] = 1;
    ineq.push_back(lo);
    ineq_rhs.push_back(0);
    ineq.push_back(hi);
    ineq_rhs.push_back(1);
  }
  const std::size_t need = d - eqs.size();  // additional active constraints
  if (ineq.size() > 24 || need > 6) return;  // desk scale only
  std::vector<std::size_t> idx(need);
  // Enumerate all `need`-subsets of the inequalities.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == need) {
      std::vector<RVec> rows = eqs;
      RVec rhs;
      for (auto& r : eq_rhs) rhs.push_back(r);
      for (std::size_t k : idx) {
        rows.push_back(ineq[k]);
        rhs.push_back(ineq_rhs[k]);
      }
      RMat a = RMat::from_rows(rows);
      if (rank(a) != d) return;
      // Solve the square-rank system via least-structure: augment and eliminate.
      RMat aug(rows.size(), d + 1);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < d; ++c) aug.at(r, c) = rows[r][c];
        aug.at(r, d) = rhs[r];
      }
      // Gauss-Jordan on aug.
      std::size_t rr = 0;
      for (std::size_t c = 0; c < d && rr < rows.size(); ++c) {
        std::size_t pivot = rr;
        while (pivot < rows.size() && aug.at(pivot, c) == 0) ++pivot;
        if (pivot == rows.size()) continue;
        for (std::size_t j = 0; j <= d; ++j) std::swap(aug.at(rr, j), aug.at(pivot, j));
        Rational p = aug.at(rr, c);
        for (std::size_t j = 0; j <= d; ++j) aug.at(rr, j) /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (i == rr || aug.at(i, c) == 0) continue;
          Rational f = aug.at(i, c);
          for (std::size_t j = 0; j <= d; ++j) aug.at(i, j) -= f * aug.at(rr, j);
        }
        ++rr;
      }
      // Inconsistent system?
      for (std::size_t r = 0; r < rows.size(); ++r) {
        bool zero = true;
        for (std::size_t c = 0; c < d; ++c)
          if (aug.at(r, c) != 0) zero = false;
        if (zero && aug.at(r, d) != 0) return;
      }
      RVec x(d, 0);
      rr = 0;
      for (std::size_t c = 0; c < d; ++c) {
        if (rr < rows.size() && aug.at(rr, c) == 1) {
          bool pivot_col = true;
          for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rr && aug.at(i, c) != 0) pivot_col = false;
          if (pivot_col) {
            x[c] = aug.at(rr, d);
            ++rr;
          }
        }
      }
      if (!membership(x)) return;
      bool listed = false;
      for (const State& v : extreme_points_)
        if (v.coords() == x) listed = true;
      if (!listed)
        throw ValidationError("H-rep vertex not present in the V-rep");
    } else {
      for (std::size_t k = start; k < ineq.size(); ++k) {
        idx[pos] = k;
        rec(pos + 1, k + 1);
      }
    }
  };
  rec(0, 0);
}

Measurement Theory::fiducial_measurement(std::size_t j) const {
  const Block& b = layout_.blocks()[j];
  std::vector<Effect> effects;
  for (std::size_t i = 0; i < b.outcomes(); ++i) {
    RVec e(total_dim(), 0);
    e[layout_.block_offset(j) + i] = 1;
    effects.push_back(make_effect(std::move(e)));
  }
  return Measurement(b.label, std::move(effects), *this);
}

void Theory::register_measurement(Measurement m) {
  measurements_.push_back(std::move(m));
}

const Measurement& Theory::measurement(const std::string& label) const {
  for (const Measurement& m : measurements_)
    if (m.label() == label) return m;
  throw ValidationError("unknown measurement '" + label + "' for theory " + name_);
}

bool Theory::has_measurement(const std::string& label) const {
  for (const Measurement& m : measurements_)
    if (m.label() == label) return true;
  return false;
}

void Theory::set_explicit_group(std::vector<std::pair<std::string, Transform>> elements) {
  explicit_group_ = std::move(elements);
}

Transform Theory::validate_transform(const RMat& matrix) const {
  if (matrix.rows() != total_dim() || matrix.cols() != total_dim())
    throw LayoutError("transform dimension does not match layout");
  std::set<std::size_t> image;
  bool bijective = true;
  for (const State& v : extreme_points_) {
    RVec w = matrix * v.coords();
    if (!membership(w))
      throw ValidationError("transform maps an extreme point outside the state space");
    auto idx = vertex_index(w);
    if (!idx || !image.insert(*idx).second) bijective = false;
  }
  return Transform(matrix, bijective && image.size() == extreme_points_.size());
}

std::optional<std::size_t> Theory::vertex_index(const RVec& v) const {
  for (std::size_t i = 0; i < extreme_points_.size(); ++i)
    if (extreme_points_[i].coords() == v) return i;
  return std::nullopt;
}

bool Theory::same_action(const RMat& a, const RMat& b) const {
  for (std::size_t i : span_basis_) {
    if (a * extreme_points_[i].coords() != b * extreme_points_[i].coords()) return false;
  }
  return true;
}

Rational apply_effect(const Effect& e, const State& s) {
  if (e.dim() != s.dim()) throw LayoutError("effect/state dimension mismatch");
  return dot(e.coords(), s.coords());
}

State apply_transform(const Transform& t, const State& s, const Theory& theory) {
  RVec out = t.matrix() * s.coords();
  if (!theory.membership(out))
    throw ValidationError("transform output violates the H-rep (transform not valid for this theory)");
  return theory.make_state(std::move(out));
}

Transform compose(const Transform& a, const Transform& b) {
  if (a.dim() != b.dim()) throw LayoutError("compose: dimension mismatch");
  return Transform(a.matrix() * b.matrix(), a.reversible() && b.reversible());
}

}  // namespace gpt
