#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpt/rational.hpp"

namespace gpt {

/// One fiducial measurement block: a label plus named outcomes.
struct Block {
  std::string label;
  std::vector<std::string> outcome_labels;

  std::size_t outcomes() const { return outcome_labels.size(); }
};

/// The stacked-probability coordinate system: an ordered list of fiducial
/// blocks. Coordinate k belongs to exactly one (block, outcome) pair.
class MeasurementLayout {
 public:
  MeasurementLayout() = default;
  explicit MeasurementLayout(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t block_offset(std::size_t j) const { return offsets_[j]; }

  // (block index, outcome index) of a flat coordinate.
  std::pair<std::size_t, std::size_t> locate(std::size_t coord) const;
  std::string coord_label(std::size_t coord) const;

  std::optional<std::size_t> block_index(const std::string& label) const;

  bool operator==(const MeasurementLayout& other) const;

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
};

class Theory;

/// A normalized stacked-probability vector, validated eagerly against its
/// owning theory's H-rep at construction.
class State {
 public:
  State(RVec coords, const Theory& theory);

  const RVec& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t dim() const { return coords_.size(); }

  bool operator==(const State& other) const { return coords_ == other.coords_; }

 private:
  RVec coords_;
};

/// An outcome functional. Validated against a specific theory: must land in
/// [0,1] on every extreme point (sufficient on the whole polytope by
/// convexity).
class Effect {
 public:
  Effect(RVec coords, const Theory& theory);

  const RVec& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }

  bool operator==(const Effect& other) const { return coords_ == other.coords_; }

 private:
  RVec coords_;
};

class Measurement {
 public:
  Measurement(std::string label, std::vector<Effect> effects, const Theory& theory);

  const std::string& label() const { return label_; }
  const std::vector<Effect>& effects() const { return effects_; }

 private:
  std::string label_;
  std::vector<Effect> effects_;
};

/// Linear map on the stacked-probability space. Validated transforms map
/// every extreme point back into the state space; the reversible flag is set
/// iff the extreme-point set is permuted bijectively.
class Transform {
 public:
  Transform(RMat matrix, bool reversible)
      : matrix_(std::move(matrix)), reversible_(reversible) {}

  const RMat& matrix() const { return matrix_; }
  bool reversible() const { return reversible_; }

  std::size_t dim() const { return matrix_.rows(); }

 private:
  RMat matrix_;
  bool reversible_;
};

/// Facet inequality covector . x <= bound.
struct Facet {
  RVec covector;
  Rational bound;
};

enum class TransformPolicy { all_automorphisms, exclude_reflections, explicit_group };

std::string to_string(TransformPolicy p);
TransformPolicy transform_policy_from_string(const std::string& s);

/// Polytope theory: layout, V-rep, H-rep, distinguishable count N, and the
/// allowed-transform policy. V/H consistency is verified exhaustively at
/// construction (desk-scale polytopes only).
class Theory {
 public:
  Theory(std::string name, MeasurementLayout layout, std::vector<RVec> extreme_points,
         std::vector<Facet> facets, std::size_t distinguishable_count,
         TransformPolicy policy);

  const std::string& name() const { return name_; }
  const MeasurementLayout& layout() const { return layout_; }
  const std::vector<State>& extreme_points() const { return extreme_points_; }
  const std::vector<Facet>& facets() const { return facets_; }
  std::size_t distinguishable_count() const { return n_; }
  TransformPolicy transform_policy() const { return policy_; }

  std::size_t total_dim() const { return layout_.total_dim(); }
  std::size_t affine_dim() const { return affine_dim_; }

  /// Exact H-rep membership: block normalization, [0,1] bounds, facets.
  bool membership(const RVec& v) const;

  State make_state(RVec coords) const { return State(std::move(coords), *this); }
  Effect make_effect(RVec coords) const { return Effect(std::move(coords), *this); }

  /// One-hot effects of fiducial block j.
  Measurement fiducial_measurement(std::size_t j) const;

  void register_measurement(Measurement m);
  const std::vector<Measurement>& measurements() const { return measurements_; }
  const Measurement& measurement(const std::string& label) const;
  bool has_measurement(const std::string& label) const;

  /// Only meaningful for explicit_group theories (Spekkens): the allowed
  /// transforms with their labels.
  void set_explicit_group(std::vector<std::pair<std::string, Transform>> elements);
  const std::vector<std::pair<std::string, Transform>>& explicit_group() const {
    return explicit_group_;
  }

  /// Checks that T maps every extreme point into the state space; returns the
  /// transform tagged reversible iff it permutes the extreme points.
  Transform validate_transform(const RMat& matrix) const;

  /// Index of an extreme point equal to v, if any.
  std::optional<std::size_t> vertex_index(const RVec& v) const;

  /// Linearly independent extreme points spanning the linear span of the
  /// state space (dimension affine_dim + 1).
  const std::vector<std::size_t>& span_basis() const { return span_basis_; }

  /// Do two matrices act identically on the state space?
  bool same_action(const RMat& a, const RMat& b) const;

 private:
  void validate_vreps_hreps() const;

  std::string name_;
  MeasurementLayout layout_;
  std::vector<State> extreme_points_;
  std::vector<Facet> facets_;
  std::size_t n_;
  TransformPolicy policy_;
  std::size_t affine_dim_ = 0;
  std::vector<std::size_t> span_basis_;
  std::vector<Measurement> measurements_;
  std::vector<std::pair<std::string, Transform>> explicit_group_;
};

// -- Operations ------------------------------------------------------------

Rational apply_effect(const Effect& e, const State& s);

State apply_transform(const Transform& t, const State& s, const Theory& theory);

Transform compose(const Transform& a, const Transform& b);

}  // namespace gpt
