#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpt/core.hpp"

namespace gpt {

/// A group element is a validated reversible transform together with the
/// permutation it induces on the theory's extreme points. The permutation
/// determines the action on the affine hull, so it also serves as the
/// equality and composition key.
struct GroupElement {
  Transform transform;
  std::vector<std::size_t> vertex_perm;
  std::string label;  // optional, e.g. Spekkens permutation words
};

struct GroupSignature {
  std::size_t order = 0;
  bool abelian = true;
  std::vector<std::size_t> element_orders;  // sorted multiset

  bool operator==(const GroupSignature&) const = default;
};

class Group {
 public:
  /// Verifies group axioms exhaustively (closure, identity, unique inverses)
  /// and recomputes the signature from the elements.
  Group(std::vector<GroupElement> elements, const Theory& theory);

  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t order() const { return signature_.order; }
  const GroupSignature& signature() const { return signature_; }
  bool abelian() const { return signature_.abelian; }
  const std::vector<std::size_t>& generators() const { return generators_; }

  std::optional<std::size_t> find(const std::vector<std::size_t>& vertex_perm) const;
  std::size_t compose_index(std::size_t a, std::size_t b) const;
  std::size_t inverse_index(std::size_t a) const;

  std::vector<std::vector<std::size_t>> multiplication_table() const;

 private:
  std::vector<GroupElement> elements_;
  GroupSignature signature_;
  std::vector<std::size_t> generators_;
};

struct GroupName {
  std::string label;           // trivial, C2, Z2xZ2, S3, D4_order8, S4, B3_order48,
                               // B4_order384, other(order)
  std::size_t order = 0;

  std::string to_string() const;
};

/// All invertible linear maps of the stacked-probability space that permute
/// the extreme-point set and preserve every block normalization functional.
/// Honors the theory's transform policy (explicit groups are returned
/// verbatim after closure validation; exclude_reflections applies the
/// orientation filter).
Group automorphism_group(const Theory& theory);

/// Same, with an explicit node budget for the permutation search
/// (default comes from GPT_SEARCH_BUDGET or 10^7).
Group automorphism_group(const Theory& theory, std::uint64_t node_budget);

std::uint64_t default_search_budget();

/// Elements whose induced map on the affine hull has positive determinant.
Group orientation_subgroup(const Group& g, const Theory& theory);

/// Signature-table identification with an isomorphism-search fallback for
/// ambiguous signatures. Orders above 1024 report other(order).
GroupName identify(const Group& g);

/// Identification on an abstract closed permutation set (used for the
/// reference table and for tests).
GroupName identify_permutation_group(const std::vector<std::vector<std::size_t>>& perms);

/// Backtracking isomorphism test on multiplication tables.
bool tables_isomorphic(const std::vector<std::vector<std::size_t>>& a,
                       const std::vector<std::vector<std::size_t>>& b);

/// Unique linear extension of a vertex permutation: acts as the permutation
/// on the linear span of the state space and as the identity on a
/// complementary subspace. Throws if the permutation is not realizable
/// linearly.
RMat linear_extension(const Theory& theory, const std::vector<std::size_t>& vertex_perm);

/// Sign of det of the induced map on the affine hull (+1/-1); 0 if singular.
int affine_orientation(const Theory& theory, const RMat& matrix);

}  // namespace gpt
