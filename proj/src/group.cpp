#include "gpt/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace gpt {

namespace {

std::vector<std::size_t> compose_perm(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
  // (a . b)(i) = a(b(i))
  std::vector<std::size_t> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

std::size_t perm_order(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> cur(p.size());
  std::iota(cur.begin(), cur.end(), 0);
  cur = p;
  std::size_t k = 1;
  std::vector<std::size_t> id(p.size());
  std::iota(id.begin(), id.end(), 0);
  while (cur != id) {
    cur = compose_perm(p, cur);
    ++k;
  }
  return k;
}

bool is_identity_perm(const std::vector<std::size_t>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

}  // namespace

RMat linear_extension(const Theory& theory, const std::vector<std::size_t>& vertex_perm) {
  const std::size_t d = theory.total_dim();
  const auto& basis = theory.span_basis();
  const std::size_t r = basis.size();
  RMat b(d, r), b_img(d, r);
  for (std::size_t k = 0; k < r; ++k) {
    const RVec& src = theory.extreme_points()[basis[k]].coords();
    const RVec& dst = theory.extreme_points()[vertex_perm[basis[k]]].coords();
    for (std::size_t c = 0; c < d; ++c) {
      b.at(c, k) = src[c];
      b_img.at(c, k) = dst[c];
    }
  }
  RMat bt = b.transposed();
  RMat gram_inv = inverse(bt * b);
  // Acts as the permutation on span(B), as the identity on the complement.
  RMat t = RMat::identity(d) + (b_img - b) * gram_inv * bt;
  for (std::size_t i = 0; i < theory.extreme_points().size(); ++i) {
    if (t * theory.extreme_points()[i].coords() !=
        theory.extreme_points()[vertex_perm[i]].coords())
      throw ValidationError("vertex permutation has no linear realization");
  }
  return t;
}

int affine_orientation(const Theory& theory, const RMat& matrix) {
  const auto& basis = theory.span_basis();
  const std::size_t a = theory.affine_dim();
  const std::size_t d = theory.total_dim();
  const RVec& v0 = theory.extreme_points()[basis[0]].coords();
  RVec w0 = matrix * v0;
  RMat e(d, a), dm(d, a);
  for (std::size_t k = 0; k < a; ++k) {
    RVec ek = vec_sub(theory.extreme_points()[basis[k + 1]].coords(), v0);
    RVec dk = vec_sub(matrix * theory.extreme_points()[basis[k + 1]].coords(), w0);
    for (std::size_t c = 0; c < d; ++c) {
      e.at(c, k) = ek[c];
      dm.at(c, k) = dk[c];
    }
  }
  RMat et = e.transposed();
  RMat x = inverse(et * e) * (et * dm);
  Rational det = determinant(x);
  if (det > 0) return 1;
  if (det < 0) return -1;
  return 0;
}

Group::Group(std::vector<GroupElement> elements, const Theory& theory) {
  if (elements.empty()) throw ValidationError("empty element list");
  // Deduplicate by action (vertex permutation) and sort deterministically.
  std::sort(elements.begin(), elements.end(),
            [](const GroupElement& a, const GroupElement& b) {
              return a.vertex_perm < b.vertex_perm;
            });
  elements.erase(std::unique(elements.begin(), elements.end(),
                             [](const GroupElement& a, const GroupElement& b) {
                               return a.vertex_perm == b.vertex_perm;
                             }),
                 elements.end());
  // Identity first.
  auto id_it = std::find_if(elements.begin(), elements.end(), [](const GroupElement& e) {
    return is_identity_perm(e.vertex_perm);
  });
  if (id_it == elements.end()) throw ValidationError("group is missing the identity");
  std::rotate(elements.begin(), id_it, id_it + 1);
  elements_ = std::move(elements);

  // Closure and unique inverses, checked exhaustively.
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t inverse_count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      auto prod = compose_perm(elements_[i].vertex_perm, elements_[j].vertex_perm);
      auto idx = find(prod);
      if (!idx) throw ValidationError("element set is not closed under composition");
      if (is_identity_perm(prod)) ++inverse_count;
    }
    if (inverse_count != 1) throw ValidationError("element lacks a unique inverse");
  }

  // Signature, recomputed from the elements.
  signature_.order = n;
  for (const GroupElement& e : elements_)
    signature_.element_orders.push_back(perm_order(e.vertex_perm));
  std::sort(signature_.element_orders.begin(), signature_.element_orders.end());
  signature_.abelian = true;
  for (std::size_t i = 0; i < n && signature_.abelian; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (compose_perm(elements_[i].vertex_perm, elements_[j].vertex_perm) !=
          compose_perm(elements_[j].vertex_perm, elements_[i].vertex_perm)) {
        signature_.abelian = false;
        break;
      }
    }

  // Greedy generating subset.
  std::set<std::vector<std::size_t>> generated;
  generated.insert(elements_[0].vertex_perm);
  while (generated.size() < n) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (!generated.count(elements_[i].vertex_perm)) {
        pick = i;
        break;
      }
    }
    generators_.push_back(pick);
    // Re-close.
    generated.clear();
    std::vector<std::size_t> id(elements_[0].vertex_perm.size());
    std::iota(id.begin(), id.end(), 0);
    generated.insert(id);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<std::size_t>> snapshot(generated.begin(), generated.end());
      for (const auto& x : snapshot)
        for (std::size_t gi : generators_) {
          auto y = compose_perm(x, elements_[gi].vertex_perm);
          if (generated.insert(y).second) grew = true;
        }
    }
  }
  (void)theory;
}

std::optional<std::size_t> Group::find(const std::vector<std::size_t>& vertex_perm) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), vertex_perm,
                             [](const GroupElement& e, const std::vector<std::size_t>& p) {
                               return e.vertex_perm < p;
                             });
  // elements_ are sorted except the identity was rotated to the front; fall
  // back to a linear scan when the binary probe misses.
  if (it != elements_.end() && it->vertex_perm == vertex_perm)
    return static_cast<std::size_t>(it - elements_.begin());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].vertex_perm == vertex_perm) return i;
  return std::nullopt;
}

std::size_t Group::compose_index(std::size_t a, std::size_t b) const {
  auto idx = find(compose_perm(elements_[a].vertex_perm, elements_[b].vertex_perm));
  if (!idx) throw ValidationError("composition escaped the group");
  return *idx;
}

std::size_t Group::inverse_index(std::size_t a) const {
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    if (is_identity_perm(compose_perm(elements_[a].vertex_perm, elements_[j].vertex_perm)))
      return j;
  }
  throw ValidationError("element has no inverse in the group");
}

std::vector<std::vector<std::size_t>> Group::multiplication_table() const {
  const std::size_t n = elements_.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = compose_index(i, j);
  return table;
}

std::string GroupName::to_string() const {
  if (label == "other") return "other(" + std::to_string(order) + ")";
  return label;
}

std::uint64_t default_search_budget() {
  if (const char* env = std::getenv("GPT_SEARCH_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ull;
}

namespace {

// Facet-incidence invariants: per-vertex tight-facet sets and the pairwise
// shared-facet counts. Combinatorial, not metric: linear automorphisms need
// not be isometries in probability coordinates.
struct Incidence {
  std::vector<std::vector<std::size_t>> tight;   // facet indices per vertex
  std::vector<std::vector<std::size_t>> shared;  // |F_i cap F_j|
};

Incidence incidence_profile(const Theory& theory) {
  Incidence inc;
  const auto& verts = theory.extreme_points();
  inc.tight.resize(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t f = 0; f < theory.facets().size(); ++f) {
      if (dot(theory.facets()[f].covector, verts[i].coords()) == theory.facets()[f].bound)
        inc.tight[i].push_back(f);
    }
  }
  inc.shared.assign(verts.size(), std::vector<std::size_t>(verts.size(), 0));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = 0; j < verts.size(); ++j) {
      std::vector<std::size_t> common;
      std::set_intersection(inc.tight[i].begin(), inc.tight[i].end(), inc.tight[j].begin(),
                            inc.tight[j].end(), std::back_inserter(common));
      inc.shared[i][j] = common.size();
    }
  return inc;
}

void search_vertex_permutations(const Theory& theory, const Incidence& inc,
                                std::uint64_t budget,
                                std::vector<GroupElement>& out) {
  const std::size_t v = theory.extreme_points().size();
  std::vector<std::size_t> image(v, 0);
  std::vector<bool> used(v, false);
  std::uint64_t nodes = 0;

  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (++nodes > budget)
      throw BudgetError("automorphism search budget exceeded (" + std::to_string(budget) +
                        " nodes)");
    if (k == v) {
      try {
        RMat m = linear_extension(theory, image);
        Transform t = theory.validate_transform(m);
        if (!t.reversible())
          throw ValidationError("candidate automorphism is not a vertex bijection");
        out.push_back(GroupElement{std::move(t), image, ""});
      } catch (const ValidationError&) {
        // combinatorial symmetry without a linear realization: skip
      }
      return;
    }
    for (std::size_t w = 0; w < v; ++w) {
      if (used[w]) continue;
      if (inc.tight[w].size() != inc.tight[k].size()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i)
        if (inc.shared[i][k] != inc.shared[image[i]][w]) ok = false;
      if (!ok) continue;
      image[k] = w;
      used[w] = true;
      rec(k + 1);
      used[w] = false;
    }
  };
  rec(0);
}

}  // namespace

Group automorphism_group(const Theory& theory) {
  return automorphism_group(theory, default_search_budget());
}

Group automorphism_group(const Theory& theory, std::uint64_t node_budget) {
  if (theory.transform_policy() == TransformPolicy::explicit_group) {
    std::vector<GroupElement> elements;
    for (const auto& [label, t] : theory.explicit_group()) {
      std::vector<std::size_t> perm(theory.extreme_points().size());
      for (std::size_t i = 0; i < perm.size(); ++i) {
        auto idx = theory.vertex_index(t.matrix() * theory.extreme_points()[i].coords());
        if (!idx) throw ValidationError("explicit group element is not a vertex bijection");
        perm[i] = *idx;
      }
      elements.push_back(GroupElement{t, std::move(perm), label});
    }
    return Group(std::move(elements), theory);
  }

  Incidence inc = incidence_profile(theory);
  std::vector<GroupElement> elements;
  search_vertex_permutations(theory, inc, node_budget, elements);
  Group full(std::move(elements), theory);
  if (theory.transform_policy() == TransformPolicy::exclude_reflections)
    return orientation_subgroup(full, theory);
  return full;
}

Group orientation_subgroup(const Group& g, const Theory& theory) {
  std::vector<GroupElement> kept;
  for (const GroupElement& e : g.elements()) {
    if (affine_orientation(theory, e.transform.matrix()) > 0) kept.push_back(e);
  }
  return Group(std::move(kept), theory);
}

// -- identification ---------------------------------------------------------

namespace {

std::vector<std::vector<std::size_t>> close_perms(
    std::vector<std::vector<std::size_t>> gens, std::size_t npoints) {
  std::set<std::vector<std::size_t>> all;
  std::vector<std::size_t> id(npoints);
  std::iota(id.begin(), id.end(), 0);
  all.insert(id);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<std::size_t>> snapshot(all.begin(), all.end());
    for (const auto& x : snapshot)
      for (const auto& g : gens)
        if (all.insert(compose_perm(x, g)).second) grew = true;
  }
  return {all.begin(), all.end()};
}

GroupSignature perm_set_signature(const std::vector<std::vector<std::size_t>>& perms) {
  GroupSignature sig;
  sig.order = perms.size();
  for (const auto& p : perms) sig.element_orders.push_back(perm_order(p));
  std::sort(sig.element_orders.begin(), sig.element_orders.end());
  sig.abelian = true;
  for (std::size_t i = 0; i < perms.size() && sig.abelian; ++i)
    for (std::size_t j = i + 1; j < perms.size(); ++j)
      if (compose_perm(perms[i], perms[j]) != compose_perm(perms[j], perms[i])) {
        sig.abelian = false;
        break;
      }
  return sig;
}

std::vector<std::vector<std::size_t>> perm_set_table(
    const std::vector<std::vector<std::size_t>>& perms) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  std::vector<std::vector<std::size_t>> table(perms.size(),
                                              std::vector<std::size_t>(perms.size()));
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = 0; j < perms.size(); ++j)
      table[i][j] = index.at(compose_perm(perms[i], perms[j]));
  return table;
}

// Hyperoctahedral group of rank r as permutations of the 2r points
// (axis, sign).
std::vector<std::vector<std::size_t>> hyperoctahedral_perms(std::size_t r) {
  std::vector<std::vector<std::size_t>> gens;
  std::size_t n = 2 * r;
  {
    std::vector<std::size_t> swap01(n);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[2]);
    std::swap(swap01[1], swap01[3]);
    gens.push_back(swap01);
  }
  {
    std::vector<std::size_t> cyc(n);
    for (std::size_t a = 0; a < r; ++a) {
      cyc[2 * a] = 2 * ((a + 1) % r);
      cyc[2 * a + 1] = 2 * ((a + 1) % r) + 1;
    }
    gens.push_back(cyc);
  }
  {
    std::vector<std::size_t> flip0(n);
    std::iota(flip0.begin(), flip0.end(), 0);
    std::swap(flip0[0], flip0[1]);
    gens.push_back(flip0);
  }
  return close_perms(gens, n);
}

struct ReferenceEntry {
  std::string label;
  GroupSignature signature;
  std::vector<std::vector<std::size_t>> table;
};

const std::vector<ReferenceEntry>& reference_table() {
  static const std::vector<ReferenceEntry> table = [] {
    std::vector<ReferenceEntry> t;
    auto add = [&t](const std::string& label,
                    const std::vector<std::vector<std::size_t>>& perms) {
      t.push_back({label, perm_set_signature(perms), perm_set_table(perms)});
    };
    add("trivial", close_perms({}, 1));
    add("C2", close_perms({{1, 0}}, 2));
    add("Z2xZ2", close_perms({{1, 0, 2, 3}, {0, 1, 3, 2}}, 4));
    add("S3", close_perms({{1, 0, 2}, {1, 2, 0}}, 3));
    add("D4_order8", close_perms({{1, 2, 3, 0}, {0, 3, 2, 1}}, 4));
    add("S4", close_perms({{1, 0, 2, 3}, {1, 2, 3, 0}}, 4));
    add("B3_order48", hyperoctahedral_perms(3));
    add("B4_order384", hyperoctahedral_perms(4));
    return t;
  }();
  return table;
}

GroupName identify_from(const GroupSignature& sig,
                        const std::function<std::vector<std::vector<std::size_t>>()>& table_fn) {
  if (sig.order > 1024) return {"other", sig.order};
  std::vector<const ReferenceEntry*> sig_matches;
  for (const auto& entry : reference_table())
    if (entry.signature == sig) sig_matches.push_back(&entry);
  if (sig_matches.empty()) return {"other", sig.order};
  if (sig_matches.size() == 1) return {sig_matches[0]->label, sig.order};
  // Ambiguous signature: fall back to an explicit isomorphism search.
  auto table = table_fn();
  for (const auto* entry : sig_matches)
    if (tables_isomorphic(table, entry->table)) return {entry->label, sig.order};
  return {"other", sig.order};
}

}  // namespace

GroupName identify(const Group& g) {
  return identify_from(g.signature(), [&g] { return g.multiplication_table(); });
}

GroupName identify_permutation_group(const std::vector<std::vector<std::size_t>>& perms) {
  return identify_from(perm_set_signature(perms), [&perms] { return perm_set_table(perms); });
}

bool tables_isomorphic(const std::vector<std::vector<std::size_t>>& a,
                       const std::vector<std::vector<std::size_t>>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return false;

  auto element_orders = [n](const std::vector<std::vector<std::size_t>>& t,
                            std::size_t identity) {
    std::vector<std::size_t> orders(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t x = i, k = 1;
      while (x != identity) {
        x = t[x][i];
        ++k;
      }
      orders[i] = k;
    }
    return orders;
  };
  auto find_identity = [n](const std::vector<std::vector<std::size_t>>& t) {
    for (std::size_t e = 0; e < n; ++e) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        if (t[e][i] != i || t[i][e] != i) ok = false;
      if (ok) return e;
    }
    throw ValidationError("table has no identity");
  };
  std::size_t ea = find_identity(a), eb = find_identity(b);
  auto orders_a = element_orders(a, ea), orders_b = element_orders(b, eb);
  {
    auto sa = orders_a, sb = orders_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  // Generating sequence for a.
  std::vector<std::size_t> gens;
  {
    std::set<std::size_t> generated{ea};
    auto regen = [&] {
      generated = {ea};
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<std::size_t> snapshot(generated.begin(), generated.end());
        for (std::size_t x : snapshot)
          for (std::size_t g : gens)
            if (generated.insert(a[x][g]).second) grew = true;
      }
    };
    while (generated.size() < n) {
      for (std::size_t i = 0; i < n; ++i)
        if (!generated.count(i)) {
          gens.push_back(i);
          break;
        }
      regen();
    }
  }

  // Backtrack over generator images; extend by closure each time.
  std::vector<std::size_t> images(gens.size(), 0);
  std::function<bool(std::size_t)> try_gen = [&](std::size_t gi) -> bool {
    if (gi == gens.size()) {
      // Extend to a full map.
      std::vector<std::size_t> phi(n, n);
      phi[ea] = eb;
      std::vector<std::size_t> frontier{ea};
      while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t x : frontier)
          for (std::size_t k = 0; k < gens.size(); ++k) {
            std::size_t y = a[x][gens[k]];
            std::size_t fy = b[phi[x]][images[k]];
            if (phi[y] == n) {
              phi[y] = fy;
              next.push_back(y);
            } else if (phi[y] != fy) {
              return false;
            }
          }
        frontier = std::move(next);
      }
      std::vector<bool> hit(n, false);
      for (std::size_t x = 0; x < n; ++x) {
        if (phi[x] == n || hit[phi[x]]) return false;
        hit[phi[x]] = true;
      }
      // Homomorphism check.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (phi[a[i][j]] != b[phi[i]][phi[j]]) return false;
      return true;
    }
    for (std::size_t cand = 0; cand < n; ++cand) {
      if (orders_b[cand] != orders_a[gens[gi]]) continue;
      images[gi] = cand;
      if (try_gen(gi + 1)) return true;
    }
    return false;
  };
  return try_gen(0);
}

}  // namespace gpt
