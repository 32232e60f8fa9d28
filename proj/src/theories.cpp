#include "gpt/theories.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "gpt/group.hpp"

namespace gpt {

namespace {

std::vector<std::string> binary_outcomes() { return {"+1", "-1"}; }

std::vector<std::string> numbered_outcomes(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<Facet> nonnegativity_facets(std::size_t dim) {
  std::vector<Facet> facets;
  for (std::size_t c = 0; c < dim; ++c) {
    RVec cov(dim, 0);
    cov[c] = -1;
    facets.push_back({std::move(cov), 0});
  }
  return facets;
}

RVec one_hot(std::size_t dim, std::size_t idx, const Rational& value = 1) {
  RVec v(dim, 0);
  v[idx] = value;
  return v;
}

void register_diagonal_and_unit(Theory& t, std::size_t m, std::size_t n) {
  const std::size_t dim = t.total_dim();
  std::vector<Effect> diag;
  for (std::size_t i = 0; i < n; ++i) {
    RVec e(dim, 0);
    for (std::size_t j = 0; j < m; ++j) e[t.layout().block_offset(j) + i] = Rational(1, m);
    diag.push_back(t.make_effect(std::move(e)));
  }
  t.register_measurement(Measurement("diagonal", std::move(diag), t));

  RVec u(dim, Rational(1, m));
  std::vector<Effect> unit;
  unit.push_back(t.make_effect(std::move(u)));
  t.register_measurement(Measurement("unit", std::move(unit), t));
}

}  // namespace

std::shared_ptr<Theory> classical_dit(std::size_t n) {
  if (n < 2) throw ValidationError("classical_dit requires n >= 2");
  MeasurementLayout layout({Block{"M0", numbered_outcomes(n)}});
  std::vector<RVec> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back(one_hot(n, i));
  auto t = std::make_shared<Theory>("classical-" + std::to_string(n), layout,
                                    std::move(vertices), nonnegativity_facets(n), n,
                                    TransformPolicy::all_automorphisms);
  t->register_measurement(t->fiducial_measurement(0));
  if (n == 4) {
    // Two-bit reading of the four outcomes (00,01,10,11): parity measurement.
    RVec even(n, 0), odd(n, 0);
    even[0] = even[3] = 1;
    odd[1] = odd[2] = 1;
    std::vector<Effect> effects{t->make_effect(even), t->make_effect(odd)};
    t->register_measurement(Measurement("parity", std::move(effects), *t));
  }
  return t;
}

std::shared_ptr<Theory> gbit(std::size_t m, std::size_t n, std::size_t max_vertices) {
  if (m < 1 || n < 2) throw ValidationError("gbit requires m >= 1, n >= 2");
  double count = 1;
  for (std::size_t j = 0; j < m; ++j) count *= static_cast<double>(n);
  if (count > static_cast<double>(max_vertices))
    throw BudgetError("gbit(" + std::to_string(m) + "," + std::to_string(n) +
                      ") exceeds the vertex budget");

  std::vector<Block> blocks;
  if (m == 3 && n == 2) {
    blocks = {Block{"X", binary_outcomes()}, Block{"Y", binary_outcomes()},
              Block{"Z", binary_outcomes()}};
  } else {
    for (std::size_t j = 0; j < m; ++j)
      blocks.push_back(Block{"X" + std::to_string(j),
                             n == 2 ? binary_outcomes() : numbered_outcomes(n)});
  }
  MeasurementLayout layout(blocks);
  const std::size_t dim = layout.total_dim();

  std::vector<RVec> vertices;
  std::vector<std::size_t> assign(m, 0);
  while (true) {
    RVec v(dim, 0);
    for (std::size_t j = 0; j < m; ++j) v[layout.block_offset(j) + assign[j]] = 1;
    vertices.push_back(std::move(v));
    std::size_t j = 0;
    while (j < m && ++assign[j] == n) assign[j++] = 0;
    if (j == m) break;
  }

  auto t = std::make_shared<Theory>("gbit-" + std::to_string(m) + "-" + std::to_string(n),
                                    layout, std::move(vertices), nonnegativity_facets(dim),
                                    n, TransformPolicy::all_automorphisms);
  for (std::size_t j = 0; j < m; ++j) t->register_measurement(t->fiducial_measurement(j));
  register_diagonal_and_unit(*t, m, n);

  if (m == 3 && n == 2) {
    // Four half-weight effects on the X and Y blocks.
    std::vector<Effect> four;
    for (std::size_t c = 0; c < 4; ++c)
      four.push_back(t->make_effect(one_hot(dim, c, Rational(1, 2))));
    t->register_measurement(Measurement("foureffect", std::move(four), *t));
  }
  if (m == 4 && n == 2) {
    // Four half-weight effects covering the X3 and X2 blocks (in that order).
    std::vector<Effect> four;
    for (std::size_t c : {6, 7, 4, 5})
      four.push_back(t->make_effect(one_hot(dim, c, Rational(1, 2))));
    t->register_measurement(Measurement("foureffect", std::move(four), *t));
    // Six third-weight effects on blocks X0, X1, X3; only the X2 statistics
    // stay free.
    std::vector<Effect> six;
    for (std::size_t c : {0, 1, 2, 3, 6, 7})
      six.push_back(t->make_effect(one_hot(dim, c, Rational(1, 3))));
    t->register_measurement(Measurement("sixeffect", std::move(six), *t));
  }
  return t;
}

namespace {

const Rational kHalf(1, 2);

// Ontic tetrahedron corners in stacked-probability coordinates.
const std::array<std::array<int, 6>, 4> kOnticCorners = {{
    {1, 0, 1, 0, 1, 0},  // 1
    {0, 1, 0, 1, 1, 0},  // 2
    {1, 0, 0, 1, 0, 1},  // 3
    {0, 1, 1, 0, 0, 1},  // 4
}};

RVec ontic_vec(std::size_t i) {
  RVec v(6);
  for (std::size_t c = 0; c < 6; ++c) v[c] = kOnticCorners[i][c];
  return v;
}

RVec epistemic_midpoint(std::size_t i, std::size_t j) {
  return vec_scaled(vec_add(ontic_vec(i), ontic_vec(j)), kHalf);
}

// Octahedron facets: +-x +- y +- z <= 1 in expectation coordinates,
// rewritten on the six probability coordinates.
std::vector<Facet> octahedron_facets() {
  std::vector<Facet> facets;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        RVec cov(6);
        cov[0] = sx;
        cov[1] = -sx;
        cov[2] = sy;
        cov[3] = -sy;
        cov[4] = sz;
        cov[5] = -sz;
        facets.push_back({std::move(cov), 1});
      }
  return facets;
}

std::shared_ptr<Theory> make_octahedron(const std::string& name, TransformPolicy policy) {
  MeasurementLayout layout({Block{"X", binary_outcomes()}, Block{"Y", binary_outcomes()},
                            Block{"Z", binary_outcomes()}});
  std::vector<RVec> vertices;
  // Epistemic states: all midpoints of ontic pairs.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) vertices.push_back(epistemic_midpoint(i, j));
  auto t = std::make_shared<Theory>(name, layout, std::move(vertices), octahedron_facets(),
                                    2, policy);
  for (std::size_t j = 0; j < 3; ++j) t->register_measurement(t->fiducial_measurement(j));
  std::vector<Effect> diag;
  for (std::size_t i = 0; i < 2; ++i) {
    RVec e(6, 0);
    for (std::size_t j = 0; j < 3; ++j) e[2 * j + i] = Rational(1, 3);
    diag.push_back(t->make_effect(std::move(e)));
  }
  t->register_measurement(Measurement("diagonal", std::move(diag), *t));
  return t;
}

std::string perm_word(const std::array<std::size_t, 4>& g) {
  std::string w;
  for (std::size_t i : g) w += std::to_string(i + 1);
  return w;
}

}  // namespace

std::shared_ptr<Theory> octahedron_theory() {
  return make_octahedron("octahedron", TransformPolicy::all_automorphisms);
}

SpekkensBit::SpekkensBit() {
  base_ = make_octahedron("spekkens", TransformPolicy::explicit_group);
  for (std::size_t i = 0; i < 4; ++i) ontic_vertices_.push_back(ontic_vec(i));

  // The induced group: each ontic permutation g sends the epistemic state
  // (i v j) to (g(i) v g(j)); extend linearly via the unique action on the
  // affine hull.
  std::vector<std::pair<std::string, Transform>> elements;
  std::array<std::size_t, 4> g = {0, 1, 2, 3};
  do {
    std::vector<std::size_t> vperm(base_->extreme_points().size());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        RVec src = epistemic_midpoint(i, j);
        RVec dst = epistemic_midpoint(std::min(g[i], g[j]), std::max(g[i], g[j]));
        vperm[*base_->vertex_index(src)] = *base_->vertex_index(dst);
      }
    RMat m = linear_extension(*base_, vperm);
    elements.emplace_back(perm_word(g), base_->validate_transform(m));
  } while (std::next_permutation(g.begin(), g.end()));
  std::sort(elements.begin(), elements.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  base_->set_explicit_group(std::move(elements));
}

namespace {

// (basis, outcome) -> ontic pair, per the standard labelling.
std::pair<std::size_t, std::size_t> ontic_pair(SpekkensBasis basis, int outcome) {
  switch (basis) {
    case SpekkensBasis::X: return outcome > 0 ? std::pair<std::size_t, std::size_t>{0, 2}
                                              : std::pair<std::size_t, std::size_t>{1, 3};
    case SpekkensBasis::Y: return outcome > 0 ? std::pair<std::size_t, std::size_t>{0, 3}
                                              : std::pair<std::size_t, std::size_t>{1, 2};
    case SpekkensBasis::Z: return outcome > 0 ? std::pair<std::size_t, std::size_t>{0, 1}
                                              : std::pair<std::size_t, std::size_t>{2, 3};
  }
  throw ValidationError("bad basis");
}

std::size_t basis_block(SpekkensBasis basis) {
  switch (basis) {
    case SpekkensBasis::X: return 0;
    case SpekkensBasis::Y: return 1;
    case SpekkensBasis::Z: return 2;
  }
  throw ValidationError("bad basis");
}

}  // namespace

State SpekkensBit::epistemic_state(SpekkensBasis basis, int outcome) const {
  auto [i, j] = ontic_pair(basis, outcome);
  return base_->make_state(epistemic_midpoint(i, j));
}

std::pair<Rational, Rational> SpekkensBit::outcome_distribution(const State& s,
                                                                SpekkensBasis basis) const {
  std::size_t off = base_->layout().block_offset(basis_block(basis));
  return {s[off], s[off + 1]};
}

State SpekkensBit::measure_update(const State& s, SpekkensBasis basis, int outcome) const {
  auto [p_plus, p_minus] = outcome_distribution(s, basis);
  Rational p = outcome > 0 ? p_plus : p_minus;
  if (p == 0) throw ValidationError("measurement update for a zero-probability outcome");
  return epistemic_state(basis, outcome);
}

std::shared_ptr<SpekkensBit> spekkens_bit() { return std::make_shared<SpekkensBit>(); }

std::vector<std::string> standard_measurement_names(const Theory& theory) {
  std::vector<std::string> names;
  for (const Measurement& m : theory.measurements()) names.push_back(m.label());
  return names;
}

std::shared_ptr<Theory> built_in_theory(const std::string& name) {
  if (name == "spekkens") return spekkens_bit()->base();
  if (name == "octahedron") return octahedron_theory();
  if (name.rfind("classical-", 0) == 0) {
    return classical_dit(std::stoul(name.substr(10)));
  }
  if (name.rfind("gbit-", 0) == 0) {
    auto rest = name.substr(5);
    auto dash = rest.find('-');
    if (dash == std::string::npos) throw ParseError("bad gbit name '" + name + "'");
    return gbit(std::stoul(rest.substr(0, dash)), std::stoul(rest.substr(dash + 1)));
  }
  throw ParseError("unknown built-in theory '" + name + "'");
}

std::vector<std::string> built_in_theory_names() {
  return {"classical-2", "classical-3", "classical-4", "gbit-2-2", "gbit-3-2",
          "gbit-4-2",    "gbit-2-3",    "spekkens",    "octahedron"};
}

bool qubit_ball_member(const RVec& v) {
  if (v.size() != 6) throw LayoutError("qubit ball membership needs 6 coordinates");
  Rational radius2 = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (v[2 * j] + v[2 * j + 1] != 1) return false;
    Rational d = v[2 * j] - kHalf;
    radius2 += d * d;
  }
  return radius2 <= Rational(1, 4);
}

}  // namespace gpt
