#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gpt/phase.hpp"
#include "gpt/theories.hpp"

using namespace gpt;

namespace {

PhaseGroupResult run_phase(const Theory& t, const std::string& measurement) {
  Group ambient = automorphism_group(t);
  return phase_group(t, t.measurement(measurement), ambient);
}

}  // namespace

TEST_CASE("phase group orders and names") {
  auto cube = gbit(3, 2);
  auto r = run_phase(*cube, "Z");
  CHECK(r.group.order() == 8);
  CHECK(r.name.label == "D4_order8");
  CHECK_FALSE(r.is_trivial);

  r = run_phase(*cube, "diagonal");
  CHECK(r.group.order() == 6);
  CHECK(r.name.label == "S3");

  r = run_phase(*cube, "unit");
  CHECK(r.group.order() == 48);
  CHECK(r.name.label == "B3_order48");

  auto hyper = gbit(4, 2);
  r = run_phase(*hyper, "X0");
  CHECK(r.group.order() == 48);
  CHECK(r.name.label == "B3_order48");
  CHECK_FALSE(r.group.abelian());

  r = run_phase(*hyper, "diagonal");
  CHECK(r.group.order() == 24);
  CHECK(r.name.label == "S4");

  auto spek = spekkens_bit()->base();
  r = run_phase(*spek, "Z");
  CHECK(r.group.order() == 4);
  CHECK(r.name.label == "Z2xZ2");
  CHECK(r.group.abelian());

  r = run_phase(*spek, "diagonal");
  CHECK(r.group.order() == 6);
  CHECK(r.name.label == "S3");

  auto bit = classical_dit(2);
  r = run_phase(*bit, "M0");
  CHECK(r.group.order() == 1);
  CHECK(r.is_trivial);
  CHECK(r.name.label == "trivial");
}

TEST_CASE("phase groups are maximal stabilizers") {
  struct Fixture {
    const char* theory;
    const char* measurement;
  };
  for (Fixture f : {Fixture{"gbit-3-2", "Z"}, {"gbit-3-2", "diagonal"},
                    {"gbit-3-2", "unit"}, {"gbit-4-2", "X0"}, {"gbit-4-2", "diagonal"},
                    {"spekkens", "Z"}, {"spekkens", "diagonal"}, {"classical-2", "M0"}}) {
    auto t = built_in_theory(f.theory);
    Group ambient = automorphism_group(*t);
    PhaseGroupResult r = phase_group(*t, t->measurement(f.measurement), ambient);
    CHECK(verify_maximal_phase_group(*t, t->measurement(f.measurement), ambient, r));
  }
}

TEST_CASE("reflection-free gbit-3-2 phase groups of maximal measurements are abelian") {
  auto cube = gbit(3, 2);
  Group rotations = orientation_subgroup(automorphism_group(*cube), *cube);
  REQUIRE(rotations.order() == 24);
  for (const Measurement& m : cube->measurements()) {
    if (!verify_maximal(*cube, m)) continue;
    PhaseGroupResult r = phase_group(*cube, m, rotations);
    CHECK(r.group.abelian());
  }
}

TEST_CASE("measurement maximality") {
  auto cube = gbit(3, 2);
  CHECK(verify_maximal(*cube, cube->measurement("Z")));
  CHECK(verify_maximal(*cube, cube->measurement("diagonal")));
  CHECK_FALSE(verify_maximal(*cube, cube->measurement("unit")));
  CHECK_FALSE(verify_maximal(*cube, cube->measurement("foureffect")));
  auto quad = classical_dit(4);
  CHECK(verify_maximal(*quad, quad->measurement("M0")));
  CHECK_FALSE(verify_maximal(*quad, quad->measurement("parity")));
}

TEST_CASE("classicality detection") {
  CHECK(is_classical(*classical_dit(2)));
  CHECK(is_classical(*classical_dit(3)));
  CHECK(is_classical(*classical_dit(4)));
  CHECK_FALSE(is_classical(*gbit(2, 2)));
  CHECK_FALSE(is_classical(*gbit(3, 2)));
  CHECK_FALSE(is_classical(*gbit(2, 3)));
  CHECK_FALSE(is_classical(*spekkens_bit()->base()));
}

TEST_CASE("canonical phase map on classical theories is the identity") {
  for (std::size_t n : {2u, 3u, 4u}) {
    auto t = classical_dit(n);
    CanonicalPhaseMap cmap = canonical_phase_map(*t, t->measurement("M0"));
    CHECK(cmap.maps_into_state_space);
    CHECK(cmap.fixes_effects_on_hull);
    CHECK(cmap.identity_on_states);
    CHECK_FALSE(cmap.witness.has_value());
  }
}

TEST_CASE("canonical phase map collapses non-classical theories with a witness") {
  for (const char* name : {"gbit-2-2", "gbit-3-2", "gbit-4-2", "gbit-2-3", "spekkens"}) {
    auto t = built_in_theory(name);
    const Measurement* m = nullptr;
    for (const Measurement& cand : t->measurements())
      if (verify_maximal(*t, cand)) {
        m = &cand;
        break;
      }
    REQUIRE(m != nullptr);
    CanonicalPhaseMap cmap = canonical_phase_map(*t, *m);
    CHECK(cmap.maps_into_state_space);
    CHECK(cmap.fixes_effects_on_hull);
    CHECK_FALSE(cmap.identity_on_states);
    REQUIRE(cmap.witness.has_value());
    auto [a, b] = *cmap.witness;
    CHECK(a != b);
    CHECK(cmap.matrix * t->extreme_points()[a].coords() ==
          cmap.matrix * t->extreme_points()[b].coords());
    // anchor states are perfectly selected: e_i . mu_j = delta_ij
    for (std::size_t i = 0; i < cmap.anchors.size(); ++i)
      for (std::size_t j = 0; j < cmap.anchors.size(); ++j)
        CHECK(dot(m->effects()[i].coords(),
                  t->extreme_points()[cmap.anchors[j]].coords()) ==
              Rational(i == j ? 1 : 0));
  }
}

TEST_CASE("canonical phase map on the cube collapses onto a Z segment") {
  auto cube = gbit(3, 2);
  CanonicalPhaseMap cmap = canonical_phase_map(*cube, cube->measurement("Z"));
  for (const State& v : cube->extreme_points()) {
    RVec image = cmap.matrix * v.coords();
    // the image is a mixture of the two anchors
    const RVec& mu0 = cube->extreme_points()[cmap.anchors[0]].coords();
    const RVec& mu1 = cube->extreme_points()[cmap.anchors[1]].coords();
    Rational w = v.coords()[4];  // P(+1|Z)
    CHECK(image == vec_add(vec_scaled(mu0, w), vec_scaled(mu1, Rational(1) - w)));
  }
}

TEST_CASE("canonical phase map on the toy bit merges the X pair") {
  auto spek = spekkens_bit();
  const Theory& t = *spek->base();
  CanonicalPhaseMap cmap = canonical_phase_map(t, t.measurement("Z"));
  RVec x_plus = spek->epistemic_state(SpekkensBasis::X, +1).coords();
  RVec x_minus = spek->epistemic_state(SpekkensBasis::X, -1).coords();
  CHECK(cmap.matrix * x_plus == cmap.matrix * x_minus);
  // all six vertices land on the two Z anchors or their segment midpoints
  for (const State& v : t.extreme_points()) {
    RVec image = cmap.matrix * v.coords();
    CHECK(t.membership(image));
    CHECK(image[4] == v.coords()[4]);  // Z statistics frozen
  }
}

TEST_CASE("decoherence is irreversible Z-preserving phase dynamics") {
  auto oct = octahedron_theory();
  RMat d = decoherence_map(*oct, 2);
  PhaseDynamicsReport report =
      phase_dynamics_report(*oct, oct->measurement("Z"), d);
  CHECK(report.preserves_state_space);
  CHECK(report.preserves_measurement);
  CHECK_FALSE(report.is_reversible);
  CHECK(report.changed_states.size() == 4);  // X and Y eigenstates move

  // the worked example: the X eigenstate decoheres to the center
  RVec x_state{1, 0, Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  CHECK(d * x_state == RVec(6, Rational(1, 2)));
}

TEST_CASE("the measurement-setting map pins the X face of the cube") {
  auto cube = gbit(3, 2);
  RMat p = measurement_setting_map(*cube, 0);
  for (const char* label : {"X", "Y", "Z"}) {
    PhaseDynamicsReport report =
        phase_dynamics_report(*cube, cube->measurement(label), p);
    CHECK(report.preserves_state_space);
    CHECK_FALSE(report.is_reversible);
    // the Z (and Y) statistics survive; X statistics are overwritten
    CHECK(report.preserves_measurement == (std::string(label) != "X"));
  }
  for (const State& v : cube->extreme_points()) {
    RVec image = p * v.coords();
    CHECK(image[0] == 1);
    CHECK(image[1] == 0);
  }
}

TEST_CASE("the measurement-setting map escapes the qubit ball") {
  auto cube = gbit(3, 2);
  RMat p = measurement_setting_map(*cube, 0);
  RVec y_plus{Rational(1, 2), Rational(1, 2), 1, 0, Rational(1, 2), Rational(1, 2)};
  CHECK(qubit_ball_member(y_plus));
  CHECK_FALSE(qubit_ball_member(p * y_plus));
}

TEST_CASE("mixtures of phase elements") {
  auto cube = gbit(3, 2);
  PhaseGroupResult r = run_phase(*cube, "Z");
  // identity plus the 180-degree element averages the X and Y blocks
  const RMat* half_turn = nullptr;
  for (const GroupElement& e : r.group.elements()) {
    const RMat& m = e.transform.matrix();
    RVec probe{1, 0, 1, 0, 1, 0};
    RVec image = m * probe;
    if (image == RVec{0, 1, 0, 1, 1, 0}) half_turn = &e.transform.matrix();
  }
  REQUIRE(half_turn != nullptr);
  RMat mix = mixture_of_phase_elements(
      {{Rational(1, 2), RMat::identity(6)}, {Rational(1, 2), *half_turn}});
  RVec corner{1, 0, 1, 0, 1, 0};
  CHECK(mix * corner == RVec{Rational(1, 2), Rational(1, 2), Rational(1, 2),
                             Rational(1, 2), 1, 0});
  PhaseDynamicsReport report = phase_dynamics_report(*cube, cube->measurement("Z"), mix);
  CHECK(report.preserves_state_space);
  CHECK(report.preserves_measurement);

  // single-element mixture is that element
  RMat single = mixture_of_phase_elements({{Rational(1), *half_turn}});
  CHECK(single == *half_turn);

  CHECK_THROWS_AS(mixture_of_phase_elements(
                      {{Rational(1, 2), RMat::identity(6)}}),
                  ValidationError);
  CHECK_THROWS_AS(mixture_of_phase_elements(
                      {{Rational(2), RMat::identity(6)},
                       {Rational(-1), RMat::identity(6)}}),
                  ValidationError);
}

TEST_CASE("refinement monotonicity of phase groups") {
  // fiducial Z refines the unit measurement; diagonal refines unit too
  auto cube = gbit(3, 2);
  Group ambient = automorphism_group(*cube);
  PhaseGroupResult unit = phase_group(*cube, cube->measurement("unit"), ambient);
  for (const char* finer : {"Z", "diagonal", "foureffect"}) {
    PhaseGroupResult r = phase_group(*cube, cube->measurement(finer), ambient);
    for (const GroupElement& e : r.group.elements())
      CHECK(unit.group.find(e.vertex_perm).has_value());
  }
  // the four-effect measurement refines both X and Y fiducials
  PhaseGroupResult four = phase_group(*cube, cube->measurement("foureffect"), ambient);
  for (const char* coarser : {"X", "Y"}) {
    PhaseGroupResult r = phase_group(*cube, cube->measurement(coarser), ambient);
    for (const GroupElement& e : four.group.elements())
      CHECK(r.group.find(e.vertex_perm).has_value());
  }
}

TEST_CASE("classical non-maximal measurements keep phase freedom") {
  auto quad = classical_dit(4);
  Group ambient = automorphism_group(*quad);
  PhaseGroupResult maximal = phase_group(*quad, quad->measurement("M0"), ambient);
  CHECK(maximal.is_trivial);
  PhaseGroupResult parity = phase_group(*quad, quad->measurement("parity"), ambient);
  CHECK(parity.group.order() > 1);
  CHECK(parity.group.order() == 4);  // swaps within each parity class
}

TEST_CASE("spekkens diagonal extremal mixtures cannot be exchanged") {
  // the two diagonal-axis extremal mixtures of the toy bit are fixed points
  // of the whole induced group up to the S3 stabilizer; no allowed linear
  // map exchanges them
  auto spek = spekkens_bit();
  const Theory& t = *spek->base();
  RVec plus(6, Rational(0)), minus(6, Rational(0));
  // mixtures of the three +1 and three -1 epistemic states
  for (SpekkensBasis b : {SpekkensBasis::X, SpekkensBasis::Y, SpekkensBasis::Z}) {
    plus = vec_add(plus, vec_scaled(spek->epistemic_state(b, +1).coords(), Rational(1, 3)));
    minus = vec_add(minus, vec_scaled(spek->epistemic_state(b, -1).coords(), Rational(1, 3)));
  }
  CHECK(t.membership(plus));
  CHECK(t.membership(minus));
  bool exchanged = false;
  for (const auto& [label, tr] : t.explicit_group())
    exchanged = exchanged || (tr.matrix() * plus == minus && tr.matrix() * minus == plus);
  CHECK_FALSE(exchanged);
}
