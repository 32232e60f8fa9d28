#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gpt/group.hpp"
#include "gpt/theories.hpp"

using namespace gpt;

TEST_CASE("classical dit builders") {
  auto bit = classical_dit(2);
  REQUIRE(bit->extreme_points().size() == 2);
  CHECK(bit->extreme_points()[0].coords() == RVec{0, 1});
  CHECK(bit->extreme_points()[1].coords() == RVec{1, 0});
  CHECK(bit->distinguishable_count() == 2);
  CHECK(bit->affine_dim() == 1);
  CHECK_THROWS_AS(classical_dit(1), ValidationError);

  auto quad = classical_dit(4);
  CHECK(quad->has_measurement("parity"));
  // parity effects split the four outcomes into {00,11} and {01,10}
  const Measurement& parity = quad->measurement("parity");
  State v00 = quad->make_state({1, 0, 0, 0});
  State v01 = quad->make_state({0, 1, 0, 0});
  CHECK(apply_effect(parity.effects()[0], v00) == 1);
  CHECK(apply_effect(parity.effects()[1], v01) == 1);
}

TEST_CASE("gbit builders") {
  auto cube = gbit(3, 2);
  CHECK(cube->extreme_points().size() == 8);
  CHECK(cube->affine_dim() == 3);
  CHECK(cube->distinguishable_count() == 2);

  auto hyper = gbit(4, 2);
  CHECK(hyper->extreme_points().size() == 16);
  CHECK(hyper->affine_dim() == 4);

  auto two_three = gbit(2, 3);
  CHECK(two_three->extreme_points().size() == 9);
  CHECK(two_three->affine_dim() == 4);

  // single-block gbit has the classical-bit state space
  auto single = gbit(1, 2);
  auto bit = classical_dit(2);
  REQUIRE(single->extreme_points().size() == bit->extreme_points().size());
  for (std::size_t i = 0; i < single->extreme_points().size(); ++i)
    CHECK(single->extreme_points()[i].coords() == bit->extreme_points()[i].coords());

  CHECK_THROWS_AS(gbit(7, 2), BudgetError);
}

TEST_CASE("gbit vertex count and affine dimension scale as n^m and m(n-1)") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 2; n <= 3; ++n) {
      if (std::pow(double(n), double(m)) > 64) continue;
      auto t = gbit(m, n);
      std::size_t count = 1;
      for (std::size_t j = 0; j < m; ++j) count *= n;
      CHECK(t->extreme_points().size() == count);
      CHECK(t->affine_dim() == m * (n - 1));
    }
}

TEST_CASE("spekkens epistemic states and ontic embedding") {
  auto spek = spekkens_bit();
  REQUIRE(spek->ontic_vertices().size() == 4);
  CHECK(spek->ontic_vertices()[0] == RVec{1, 0, 1, 0, 1, 0});
  CHECK(spek->ontic_vertices()[1] == RVec{0, 1, 0, 1, 1, 0});
  CHECK(spek->ontic_vertices()[2] == RVec{1, 0, 0, 1, 0, 1});
  CHECK(spek->ontic_vertices()[3] == RVec{0, 1, 1, 0, 0, 1});

  // Z=+1 is the midpoint of ontic 1 and 2.
  State z_plus = spek->epistemic_state(SpekkensBasis::Z, +1);
  RVec mid = vec_scaled(vec_add(spek->ontic_vertices()[0], spek->ontic_vertices()[1]),
                        Rational(1, 2));
  CHECK(z_plus.coords() == mid);
  CHECK(z_plus.coords() == RVec{Rational(1, 2), Rational(1, 2), Rational(1, 2),
                                Rational(1, 2), 1, 0});

  // every epistemic extreme point is the midpoint of exactly one ontic pair
  for (const State& v : spek->base()->extreme_points()) {
    int pairs = 0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b) {
        RVec m = vec_scaled(vec_add(spek->ontic_vertices()[a], spek->ontic_vertices()[b]),
                            Rational(1, 2));
        if (m == v.coords()) ++pairs;
      }
    CHECK(pairs == 1);
  }
}

TEST_CASE("spekkens measurement update rule") {
  auto spek = spekkens_bit();
  State z_plus = spek->epistemic_state(SpekkensBasis::Z, +1);
  // X on Z+ is uniform and collapses to the X eigenstate.
  auto dist = spek->outcome_distribution(z_plus, SpekkensBasis::X);
  CHECK(dist.first == Rational(1, 2));
  CHECK(dist.second == Rational(1, 2));
  State updated = spek->measure_update(z_plus, SpekkensBasis::X, +1);
  CHECK(updated == spek->epistemic_state(SpekkensBasis::X, +1));
  // repeated measurement is idempotent
  CHECK(spek->measure_update(z_plus, SpekkensBasis::Z, +1) == z_plus);
  CHECK(spek->measure_update(updated, SpekkensBasis::X, +1) == updated);
  // zero-probability branch is rejected
  CHECK_THROWS_AS(spek->measure_update(z_plus, SpekkensBasis::Z, -1), ValidationError);
}

TEST_CASE("spekkens induced transforms preserve both polytopes") {
  auto spek = spekkens_bit();
  const auto& theory = *spek->base();
  REQUIRE(theory.explicit_group().size() == 24);
  for (const auto& [label, t] : theory.explicit_group()) {
    CHECK(t.reversible());
    // octahedron onto itself
    for (const State& v : theory.extreme_points())
      CHECK(theory.vertex_index(t.matrix() * v.coords()).has_value());
    // tetrahedron onto itself
    for (const RVec& o : spek->ontic_vertices()) {
      RVec image = t.matrix() * o;
      bool found = false;
      for (const RVec& o2 : spek->ontic_vertices()) found = found || image == o2;
      CHECK(found);
    }
  }
}

TEST_CASE("90-degree Z rotation of the octahedron is not induced by the tetrahedron") {
  auto spek = spekkens_bit();
  const auto& theory = *spek->base();
  // X+ -> Y+, Y+ -> X-, Z fixed: a quarter turn about the Z axis.
  RMat rot(6, 6);
  rot.at(2, 0) = rot.at(3, 1) = 1;  // X outcomes feed Y
  rot.at(1, 2) = rot.at(0, 3) = 1;  // Y outcomes feed X, swapped
  rot.at(4, 4) = rot.at(5, 5) = 1;
  // it is an automorphism of the octahedron...
  auto oct = octahedron_theory();
  CHECK(oct->validate_transform(rot).reversible());
  // ...but not a member of the induced group
  bool in_group = false;
  for (const auto& [label, t] : theory.explicit_group())
    in_group = in_group || theory.same_action(t.matrix(), rot);
  CHECK_FALSE(in_group);
}

TEST_CASE("built-in registry") {
  CHECK(built_in_theory("gbit-3-2")->name() == "gbit-3-2");
  CHECK(built_in_theory("classical-2")->name() == "classical-2");
  CHECK(built_in_theory("spekkens")->name() == "spekkens");
  CHECK(built_in_theory("octahedron")->name() == "octahedron");
  CHECK_THROWS_AS(built_in_theory("nonsense"), ParseError);
  CHECK_THROWS_AS(built_in_theory("gbit-x"), ParseError);
}

TEST_CASE("measurement sums are the unit functional on the affine hull") {
  for (const char* name : {"gbit-3-2", "gbit-4-2", "spekkens", "classical-4"}) {
    auto t = built_in_theory(name);
    for (const Measurement& m : t->measurements()) {
      for (const State& v : t->extreme_points()) {
        Rational total = 0;
        for (const Effect& e : m.effects()) total += apply_effect(e, v);
        CHECK(total == 1);
      }
    }
  }
}

TEST_CASE("qubit ball membership") {
  CHECK(qubit_ball_member({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2),
                           1, 0}));
  CHECK(qubit_ball_member(RVec(6, Rational(1, 2))));
  // cube corner is outside the ball
  CHECK_FALSE(qubit_ball_member({1, 0, 1, 0, 1, 0}));
  // bad normalization
  CHECK_FALSE(qubit_ball_member({1, 1, 1, 0, 1, 0}));
}
