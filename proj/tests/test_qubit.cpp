#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gpt/qubit.hpp"

using namespace gpt::qubit;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<double> kPhis = {0.0,       kPi / 6, kPi / 4,     kPi / 3,
                                   kPi / 2,   2 * kPi / 3, 3 * kPi / 4, kPi,
                                   5 * kPi / 4, 3 * kPi / 2, 7 * kPi / 4, 2 * kPi,
                                   1.234};

std::vector<Lambdas> random_lambdas(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Lambdas> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(Lambdas{u(rng), u(rng), u(rng), u(rng)});
  return out;
}

double max_abs_diff(const Vec6& a, const Vec6& b) {
  double m = 0;
  for (int i = 0; i < 6; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("gauge constructor rejects A+B+C != 1") {
  CHECK_NOTHROW(Gauge(1.0, 0.0, 0.0));
  CHECK_NOTHROW(Gauge(0.25, 0.35, 0.4));
  CHECK_THROWS_AS(Gauge(0.5, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("interferometer fringe matches the closed form for all phases and gauges") {
  for (const Lambdas& l : random_lambdas(5, 20260826)) {
    for (double phi : kPhis) {
      auto [p_plus, p_minus] = mzi_output(phi, l);
      CHECK(std::abs(p_plus - (1 + std::cos(phi)) / 2) < 1e-9);
      CHECK(std::abs(p_minus - (1 - std::cos(phi)) / 2) < 1e-9);

      Vec6 expected = {0.5,
                       0.5,
                       (1 - std::sin(phi)) / 2,
                       (1 + std::sin(phi)) / 2,
                       (1 + std::cos(phi)) / 2,
                       (1 - std::cos(phi)) / 2};
      CHECK(max_abs_diff(mzi_final_state(phi, l), expected) < 1e-9);
      CHECK(ball_member(mzi_final_state(phi, l), 1e-9));
    }
  }
}

TEST_CASE("probability<->expectation conversion is a right inverse") {
  for (const Gauge& g : {Gauge(1.0, 0.0, 0.0), Gauge(1.0 / 3, 1.0 / 3, 1.0 / 3),
                         Gauge(-0.7, 0.9, 0.8)}) {
    ConversionPair p = conversion_pair(g);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double acc = 0;
        for (int k = 0; k < 6; ++k) acc += p.c_mat[i][k] * p.c_inv[k][j];
        CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("basis-change matrix acts gauge-independently on states") {
  Gauge g1(1.0, 0.0, 0.0);
  Gauge g2(0.2, 0.3, 0.5);
  auto states = sample_ball_states(100, 7);
  for (auto [alpha, beta] : {std::pair{0.0, 0.0}, {kPi / 2, 0.0}, {kPi / 3, kPi / 5},
                             {2.1, -0.8}}) {
    Mat6 m1 = t_prob(alpha, beta, g1);
    Mat6 m2 = t_prob(alpha, beta, g2);
    for (const Vec6& s : states) {
      CHECK(max_abs_diff(mat_vec(m1, s), mat_vec(m2, s)) < 1e-12);
      CHECK(ball_member(mat_vec(m1, s), 1e-9));
    }
  }
}

TEST_CASE("induced expectation action is a rotation") {
  Gauge g(0.2, 0.3, 0.5);
  for (auto [alpha, beta] : {std::pair{0.0, 0.0}, {kPi / 2, 0.0}, {kPi / 3, kPi / 5},
                             {2.1, -0.8}, {1.0, 4.0}}) {
    Mat3 r = induced_expectation_action(t_prob(alpha, beta, g), g);
    // orthogonality: r r^T = I
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0;
        for (int k = 0; k < 3; ++k) acc += r[i][k] * r[j][k];
        CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-9);
      }
    double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                 r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                 r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
    CHECK(std::abs(det - 1.0) < 1e-9);
  }
}

TEST_CASE("basis-change fixtures") {
  Gauge g(1.0 / 3, 1.0 / 3, 1.0 / 3);
  Vec6 z_plus = {0.5, 0.5, 0.5, 0.5, 1, 0};
  // alpha = pi/2 rotates the Z-definite state onto the X-definite one
  Vec6 out = mat_vec(t_prob(kPi / 2, 0.0, g), z_plus);
  Vec6 x_plus = {1, 0, 0.5, 0.5, 0.5, 0.5};
  CHECK(max_abs_diff(out, x_plus) < 1e-12);
  // alpha = beta = 0 is not the identity: it negates the X and Y
  // expectations (a half-turn about Z)
  Mat3 r = induced_expectation_action(t_prob(0.0, 0.0, g), g);
  Mat3 half_turn = {{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(r[i][j] - half_turn[i][j]) < 1e-12);
}

TEST_CASE("phase rotation composes like SO(2) on states and fixes the Z block") {
  auto lambdas = random_lambdas(3, 99);
  auto states = sample_ball_states(25, 11);
  for (const Lambdas& la : lambdas) {
    for (const Lambdas& lb : lambdas) {
      Mat6 ab = mat_mul(t_phi(0.7, la), t_phi(1.9, lb));
      Mat6 sum = t_phi(2.6, la);
      for (const Vec6& s : states)
        CHECK(max_abs_diff(mat_vec(ab, s), mat_vec(sum, s)) < 1e-9);
    }
    // phi = 0 acts as the identity on states (the matrix itself is not I)
    Mat6 id_action = t_phi(0.0, la);
    for (const Vec6& s : states) {
      CHECK(max_abs_diff(mat_vec(id_action, s), s) < 1e-12);
      Vec6 rotated = mat_vec(t_phi(0.7, la), s);
      CHECK(std::abs(rotated[4] - s[4]) < 1e-12);
      CHECK(std::abs(rotated[5] - s[5]) < 1e-12);
      CHECK(ball_member(rotated, 1e-9));
    }
  }
}

TEST_CASE("beam splitter swaps X and Z and flips the Y outcomes") {
  Mat6 h = hadamard();
  Vec6 s = {0.9, 0.1, 0.3, 0.7, 0.5, 0.5};
  Vec6 hs = mat_vec(h, s);
  Vec6 expected = {0.5, 0.5, 0.7, 0.3, 0.9, 0.1};
  CHECK(max_abs_diff(hs, expected) < 1e-12);
  CHECK(max_abs_diff(mat_vec(h, hs), s) < 1e-12);
}

TEST_CASE("general binary effects are a complete pair with probabilities in [0,1]") {
  Gauge g(0.4, 0.1, 0.5);
  auto states = sample_ball_states(50, 3);
  for (auto [alpha, beta] : {std::pair{0.0, 0.0}, {kPi / 2, 0.0}, {1.1, 2.2},
                             {-0.4, 0.9}}) {
    auto [e, e_perp] = qubit_effects(alpha, beta, g);
    for (const Vec6& s : states) {
      double p = 0, q = 0;
      for (int i = 0; i < 6; ++i) {
        p += e[i] * s[i];
        q += e_perp[i] * s[i];
      }
      CHECK(p > -1e-12);
      CHECK(q > -1e-12);
      CHECK(std::abs(p + q - 1.0) < 1e-12);
    }
  }
  // fixtures: (0,0) reads P(+1|Z), (pi/2,0) reads P(+1|X)
  Vec6 s = {0.5 + 0.3, 0.5 - 0.3, 0.5, 0.5, 0.5 + 0.2, 0.5 - 0.2};
  auto [ez, ez_perp] = qubit_effects(0.0, 0.0, g);
  auto [ex, ex_perp] = qubit_effects(kPi / 2, 0.0, g);
  double pz = 0, px = 0;
  for (int i = 0; i < 6; ++i) {
    pz += ez[i] * s[i];
    px += ex[i] * s[i];
  }
  CHECK(std::abs(pz - 0.7) < 1e-12);
  CHECK(std::abs(px - 0.8) < 1e-12);
}

TEST_CASE("ball membership fixtures and sampling") {
  CHECK(ball_member({0.5, 0.5, 0.5, 0.5, 1, 0}));
  CHECK(ball_member({0.5, 0.5, 0.5, 0.5, 0.5, 0.5}));
  // cube corner is outside the ball
  CHECK_FALSE(ball_member({1, 0, 1, 0, 1, 0}));
  // unnormalized block
  CHECK_FALSE(ball_member({0.6, 0.6, 0.5, 0.5, 0.5, 0.5}));
  auto states = sample_ball_states(200, 42);
  CHECK(states.size() == 200);
  for (const Vec6& s : states) CHECK(ball_member(s));
  // deterministic for a fixed seed
  CHECK(sample_ball_states(5, 42) == std::vector<Vec6>(states.begin(), states.begin() + 5));
}
