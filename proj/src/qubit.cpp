#include "gpt/qubit.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gpt::qubit {

Gauge::Gauge(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
  if (std::abs(a + b + c - 1.0) > 1e-12)
    throw std::invalid_argument("gauge parameters must satisfy A+B+C=1");
}

Vec6 mat_vec(const Mat6& m, const Vec6& v) {
  Vec6 out{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out[i] += m[i][j] * v[j];
  return out;
}

Mat6 mat_mul(const Mat6& a, const Mat6& b) {
  Mat6 out{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

std::pair<Vec6, Vec6> qubit_effects(double alpha, double beta, const Gauge& g) {
  double ca = std::cos(alpha), sa = std::sin(alpha);
  double cb = std::cos(beta), sb = std::sin(beta);
  Vec6 e = {(g.a + cb * sa) / 2, (g.a - cb * sa) / 2, (g.b + sa * sb) / 2,
            (g.b - sa * sb) / 2, (g.c + ca) / 2,      (g.c - ca) / 2};
  Vec6 e_perp = {(g.a - cb * sa) / 2, (g.a + cb * sa) / 2, (g.b - sa * sb) / 2,
                 (g.b + sa * sb) / 2, (g.c - ca) / 2,      (g.c + ca) / 2};
  return {e, e_perp};
}

Mat6 t_prob(double alpha, double beta, const Gauge& g) {
  double ca = std::cos(alpha), sa = std::sin(alpha);
  double cb = std::cos(beta), sb = std::sin(beta);
  double a = g.a, b = g.b, c = g.c;
  return Mat6{{
      {(a - ca * cb) / 2, (a + ca * cb) / 2, (b - ca * sb) / 2, (b + ca * sb) / 2,
       (c + sa) / 2, (c - sa) / 2},
      {(a + ca * cb) / 2, (a - ca * cb) / 2, (b + ca * sb) / 2, (b - ca * sb) / 2,
       (c - sa) / 2, (c + sa) / 2},
      {(a + sb) / 2, (a - sb) / 2, (b - cb) / 2, (b + cb) / 2, c / 2, c / 2},
      {(a - sb) / 2, (a + sb) / 2, (b + cb) / 2, (b - cb) / 2, c / 2, c / 2},
      {(a + cb * sa) / 2, (a - cb * sa) / 2, (b + sa * sb) / 2, (b - sa * sb) / 2,
       (c + ca) / 2, (c - ca) / 2},
      {(a - cb * sa) / 2, (a + cb * sa) / 2, (b - sa * sb) / 2, (b + sa * sb) / 2,
       (c - ca) / 2, (c + ca) / 2},
  }};
}

ConversionPair conversion_pair(const Gauge& g) {
  ConversionPair p{};
  p.c_mat = {{{g.a, g.a, g.b, g.b, g.c, g.c},
              {1, -1, 0, 0, 0, 0},
              {0, 0, 1, -1, 0, 0},
              {0, 0, 0, 0, 1, -1}}};
  p.c_inv = {{{0.5, 0.5, 0, 0},
              {0.5, -0.5, 0, 0},
              {0.5, 0, 0.5, 0},
              {0.5, 0, -0.5, 0},
              {0.5, 0, 0, 0.5},
              {0.5, 0, 0, -0.5}}};
  return p;
}

Mat6 t_phi(double phi, const Lambdas& l) {
  double cp = std::cos(phi), sp = std::sin(phi);
  Mat6 m{};
  double block[4][4] = {
      {(l[0] + cp) / 2, (l[0] - cp) / 2, ((1 - l[0]) - sp) / 2, ((1 - l[0]) + sp) / 2},
      {(l[1] - cp) / 2, (l[1] + cp) / 2, ((1 - l[1]) + sp) / 2, ((1 - l[1]) - sp) / 2},
      {(l[2] + sp) / 2, (l[2] - sp) / 2, ((1 - l[2]) + cp) / 2, ((1 - l[2]) - cp) / 2},
      {(l[3] - sp) / 2, (l[3] + sp) / 2, ((1 - l[3]) - cp) / 2, ((1 - l[3]) + cp) / 2},
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = block[i][j];
  m[4][4] = m[5][5] = 1;
  return m;
}

Mat6 hadamard() {
  Mat6 m{};
  const int read[6] = {4, 5, 3, 2, 0, 1};
  for (int i = 0; i < 6; ++i) m[i][read[i]] = 1;
  return m;
}

Vec6 mzi_final_state(double phi, const Lambdas& lambdas) {
  Vec6 s0 = {0.5, 0.5, 0.5, 0.5, 1, 0};
  Mat6 h = hadamard();
  return mat_vec(h, mat_vec(t_phi(phi, lambdas), mat_vec(h, s0)));
}

std::pair<double, double> mzi_output(double phi, const Lambdas& lambdas) {
  Vec6 sf = mzi_final_state(phi, lambdas);
  return {sf[4], sf[5]};
}

bool ball_member(const Vec6& v, double tol) {
  double r2 = 0;
  for (int w = 0; w < 3; ++w) {
    if (std::abs(v[2 * w] + v[2 * w + 1] - 1.0) > tol) return false;
    r2 += (v[2 * w] - 0.5) * (v[2 * w] - 0.5);
  }
  return r2 <= 0.25 + tol;
}

std::vector<Vec6> sample_ball_states(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  std::vector<Vec6> out;
  while (out.size() < count) {
    double x = coord(rng), y = coord(rng), z = coord(rng);
    if (x * x + y * y + z * z > 0.25) continue;
    out.push_back(Vec6{0.5 + x, 0.5 - x, 0.5 + y, 0.5 - y, 0.5 + z, 0.5 - z});
  }
  return out;
}

Mat3 induced_expectation_action(const Mat6& m, const Gauge& g) {
  ConversionPair p = conversion_pair(g);
  // r = c_mat . m . c_inv, then drop the normalization row/column.
  double tmp[4][4] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0;
      for (int k = 0; k < 6; ++k) {
        double mk = 0;
        for (int l = 0; l < 6; ++l) mk += m[k][l] * p.c_inv[l][j];
        acc += p.c_mat[i][k] * mk;
      }
      tmp[i][j] = acc;
    }
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = tmp[i + 1][j + 1];
  return r;
}

}  // namespace gpt::qubit
