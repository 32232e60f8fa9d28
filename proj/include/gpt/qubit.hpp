#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace gpt::qubit {

// Double-precision closed forms for the qubit in stacked-probability
// coordinates (X+,X- | Y+,Y- | Z+,Z-). Everything else in the library is
// exact; this module owns all floating point.

using Vec6 = std::array<double, 6>;
using Mat6 = std::array<std::array<double, 6>, 6>;
using Mat46 = std::array<std::array<double, 6>, 4>;
using Mat64 = std::array<std::array<double, 4>, 6>;
using Mat4 = std::array<std::array<double, 4>, 4>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Lambdas = std::array<double, 4>;

/// Unphysical gauge freedom of the probability-picture matrices; the printed
/// forms keep A+B+C = 1 free parameters that cancel on normalized states.
struct Gauge {
  double a;
  double b;
  double c;

  Gauge(double a_, double b_, double c_);  // throws if a+b+c != 1 (1e-12)
};

Vec6 mat_vec(const Mat6& m, const Vec6& v);
Mat6 mat_mul(const Mat6& a, const Mat6& b);

/// Effect pair of the general binary measurement along (alpha, beta).
std::pair<Vec6, Vec6> qubit_effects(double alpha, double beta, const Gauge& g);

/// Probability-picture action of the unitary taking the computational basis
/// to the (alpha, beta) basis.
Mat6 t_prob(double alpha, double beta, const Gauge& g);

/// Probability <-> expectation conversion: c_mat is 4x6 onto
/// (1, <X>, <Y>, <Z>); c_inv is its right inverse.
struct ConversionPair {
  Mat46 c_mat;
  Mat64 c_inv;
};
ConversionPair conversion_pair(const Gauge& g);

/// The Z-phase rotation by phi in the probability picture (4x4 block on the
/// X/Y coordinates, identity on Z), with its four gauge parameters.
Mat6 t_phi(double phi, const Lambdas& lambdas);

/// The probability-picture Hadamard (X<->Z block swap, Y-outcome swap).
Mat6 hadamard();

/// Full output state of the Mach-Zehnder circuit T_H T_phi T_H on the
/// Z-definite input (1/2,1/2 | 1/2,1/2 | 1,0).
Vec6 mzi_final_state(double phi, const Lambdas& lambdas);

/// Z-block fringe of the circuit: ((1+cos phi)/2, (1-cos phi)/2).
std::pair<double, double> mzi_output(double phi, const Lambdas& lambdas);

/// Ball membership: sum_W (p(0|W)-1/2)^2 <= 1/4 + tol, block sums within tol.
bool ball_member(const Vec6& v, double tol = 1e-12);

/// Deterministic sampling of valid qubit states (uniform over the ball).
std::vector<Vec6> sample_ball_states(std::size_t count, std::uint64_t seed);

/// Induced action on expectation coordinates: the 3x3 lower-right block of
/// c_mat . m . c_inv (the 1 <-> 1 normalization row factors off exactly for
/// the printed matrices).
Mat3 induced_expectation_action(const Mat6& m, const Gauge& g);

}  // namespace gpt::qubit
