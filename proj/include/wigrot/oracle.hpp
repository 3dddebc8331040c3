#pragma once

#include "wigrot/triangle.hpp"

// Reference evaluations of H_n^{m'm}(beta) that do not depend on the
// recursion engine: the explicit alternating factorial sum (reliable at
// small degree) and the flip reconstruction from the half-angle subspace.

namespace wigrot {

// The alternating sum loses accuracy to cancellation as n grows.
inline constexpr int kDirectReliableDegree = 20;  // ~1e-13 accurate
inline constexpr int kDirectMaxDegree = 32;       // hard cap; degraded above 20
inline constexpr bool h_direct_reliable(int n) noexcept {
  return n <= kDirectReliableDegree;
}

// Reduction of an arbitrary finite beta into [0, pi]:
//   H(beta_in)^{m'm} = (negate_odd && (m'+m) odd ? -1 : +1) * H(beta)^{m'm}.
struct BetaReduction {
  double beta;
  bool negate_odd;
};
BetaReduction reduce_beta(double beta);

// H_n^{m'm}(beta) by the explicit sum over sigma, evaluated in log space
// with compensated summation.  Throws std::domain_error for |m| > n,
// |m'| > n, non-finite beta, or n > kDirectMaxDegree.
double h_direct(int n, int m_prime, int m, double beta);

// Classical Wigner d entry from an H value: d = eps_{m'} eps_{-m} H.
double wigner_d_from_h(int m_prime, int m, double h);

// Rebuild the subspace at angle beta from the same-degree subspace at pi/2
// using the Fourier flip identity.  half_pi.beta() must be pi/2.
CoeffTriangle flip_reconstruct(const CoeffTriangle& half_pi, double beta);

}  // namespace wigrot
