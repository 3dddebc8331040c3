#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "wigrot/triangle.hpp"

// Consumers of the coefficient tables: angle conventions, elementary
// rotation matrices, full T-matrix elements, and rotation of spherical
// harmonic expansions.
//
// Internal angles (alpha, beta, gamma) parameterize the rotation as
// Q = A(gamma) B(beta) A(alpha)^T: a z-rotation, a y-flip-like rotation
// carrying the old z-axis to the new one, and another z-rotation.  They
// relate to the conventional z-y-z Euler angles by gamma = pi - gamma_E
// with alpha and beta shared.

namespace wigrot {

// Internal angle triple.
struct RotationAngles {
  double alpha = 0.0;  // [0, 2*pi)
  double beta = 0.0;   // [0, pi]
  double gamma = 0.0;  // [0, 2*pi)
};

// Conventional z-y-z Euler angles.
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Euler -> internal: (alpha, beta, pi - gamma_E), alpha and gamma reduced
// mod 2*pi into [0, 2*pi).  Throws std::domain_error if beta lies outside
// [0, pi]; symmetry reduction of beta belongs to the coefficient layer.
RotationAngles from_euler(const EulerAngles& e);

// Inverse of from_euler (identity modulo 2*pi).
EulerAngles to_euler(const RotationAngles& a);

using Mat3 = std::array<std::array<double, 3>, 3>;

// The 3x3 rotation matrix Q(alpha, beta, gamma) acting on coordinates.
// Orthogonal with determinant 1.
Mat3 rotation_matrix(const RotationAngles& a);

// Full transform element T_n^{m'm} = e^{-i m' gamma} H_n^{m'm}(beta)
// e^{i m alpha}; h_value supplies H_n^{m'm}(beta).
std::complex<double> t_element(int n, int m_prime, int m,
                               const RotationAngles& a, double h_value);

// Band-limited spherical-harmonic expansion: coefficients C_n^m for
// n = 0..p-1, m = -n..n, packed at index n*n + n + m (p*p entries total).
struct SHExpansion {
  int p = 0;  // bandwidth (degrees strictly below p)
  std::vector<std::complex<double>> coeffs;

  std::complex<double>& at(int n, int m) {
    return coeffs[static_cast<std::size_t>(n) * n + n + m];
  }
  const std::complex<double>& at(int n, int m) const {
    return coeffs[static_cast<std::size_t>(n) * n + n + m];
  }
};

// Source of per-degree coefficient tables at a fixed beta.
using CoeffProvider = std::function<CoeffTriangle(int n, double beta)>;

// Expansion coefficients of f over the rotated frame's basis:
// C'_n^{m'} = sum_m T_n^{m'm} C_n^m, degree by degree.  The default
// provider is the recursive engine; pass one backed by an FFT engine or a
// cache to change the coefficient source.  Throws std::invalid_argument if
// f.coeffs does not hold exactly p*p entries.
SHExpansion rotate_expansion(const SHExpansion& f, const RotationAngles& a,
                             const CoeffProvider& provider = {});

}  // namespace wigrot
