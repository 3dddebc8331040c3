#include "wigrot/rotation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wigrot/recursion.hpp"

namespace wigrot {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod rounding at the seam
  return r;
}

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= std::numbers::pi))
    throw std::domain_error("rotation: beta must lie in [0, pi]");
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

// Coordinate-transform z-rotation: row vectors of the new basis.
Mat3 qz(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{{c, s, 0.0}, {-s, c, 0.0}, {0.0, 0.0, 1.0}}};
}

Mat3 qy(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{{c, 0.0, -s}, {0.0, 1.0, 0.0}, {s, 0.0, c}}};
}

}  // namespace

RotationAngles from_euler(const EulerAngles& e) {
  check_beta(e.beta);
  RotationAngles a;
  a.alpha = mod_two_pi(e.alpha);
  a.beta = e.beta;
  a.gamma = mod_two_pi(std::numbers::pi - e.gamma);
  return a;
}

EulerAngles to_euler(const RotationAngles& a) {
  check_beta(a.beta);
  EulerAngles e;
  e.alpha = mod_two_pi(a.alpha);
  e.beta = a.beta;
  e.gamma = mod_two_pi(std::numbers::pi - a.gamma);
  return e;
}

Mat3 rotation_matrix(const RotationAngles& a) {
  // Q = A(gamma) B(beta) A(alpha)^T = Q_z(pi - gamma) Q_y(beta) Q_z(alpha).
  return mat_mul(qz(std::numbers::pi - a.gamma),
                 mat_mul(qy(a.beta), qz(a.alpha)));
}

std::complex<double> t_element(int n, int m_prime, int m,
                               const RotationAngles& a, double h_value) {
  if (std::abs(m_prime) > n || std::abs(m) > n)
    throw std::domain_error("t_element: orders must satisfy |m| <= n");
  const std::complex<double> left = std::polar(1.0, -m_prime * a.gamma);
  const std::complex<double> right = std::polar(1.0, m * a.alpha);
  return left * h_value * right;
}

SHExpansion rotate_expansion(const SHExpansion& f, const RotationAngles& a,
                             const CoeffProvider& provider) {
  if (f.p < 0 ||
      f.coeffs.size() != static_cast<std::size_t>(f.p) * f.p)
    throw std::invalid_argument(
        "rotate_expansion: coefficient count must equal p*p");
  check_beta(a.beta);
  const CoeffProvider& src =
      provider ? provider
               : CoeffProvider([](int n, double beta) {
                   return compute_subspace(n, beta);
                 });
  SHExpansion out;
  out.p = f.p;
  out.coeffs.assign(f.coeffs.size(), {0.0, 0.0});
  for (int n = 0; n < f.p; ++n) {
    const CoeffTriangle t = src(n, a.beta);
    if (t.degree() != n)
      throw std::invalid_argument("rotate_expansion: provider degree mismatch");
    for (int mp = -n; mp <= n; ++mp) {
      const std::complex<double> phase_l = std::polar(1.0, -mp * a.gamma);
      std::complex<double> acc(0.0, 0.0);
      for (int m = -n; m <= n; ++m) {
        const std::complex<double> phase_r = std::polar(1.0, m * a.alpha);
        acc += phase_l * t.get(mp, m) * phase_r * f.at(n, m);
      }
      out.at(n, mp) = acc;
    }
  }
  return out;
}

}  // namespace wigrot
