#pragma once

#include <cmath>
#include <cstdlib>

// Scalar coefficients of the same-subspace recursion for the rotation
// coefficients H_n^{m'm}.  All are cheap enough to recompute on the fly;
// hot loops cache d_n^m in a per-degree array instead.

namespace wigrot {

// Sign convention used by the b and d coefficients: +1 for m >= 0, -1 below.
inline constexpr int sgn(int m) noexcept { return m >= 0 ? 1 : -1; }

// eps_m: (-1)^m for m >= 0 and +1 for m < 0.  Converts between H and the
// classical Wigner d entries, and carries the Condon-Shortley bookkeeping.
inline constexpr double eps(int m) noexcept {
  return (m >= 0 && (m & 1)) ? -1.0 : 1.0;
}

// a_n^m: degree-coupling coefficient; zero whenever n < |m|.
inline double coeff_a(int n, int m) noexcept {
  if (n < std::abs(m)) return 0.0;
  const double nn = n, mm = m;
  return std::sqrt((nn + 1 + mm) * (nn + 1 - mm) /
                   ((2 * nn + 1) * (2 * nn + 3)));
}

// b_n^m: signed degree-coupling coefficient; zero whenever n < |m|.
inline double coeff_b(int n, int m) noexcept {
  if (n < std::abs(m)) return 0.0;
  const double nn = n, mm = m;
  const double num = (nn - mm - 1) * (nn - mm);
  return sgn(m) * std::sqrt(std::max(0.0, num) / ((2 * nn - 1) * (2 * nn + 1)));
}

// d_n^m: order-coupling coefficient of the main recursion, defined for
// m = -n-1 .. n and zero outside; d_n^n = d_n^{-n-1} = 0.
inline double coeff_d(int n, int m) noexcept {
  if (m < -n - 1 || m > n) return 0.0;
  const double nn = n, mm = m;
  return 0.5 * sgn(m) * std::sqrt((nn - mm) * (nn + mm + 1));
}

}  // namespace wigrot
