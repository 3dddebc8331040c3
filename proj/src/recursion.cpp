#include "wigrot/recursion.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "wigrot/coeffs.hpp"
#include "wigrot/legendre.hpp"

namespace wigrot {
namespace {

void check_angle(double beta) {
  if (!(beta >= 0.0 && beta <= std::numbers::pi))
    throw std::domain_error("recursion: beta must lie in [0, pi]");
}

// Layer m' = 0 from the degree-n semi-normalized Legendre row at cos(beta).
std::vector<double> layer0_from_row(std::span<const double> qn) {
  std::vector<double> out(qn.size());
  for (std::size_t m = 0; m < qn.size(); ++m)
    out[m] = (m & 1) ? -qn[m] : qn[m];
  return out;
}

// Layer m' = 1 from the degree-(n+1) layer m' = 0, i.e. one cross-degree
// step; qnp1 is the degree-(n+1) Legendre row at cos(beta).
std::vector<double> layer1_from_row(int n, double beta,
                                    std::span<const double> qnp1) {
  const double ch = std::cos(0.5 * beta);
  const double sh = std::sin(0.5 * beta);
  const double cos_half_sq = ch * ch;  // (1 + cos beta)/2
  const double sin_half_sq = sh * sh;  // (1 - cos beta)/2
  const double sin_b = 2.0 * sh * ch;
  auto L = [&](int k) { return (k & 1) ? -qnp1[k] : qnp1[k]; };
  const double inv_b0 = 1.0 / coeff_b(n + 1, 0);
  std::vector<double> out(n);
  for (int m = 1; m <= n; ++m) {
    const double v = coeff_b(n + 1, -m - 1) * sin_half_sq * L(m + 1) -
                     coeff_b(n + 1, m - 1) * cos_half_sq * L(m - 1) -
                     coeff_a(n, m) * sin_b * L(m);
    out[m - 1] = v * inv_b0;
  }
  return out;
}

// Seed layers 0 and 1 of t from the two Legendre rows, then sweep.
void fill_subspace(CoeffTriangle& t, std::span<const double> qn,
                   std::span<const double> qnp1) {
  const int n = t.degree();
  const std::vector<double> l0 = layer0_from_row(qn);
  std::copy(l0.begin(), l0.end(), t.layer(0));
  if (n >= 1) {
    const std::vector<double> l1 = layer1_from_row(n, t.beta(), qnp1);
    std::copy(l1.begin(), l1.end(), t.layer(1));
  }
  run_sweeps(t);
}

}  // namespace

std::vector<double> layer_m0(int n, double beta) {
  if (n < 0) throw std::domain_error("layer_m0: negative degree");
  check_angle(beta);
  return layer0_from_row(seminorm_row(n, std::cos(beta)));
}

std::vector<double> layer_m1(int n, double beta) {
  if (n < 1) throw std::domain_error("layer_m1: degree must be >= 1");
  check_angle(beta);
  return layer1_from_row(n, beta, seminorm_row(n + 1, std::cos(beta)));
}

void run_sweeps(CoeffTriangle& t) {
  const int n = t.degree();
  if (n == 0) return;  // nothing to propagate
  // d_n^k for k = -n-1 .. n+1 (zero at both ends), offset by n+1.
  std::vector<double> dco(2 * n + 3);
  for (int k = -n - 1; k <= n + 1; ++k)
    dco[k + n + 1] = coeff_d(n, k);
  const double* D = dco.data() + n + 1;

  // Forward: layers 2..n from layers 0..n-1.
  for (int mp = 1; mp < n; ++mp) {
    const double inv = 1.0 / D[mp];
    const double* below = t.layer(mp - 1);  // m = mp-1 .. n
    const double* cur = t.layer(mp);        // m = mp   .. n
    double* out = t.layer(mp + 1);          // m = mp+1 .. n
    for (int m = mp + 1; m < n; ++m) {
      out[m - mp - 1] = (D[mp - 1] * below[m - mp + 1] -
                         D[m - 1] * cur[m - 1 - mp] + D[m] * cur[m + 1 - mp]) *
                        inv;
    }
    // m = n: d_n^n = 0 removes the one-past-the-end source.
    out[n - mp - 1] =
        (D[mp - 1] * below[n - mp + 1] - D[n - 1] * cur[n - 1 - mp]) * inv;
  }

  // Backward: layers -1..-n from layers 1..-n+1.
  for (int mp = 0; mp > -n; --mp) {
    const double inv = 1.0 / D[mp - 1];
    const int a_above = std::abs(mp + 1);  // first m of layer mp+1
    const double* above = t.layer(mp + 1);
    const double* cur = t.layer(mp);  // first m is -mp
    double* out = t.layer(mp - 1);    // first m is 1-mp
    for (int m = 1 - mp; m < n; ++m) {
      out[m - (1 - mp)] = (D[mp] * above[m - a_above] +
                           D[m - 1] * cur[m - 1 + mp] - D[m] * cur[m + 1 + mp]) *
                          inv;
    }
    out[n - (1 - mp)] =
        (D[mp] * above[n - a_above] + D[n - 1] * cur[n - 1 + mp]) * inv;
  }
}

CoeffTriangle compute_subspace(int n, double beta) {
  if (n < 0) throw std::domain_error("compute_subspace: negative degree");
  check_angle(beta);
  CoeffTriangle t(n, beta);
  const double x = std::cos(beta);
  fill_subspace(t, seminorm_row(n, x), seminorm_row(n + 1, x));
  return t;
}

std::vector<CoeffTriangle> compute_all(int p, double beta) {
  if (p < 0) throw std::domain_error("compute_all: negative band limit");
  check_angle(beta);
  std::vector<CoeffTriangle> out;
  if (p == 0) return out;
  out.reserve(p);
  const LegendreTable table(p, std::cos(beta));
  for (int n = 0; n < p; ++n) {
    CoeffTriangle t(n, beta);
    fill_subspace(t, table.row(n), table.row(n + 1));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace wigrot
