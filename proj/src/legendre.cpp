#include "wigrot/legendre.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

// This translation unit is compiled with floating-point contraction disabled
// (see CMakeLists.txt), and the table and single-row paths funnel through the
// same out-of-line kernels, so both produce bit-identical doubles.

namespace wigrot {
namespace {

void check_domain(int n, double x) {
  if (n < 0) throw std::domain_error("legendre: negative degree");
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("legendre: |x| > 1");
}

// Q_m^m from Q_{m-1}^{m-1}, with s = sqrt(1-x^2).
[[gnu::noinline]] double diag_step(int m, double s, double prev) {
  return -std::sqrt((2.0 * m - 1.0) / (2.0 * m)) * s * prev;
}

// Q_{n+1}^m from Q_n^m (cur) and Q_{n-1}^m (prev).
[[gnu::noinline]] double climb_step(int n, int m, double x, double cur, double prev) {
  const double lo = std::sqrt(static_cast<double>(n + m) * static_cast<double>(n - m));
  const double hi =
      std::sqrt(static_cast<double>(n + 1 + m) * static_cast<double>(n + 1 - m));
  return ((2.0 * n + 1.0) * x * cur - lo * prev) / hi;
}

}  // namespace

LegendreTable::LegendreTable(int n_max, double x) : n_max_(n_max), x_(x) {
  check_domain(n_max, x);
  q_.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 2) / 2, 0.0);
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  auto slot = [&](int n, int m) -> double& {
    return q_[static_cast<std::size_t>(n) * (n + 1) / 2 + m];
  };
  double diag = 1.0;
  for (int m = 0; m <= n_max; ++m) {
    if (m > 0) diag = diag_step(m, s, diag);
    double prev = 0.0;
    double cur = diag;
    slot(m, m) = cur;
    for (int n = m; n < n_max; ++n) {
      const double next = climb_step(n, m, x, cur, prev);
      prev = cur;
      cur = next;
      slot(n + 1, m) = cur;
    }
  }
}

double LegendreTable::q(int n, int m) const {
  if (n < 0 || n > n_max_ || m < 0 || m > n)
    throw std::out_of_range("LegendreTable::q: index out of range");
  return q_[static_cast<std::size_t>(n) * (n + 1) / 2 + m];
}

std::span<const double> LegendreTable::row(int n) const {
  if (n < 0 || n > n_max_)
    throw std::out_of_range("LegendreTable::row: degree out of range");
  return {q_.data() + static_cast<std::size_t>(n) * (n + 1) / 2,
          static_cast<std::size_t>(n) + 1};
}

std::vector<double> seminorm_row(int n, double x) {
  check_domain(n, x);
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double diag = 1.0;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) diag = diag_step(m, s, diag);
    double prev = 0.0;
    double cur = diag;
    for (int k = m; k < n; ++k) {
      const double next = climb_step(k, m, x, cur, prev);
      prev = cur;
      cur = next;
    }
    out[m] = cur;
  }
  return out;
}

FixedDegreeRowEval::FixedDegreeRowEval(int n) : n_(n) {
  if (n < 0) throw std::domain_error("FixedDegreeRowEval: negative degree");
  log_diag_ = 0.0;
  for (int k = 1; k <= n; ++k)
    log_diag_ += 0.5 * std::log((2.0 * k - 1.0) / (2.0 * k));
  inv_dn_.resize(static_cast<std::size_t>(n) + 1, 0.0);
  c_up_.resize(static_cast<std::size_t>(n) + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    inv_dn_[m] =
        1.0 / std::sqrt(static_cast<double>(n + m) * static_cast<double>(n - m + 1));
    c_up_[m] = std::sqrt(static_cast<double>(n - m) * static_cast<double>(n + m + 1));
  }
}

void FixedDegreeRowEval::eval(double x, double* out) const {
  check_domain(n_, x);
  if (n_ == 0) {
    out[0] = 1.0;
    return;
  }
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  if (s == 0.0) {
    // x = +-1: only the m = 0 entry survives.
    for (int m = 1; m <= n_; ++m) out[m] = 0.0;
    out[0] = (x > 0.0 || (n_ % 2 == 0)) ? 1.0 : -1.0;
    return;
  }
  // Seed Q_n^n = (-1)^n exp(log_diag + n ln s), carried as mantissa * 2^E.
  const double log2_seed = (log_diag_ + n_ * std::log(s)) / std::numbers::ln2;
  int e2 = static_cast<int>(std::lround(log2_seed));
  double cur = std::exp2(log2_seed - e2);
  if (n_ & 1) cur = -cur;
  double up = 0.0;  // Q_n^{n+1} = 0
  constexpr double kBig = 0x1p500, kBigInv = 0x1p-500;
  constexpr double kSmall = 0x1p-500, kSmallInv = 0x1p500;
  auto emit = [](double v, int e) -> double {
    if (v == 0.0) return 0.0;
    return std::ldexp(v, e);
  };
  out[n_] = emit(cur, e2);
  const double ratio = -2.0 * x / s;
  for (int m = n_; m >= 1; --m) {
    const double nxt = (ratio * m * cur - c_up_[m] * up) * inv_dn_[m];
    up = cur;
    cur = nxt;
    const double acur = std::abs(cur);
    if (acur > kBig) {
      cur *= kBigInv;
      up *= kBigInv;
      e2 += 500;
    } else if (acur < kSmall && acur != 0.0 && std::abs(up) < kSmall) {
      cur *= kSmallInv;
      up *= kSmallInv;
      e2 -= 500;
    }
    out[m - 1] = emit(cur, e2);
  }
}

void seminorm_row_fixed_degree(int n, double x, double* out) {
  FixedDegreeRowEval(n).eval(x, out);
}

void legendre_at_zero_parts(int n, int m, double* sign, double* log_abs) {
  if (n < 0 || m < 0 || m > n) throw std::domain_error("legendre_at_zero: bad order");
  if ((n + m) & 1) {
    *sign = 0.0;
    *log_abs = -std::numeric_limits<double>::infinity();
    return;
  }
  const int half = (n - m) / 2;
  *sign = ((m + half) & 1) ? -1.0 : 1.0;
  *log_abs = std::lgamma(n + m + 1.0) - std::lgamma(half + 1.0) -
             std::lgamma((n + m) / 2 + 1.0) - n * std::numbers::ln2;
}

double legendre_at_zero(int n, int m) {
  double sign, log_abs;
  legendre_at_zero_parts(n, m, &sign, &log_abs);
  if (sign == 0.0) return 0.0;
  return sign * std::exp(log_abs);
}

}  // namespace wigrot
