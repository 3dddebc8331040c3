#pragma once

#include <span>
#include <vector>

// Semi-normalized associated Legendre functions
//
//     Q_n^m(x) = sqrt((n-m)!/(n+m)!) * P_n^m(x),   0 <= m <= n,  |x| <= 1,
//
// where P_n^m carries the Condon-Shortley phase (-1)^m.  The normalization
// keeps every value in [-1, 1], so tables remain finite at degrees where the
// raw P_n^m overflow.  Values that underflow to zero do so gradually; that is
// accepted behaviour at extreme degree/order combinations.

namespace wigrot {

class LegendreTable {
 public:
  // All Q_n^m(x) for n = 0..n_max.  Throws std::domain_error for |x| > 1
  // or n_max < 0.
  LegendreTable(int n_max, double x);

  int max_degree() const noexcept { return n_max_; }
  double abscissa() const noexcept { return x_; }

  // Bounds-checked element access.
  double q(int n, int m) const;

  // Row n as a contiguous span over m = 0..n.
  std::span<const double> row(int n) const;

 private:
  int n_max_;
  double x_;
  std::vector<double> q_;  // packed rows: q_[n*(n+1)/2 + m]
};

// Row n alone: Q_n^m(x) for m = 0..n, without materializing lower rows.
// Produces bit-identical values to LegendreTable(n, x).row(n).
std::vector<double> seminorm_row(int n, double x);

// Row-n evaluator with O(n) work per abscissa, independent of degree:
// descends in order from the sectoral seed Q_n^n using the fixed-degree
// three-term relation.  Descent moves toward the dominant solution, so the
// result is accurate, but it follows a different recurrence path than
// seminorm_row and is not bit-identical to it.  Intermediate magnitudes are
// tracked with a separate binary exponent so the sweep survives degrees
// where Q_n^n underflows to zero.
class FixedDegreeRowEval {
 public:
  explicit FixedDegreeRowEval(int n);

  int degree() const noexcept { return n_; }

  // Fills out[m] = Q_n^m(x) for m = 0..n (out must hold n+1 doubles).
  // Throws std::domain_error for |x| > 1.
  void eval(double x, double* out) const;

 private:
  int n_;
  double log_diag_;             // ln prod_{k=1..n} sqrt((2k-1)/(2k))
  std::vector<double> inv_dn_;  // 1/sqrt((n+m)(n-m+1)), index m = 1..n
  std::vector<double> c_up_;    // sqrt((n-m)(n+m+1)), index m = 1..n
};

// One-shot convenience wrapper around FixedDegreeRowEval.
void seminorm_row_fixed_degree(int n, double x, double* out);

// P_n^m(0), Condon-Shortley phase included, for 0 <= m <= n.  Overflows to
// +-inf at degree/order sums where the raw value exceeds double range; use
// legendre_at_zero_parts to work in log space.
double legendre_at_zero(int n, int m);

// sign in {-1, 0, +1} and log|P_n^m(0)| (log_abs is -inf when the value is
// exactly zero, i.e. when n+m is odd).
void legendre_at_zero_parts(int n, int m, double* sign, double* log_abs);

}  // namespace wigrot
