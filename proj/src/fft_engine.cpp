#include "wigrot/fft_engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wigrot/dft.hpp"
#include "wigrot/legendre.hpp"

namespace wigrot {
namespace {

constexpr double kDivisorFloor = 1e-250;
constexpr double kHalfPiWindow = 1e-12;
constexpr int kReliableDegreeCap = 2000;
// Largest double below 1: Legendre-argument nudge when sin(beta)*cos(phi_hat)
// rounds onto +-1 even though |sin(beta)| < 1.
constexpr double kEdge = 0x1.fffffffffffffp-1;

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= std::numbers::pi))
    throw std::domain_error("fft engine: beta must lie in [0, pi]");
}

double sqrt_norm(int n) {
  return std::sqrt((2.0 * n + 1.0) / (4.0 * std::numbers::pi));
}

std::complex<double> i_power(int m) {
  switch (m & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::complex<double> unit_int_pow(std::complex<double> z, int m) {
  std::complex<double> acc(1.0, 0.0);
  while (m > 0) {
    if (m & 1) acc *= z;
    z *= z;
    m >>= 1;
  }
  return acc;
}

// Sampling tables of the modified variant for one (n, beta, N) triple.
class ModifiedGrid {
 public:
  ModifiedGrid(int n, double beta, int grid)
      : n_(n),
        grid_(grid),
        gamma_(1.0 / n),
        base_(sqrt_norm(n)),
        half_pi_(std::abs(beta - 0.5 * std::numbers::pi) < kHalfPiWindow),
        rows_(n),
        qt_(static_cast<std::size_t>(n + 1) * grid) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> rowbuf(n + 1);
    if (half_pi_) {
      sinp_.resize(grid);
      for (int j = 0; j < grid; ++j) {
        const double ph = two_pi * j / grid;
        rows_.eval(std::cos(ph), rowbuf.data());
        for (int m = 0; m <= n; ++m)
          qt_[static_cast<std::size_t>(m) * grid + j] = rowbuf[m];
        sinp_[j] = std::sin(ph);
      }
      anchor_mag_ = 0.5 * gamma_ * base_ *
                    std::sqrt(static_cast<double>(n) * (n + 1.0));
    } else {
      const double sb = std::sin(beta), cb = std::cos(beta);
      cos_beta_ = cb;
      sin_beta_ = sb;
      phasor_.resize(grid);
      cum_.assign(grid, {1.0, 0.0});
      inv_u_.resize(grid);
      for (int j = 0; j < grid; ++j) {
        const double ph = two_pi * j / grid;
        const double cp = std::cos(ph), sp = std::sin(ph);
        double x = sb * cp;
        if (x >= 1.0) x = kEdge;
        else if (x <= -1.0) x = -kEdge;
        rows_.eval(x, rowbuf.data());
        for (int m = 0; m <= n; ++m)
          qt_[static_cast<std::size_t>(m) * grid + j] = rowbuf[m];
        const double iu = 1.0 / std::sqrt((1.0 - x) * (1.0 + x));
        std::complex<double> p(-cb * cp * iu, -sp * iu);
        p /= std::abs(p);  // exactly unimodular azimuth phase
        phasor_[j] = p;
        inv_u_[j] = iu;
      }
    }
  }

  // Samples g_n^m at every grid node into buf (grid() complex values).
  void column(int m, std::complex<double>* buf) {
    const int N = grid_;
    const double* qm = &qt_[static_cast<std::size_t>(m) * N];
    if (half_pi_) {
      const std::complex<double> ip = i_power(m);
      const double gm = gamma_ * m;
      const std::complex<double> a0 = -anchor_mag_;
      const std::complex<double> a1 =
          (n_ % 2) ? std::complex<double>(-anchor_mag_) : std::complex<double>(anchor_mag_);
      for (int j = 0; j < N; ++j) {
        if (j == 0 || 2 * j == N) {
          buf[j] = (m == 1) ? (j == 0 ? a0 : a1) : std::complex<double>(0.0);
          continue;
        }
        const double s = sinp_[j];
        std::complex<double> phase = ip;
        if (s < 0.0 && (m & 1)) phase = -phase;
        buf[j] = base_ * phase * std::complex<double>(1.0, -gm / s) * qm[j];
      }
      return;
    }
    if (m == last_m_ + 1) {
      for (int j = 0; j < N; ++j) cum_[j] *= phasor_[j];
    } else {
      for (int j = 0; j < N; ++j) cum_[j] = unit_int_pow(phasor_[j], m);
    }
    last_m_ = m;
    const double* qm1 = &qt_[static_cast<std::size_t>(m - 1) * N];
    const double sg = (m & 1) ? -1.0 : 1.0;
    const double cdn =
        std::sqrt(static_cast<double>(n_ + m) * static_cast<double>(n_ - m + 1));
    const double gc = gamma_ * cos_beta_ * cdn;
    const double gs = gamma_ * m * sin_beta_;
    const double scale = sg * base_;
    for (int j = 0; j < N; ++j) {
      const double a = qm[j] - gc * inv_u_[j] * qm1[j];
      const double b = gs * inv_u_[j] * qm[j];
      buf[j] = scale * (cum_[j] * (a + phasor_[j] * b));
    }
  }

  int grid() const { return grid_; }
  double gamma() const { return gamma_; }

 private:
  int n_;
  int grid_;
  double gamma_;
  double base_;
  bool half_pi_;
  FixedDegreeRowEval rows_;
  std::vector<double> qt_;  // Q_n^m(x_j), m-major
  // half-pi branch:
  std::vector<double> sinp_;
  double anchor_mag_ = 0.0;
  // general branch:
  double cos_beta_ = 0.0, sin_beta_ = 0.0;
  std::vector<std::complex<double>> phasor_;  // e^{i phi_j}
  std::vector<std::complex<double>> cum_;     // e^{i m phi_j} for last_m_
  int last_m_ = 0;
  std::vector<double> inv_u_;
};

int pick_grid(int n, int grid_size) {
  if (grid_size == 0) return next_fast_len(2 * n + 2);
  if (grid_size < 2 * n + 1)
    throw std::domain_error("fft engine: grid_size below the 2n+1 bandwidth");
  return grid_size;
}

}  // namespace

RotatedAngles rotate_point(double beta, double theta_hat, double phi_hat) {
  check_beta(beta);
  const double sb = std::sin(beta), cb = std::cos(beta);
  const double st = std::sin(theta_hat), ct = std::cos(theta_hat);
  const double cp = std::cos(phi_hat), sp = std::sin(phi_hat);
  double cos_theta = sb * st * cp + cb * ct;
  if (cos_theta > 1.0) cos_theta = 1.0;
  else if (cos_theta < -1.0) cos_theta = -1.0;
  const double sc = -cb * st * cp + sb * ct;  // sin(theta) cos(phi)
  const double ss = -st * sp;                 // sin(theta) sin(phi)
  const double sin_theta = std::hypot(sc, ss);
  RotatedAngles out;
  out.theta = std::atan2(sin_theta, cos_theta);
  if (sin_theta < 1e-300) {
    out.phi = 0.0;
    return out;
  }
  double phi = std::atan2(ss, sc);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  out.phi = phi;
  return out;
}

double spectrum_scale(int n, int m_prime, double gamma_nm) {
  const int a = std::abs(m_prime);
  if (n < 0 || a > n)
    throw std::domain_error("spectrum_scale: need |m'| <= n");
  if (gamma_nm == 0.0)
    throw std::domain_error("spectrum_scale: gamma must be nonzero");
  const double base = sqrt_norm(n);
  const double sgn_mp = (a & 1) ? -1.0 : 1.0;
  double s = 0.0, log_abs = 0.0;
  if ((n + a) % 2 == 0) {
    legendre_at_zero_parts(n, a, &s, &log_abs);
    const double rlog =
        0.5 * (std::lgamma(n - a + 1.0) - std::lgamma(n + a + 1.0));
    return sgn_mp * s * base * std::exp(log_abs + rlog);
  }
  if (a >= 1) {
    legendre_at_zero_parts(n, a - 1, &s, &log_abs);
    const double rlog =
        0.5 * (std::lgamma(n - a + 1.0) - std::lgamma(n + a + 1.0));
    const double wlog = std::log(static_cast<double>(n + a)) +
                        std::log(static_cast<double>(n - a + 1));
    return -sgn_mp * base * gamma_nm * s * std::exp(log_abs + rlog + wlog);
  }
  // m' = 0 with odd n: the order -1 value folds back onto order 1.
  legendre_at_zero_parts(n, 1, &s, &log_abs);
  return base * gamma_nm * s * std::exp(log_abs);
}

std::complex<double> sample_g_modified(int n, int m, double beta,
                                       double gamma_nm, double phi_hat) {
  if (m < 1 || m > n)
    throw std::domain_error("sample_g_modified: need 1 <= m <= n");
  if (gamma_nm == 0.0)
    throw std::domain_error("sample_g_modified: gamma must be nonzero");
  check_beta(beta);
  const double base = sqrt_norm(n);
  if (std::abs(beta - 0.5 * std::numbers::pi) < kHalfPiWindow) {
    const double c = std::cos(phi_hat);
    const double s = std::sin(phi_hat);
    if (std::abs(c) == 1.0) {  // anchor node phi_hat = pi*k
      if (m >= 2) return {0.0, 0.0};
      const double mag =
          0.5 * gamma_nm * base * std::sqrt(static_cast<double>(n) * (n + 1.0));
      if (c > 0.0) return {-mag, 0.0};
      return {(n % 2) ? -mag : mag, 0.0};
    }
    std::vector<double> row(n + 1);
    seminorm_row_fixed_degree(n, c, row.data());
    std::complex<double> phase = i_power(m);
    if (s < 0.0 && (m & 1)) phase = -phase;
    return base * phase * std::complex<double>(1.0, -gamma_nm * m / s) * row[m];
  }
  const double sb = std::sin(beta), cb = std::cos(beta);
  const double cp = std::cos(phi_hat), sp = std::sin(phi_hat);
  double x = sb * cp;
  if (x >= 1.0) x = kEdge;
  else if (x <= -1.0) x = -kEdge;
  const double inv_u = 1.0 / std::sqrt((1.0 - x) * (1.0 + x));
  std::complex<double> eip(-cb * cp * inv_u, -sp * inv_u);
  eip /= std::abs(eip);
  std::vector<double> row(n + 1);
  seminorm_row_fixed_degree(n, x, row.data());
  const double cdn =
      std::sqrt(static_cast<double>(n + m) * static_cast<double>(n - m + 1));
  const std::complex<double> bracket =
      row[m] - gamma_nm * inv_u *
                   (cb * cdn * row[m - 1] -
                    static_cast<double>(m) * eip * sb * row[m]);
  const double sg = (m & 1) ? -1.0 : 1.0;
  return sg * base * unit_int_pow(eip, m) * bracket;
}

CoeffTriangle compute_subspace_fft_basic(int n, double beta, double theta_hat,
                                         FftDiagnostics* diag) {
  if (n < 0) throw std::domain_error("compute_subspace_fft_basic: negative degree");
  check_beta(beta);
  CoeffTriangle t(n, beta);
  if (n == 0) {
    t.at(0, 0) = 1.0;
    if (diag) *diag = {0.0, 0, theta_hat, false};
    return t;
  }
  const bool auto_theta = std::isnan(theta_hat);
  double th = auto_theta ? 0.5 * std::numbers::pi - 0.55 / n : theta_hat;
  const double base = sqrt_norm(n);
  FixedDegreeRowEval rows(n);
  std::vector<double> qhat(n + 1);
  for (int attempt = 0;; ++attempt) {
    rows.eval(std::cos(th), qhat.data());
    double dmin = std::abs(base * qhat[0]);
    for (int m = 1; m <= n; ++m)
      dmin = std::min(dmin, std::abs(base * qhat[m]));
    if (dmin >= kDivisorFloor) break;
    if (!auto_theta)
      throw std::domain_error(
          "compute_subspace_fft_basic: divisor underflow at requested theta_hat");
    if (attempt >= 200)
      throw std::runtime_error(
          "compute_subspace_fft_basic: no acceptable theta_hat found");
    th -= 0.1 / n;
  }
  std::vector<double> div(2 * n + 1);
  for (int mp = -n; mp <= n; ++mp)
    div[mp + n] = ((mp & 1) ? -1.0 : 1.0) * base * qhat[std::abs(mp)];

  const int N = next_fast_len(2 * n + 2);
  std::vector<double> qt(static_cast<std::size_t>(n + 1) * N);
  std::vector<std::complex<double>> phasor(N), cum(N, {1.0, 0.0}), buf(N),
      spec(N);
  std::vector<double> rowbuf(n + 1);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < N; ++j) {
    const RotatedAngles ra = rotate_point(beta, th, two_pi * j / N);
    rows.eval(std::cos(ra.theta), rowbuf.data());
    for (int m = 0; m <= n; ++m)
      qt[static_cast<std::size_t>(m) * N + j] = rowbuf[m];
    phasor[j] = std::polar(1.0, ra.phi);
  }
  Dft dft(N);
  double residue = 0.0;
  for (int m = 1; m <= n; ++m) {
    const double scale = ((m & 1) ? -1.0 : 1.0) * base;
    const double* qm = &qt[static_cast<std::size_t>(m) * N];
    for (int j = 0; j < N; ++j) {
      cum[j] *= phasor[j];
      buf[j] = (scale * qm[j]) * cum[j];
    }
    dft.forward_scaled(buf.data(), spec.data());
    for (int mp = -m; mp <= m; ++mp) {
      const std::complex<double> g = spec[(mp + N) % N];
      const double d = div[mp + n];
      t.at(mp, m) = g.real() / d;
      residue = std::max(residue, std::abs(g.imag() / d));
    }
  }
  rows.eval(std::cos(beta), rowbuf.data());
  t.at(0, 0) = rowbuf[0];
  if (diag) *diag = {residue, N, th, n > kReliableDegreeCap};
  return t;
}

CoeffTriangle compute_subspace_fft_modified(int n, double beta, int grid_size,
                                            FftDiagnostics* diag) {
  if (n < 0)
    throw std::domain_error("compute_subspace_fft_modified: negative degree");
  check_beta(beta);
  CoeffTriangle t(n, beta);
  const double half_pi = 0.5 * std::numbers::pi;
  if (n == 0) {
    t.at(0, 0) = 1.0;
    if (diag) *diag = {0.0, 0, half_pi, false};
    return t;
  }
  const int N = pick_grid(n, grid_size);
  ModifiedGrid grid(n, beta, N);
  std::vector<double> div(2 * n + 1);
  for (int mp = -n; mp <= n; ++mp)
    div[mp + n] = spectrum_scale(n, mp, grid.gamma());
  std::vector<std::complex<double>> buf(N), spec(N);
  Dft dft(N);
  double residue = 0.0;
  for (int m = 1; m <= n; ++m) {
    grid.column(m, buf.data());
    dft.forward_scaled(buf.data(), spec.data());
    for (int mp = -m; mp <= m; ++mp) {
      const std::complex<double> g = spec[(mp + N) % N];
      const double d = div[mp + n];
      t.at(mp, m) = g.real() / d;
      residue = std::max(residue, std::abs(g.imag() / d));
    }
  }
  std::vector<double> rowbuf(n + 1);
  FixedDegreeRowEval(n).eval(std::cos(beta), rowbuf.data());
  t.at(0, 0) = rowbuf[0];
  if (diag) *diag = {residue, N, half_pi, n > kReliableDegreeCap};
  return t;
}

SpectrumLine recovered_line_modified(int n, int m, double beta,
                                     int grid_size) {
  if (n < 1 || m < 1 || m > n)
    throw std::domain_error("recovered_line_modified: need 1 <= m <= n");
  check_beta(beta);
  const int N = pick_grid(n, grid_size);
  ModifiedGrid grid(n, beta, N);
  std::vector<std::complex<double>> buf(N), spec(N);
  grid.column(m, buf.data());
  Dft dft(N);
  dft.forward_scaled(buf.data(), spec.data());
  SpectrumLine line;
  line.n = n;
  line.m = m;
  line.values.resize(2 * n + 1);
  for (int mp = -n; mp <= n; ++mp)
    line.values[mp + n] =
        spec[(mp + N) % N] / spectrum_scale(n, mp, grid.gamma());
  return line;
}

}  // namespace wigrot
