#include "wigrot/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "wigrot/coeffs.hpp"

namespace wigrot {

BetaReduction reduce_beta(double beta) {
  if (!std::isfinite(beta)) throw std::domain_error("reduce_beta: non-finite angle");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double b = std::fmod(beta, two_pi);
  if (b < 0.0) b += two_pi;
  if (b <= std::numbers::pi) return {b, false};
  return {two_pi - b, true};
}

double h_direct(int n, int m_prime, int m, double beta) {
  if (n < 0 || n > kDirectMaxDegree)
    throw std::domain_error("h_direct: degree out of range");
  if (std::abs(m) > n || std::abs(m_prime) > n)
    throw std::domain_error("h_direct: order out of range");
  const BetaReduction r = reduce_beta(beta);
  const double flip = (r.negate_odd && ((m + m_prime) & 1)) ? -1.0 : 1.0;

  // Extended precision throughout: the alternating sum can cancel a few
  // orders of magnitude, and this value serves as the reference other
  // methods are measured against.
  const long double c = std::cos(0.5L * r.beta);
  const long double s = std::sin(0.5L * r.beta);
  const long double lc = std::log(c);
  const long double ls = std::log(s);
  const long double log_rho =
      0.5L * (std::lgamma(n + m + 1.0L) + std::lgamma(n - m + 1.0L) +
              std::lgamma(n + m_prime + 1.0L) + std::lgamma(n - m_prime + 1.0L));

  // Alternating sum evaluated as sign * exp(log-magnitude), rescaled by the
  // largest term and accumulated with Neumaier compensation.
  const int lo = std::max(0, -(m + m_prime));
  const int hi = std::min(n - m_prime, n - m);
  std::vector<long double> logs;
  std::vector<long double> signs;
  logs.reserve(hi - lo + 1);
  signs.reserve(hi - lo + 1);
  long double log_max = -std::numeric_limits<long double>::infinity();
  for (int sig = lo; sig <= hi; ++sig) {
    const int pc = 2 * sig + m + m_prime;        // power of cos(beta/2)
    const int ps = 2 * (n - sig) - m - m_prime;  // power of sin(beta/2)
    if ((pc > 0 && c == 0.0L) || (ps > 0 && s == 0.0L)) continue;
    long double lg = log_rho - std::lgamma(sig + 1.0L) -
                     std::lgamma(n - m_prime - sig + 1.0L) -
                     std::lgamma(n - m - sig + 1.0L) -
                     std::lgamma(m + m_prime + sig + 1.0L);
    if (pc > 0) lg += pc * lc;
    if (ps > 0) lg += ps * ls;
    logs.push_back(lg);
    signs.push_back(((n - sig) & 1) ? -1.0L : 1.0L);
    log_max = std::max(log_max, lg);
  }
  if (logs.empty() || !std::isfinite(log_max)) return 0.0;

  long double sum = 0.0L;
  long double comp = 0.0L;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const long double v = signs[i] * std::exp(logs[i] - log_max);
    const long double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return static_cast<double>(flip * eps(m_prime) * eps(m) *
                             std::exp(log_max) * (sum + comp));
}

double wigner_d_from_h(int m_prime, int m, double h) {
  return eps(m_prime) * eps(-m) * h;
}

CoeffTriangle flip_reconstruct(const CoeffTriangle& half_pi, double beta) {
  if (std::abs(half_pi.beta() - std::numbers::pi / 2) > 1e-9)
    throw std::domain_error("flip_reconstruct: source subspace must be at pi/2");
  const int n = half_pi.degree();
  CoeffTriangle out(n, beta);
  std::vector<double> cosv(n + 1), sinv(n + 1);
  for (int nu = 0; nu <= n; ++nu) {
    cosv[nu] = std::cos(nu * beta);
    sinv[nu] = std::sin(nu * beta);
  }
  for (int mp = -n; mp <= n; ++mp) {
    for (int m = std::abs(mp); m <= n; ++m) {
      // quadrant of the quarter-turn phase pi*(m'+m)/2
      const int k = (((mp + m) % 4) + 4) % 4;
      double total = 0.0;
      for (int nu = 0; nu <= n; ++nu) {
        double phase;
        switch (k) {
          case 0: phase = cosv[nu]; break;
          case 1: phase = -sinv[nu]; break;
          case 2: phase = -cosv[nu]; break;
          default: phase = sinv[nu]; break;
        }
        const double w = (nu == 0) ? 1.0 : 2.0;
        total += w * half_pi.get(mp, nu) * half_pi.get(m, nu) * phase;
      }
      out.at(mp, m) = total;
    }
  }
  return out;
}

std::vector<double> full_matrix(const CoeffTriangle& t, int max_degree) {
  const int n = t.degree();
  if (n > max_degree) throw std::length_error("full_matrix: degree exceeds dense cap");
  const std::size_t w = 2 * static_cast<std::size_t>(n) + 1;
  std::vector<double> out(w * w);
  for (int mp = -n; mp <= n; ++mp)
    for (int m = -n; m <= n; ++m)
      out[static_cast<std::size_t>(mp + n) * w + static_cast<std::size_t>(m + n)] =
          t.get(mp, m);
  return out;
}

}  // namespace wigrot
