#include "wigrot/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "wigrot/coeffs.hpp"
#include "wigrot/fft_engine.hpp"
#include "wigrot/recursion.hpp"

namespace wigrot {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_beta_range(double beta, const char* who) {
  if (!(beta >= 0.0 && beta <= kPi))
    throw std::domain_error(std::string(who) + ": beta must lie in [0, pi]");
}

// x * log(x) extended continuously by 0 at x = 0; negative inputs are
// rounding residue of analytically nonnegative quantities and clamp to 0.
double xlogx(double x) {
  if (!(x > 0.0)) return 0.0;
  return x * std::log(x);
}

// w * log(a) for analytically nonnegative weights w; tiny negative w is
// rounding residue and is treated as absent (guards w * log(0) = NaN).
double wlog(double w, double a) {
  if (!(w > 0.0)) return 0.0;
  return w * std::log(a);
}

}  // namespace

double magnitude_bound(int n, int m_prime, int m, double beta) {
  if (n < 0 || std::abs(m) > n || std::abs(m_prime) > n)
    throw std::domain_error("magnitude_bound: order out of range");
  check_beta_range(beta, "magnitude_bound");

  // Reduce to beta <= pi/2 (half-turn flip negates m') and then to the
  // canonical wedge m >= |m'| using the exact symmetries; the magnitude is
  // invariant under both.
  double b = beta;
  int mp = m_prime, mm = m;
  if (b > kPi / 2) {
    b = kPi - b;
    mp = -mp;
  }
  if (std::abs(mp) > std::abs(mm)) std::swap(mp, mm);
  if (mm < 0) {
    mm = -mm;
    mp = -mp;
  }

  const double c = std::cos(b / 2);
  const double s = std::sin(b / 2);
  const double t = std::tan(b / 2);
  const double t2 = t * t;
  const int M = mp + mm;

  // Largest-term index: the term ratio crosses 1 at the smaller root of
  //   (1 - t^2) s^2 - [(2n - M) + t^2 (M + 2)] s + (n - m)(n - m') - t^2 (M + 1) = 0,
  // evaluated in the subtraction-free form (stable through t -> 1, where the
  // quadratic degenerates and the root tends to a finite limit).
  const double aq = 1.0 - t2;
  const double neg_bq = (2.0 * n - M) + t2 * (M + 2);
  const double cq =
      static_cast<double>(n - mm) * (n - mp) - t2 * (M + 1);
  const double disc = std::max(0.0, neg_bq * neg_bq - 4.0 * aq * cq);
  const double sigma1 = 2.0 * cq / (neg_bq + std::sqrt(disc));

  const int s_max = n - mm;
  int s_base = 0;
  if (sigma1 > 0.0)
    s_base = static_cast<int>(std::floor(std::min(
        sigma1, static_cast<double>(s_max) + 1.0)));

  // The true argmax sits within one index of the root; score the
  // neighborhood with the actual log-term so the result stays an upper
  // bound even when the floor lands on the shoulder.
  const double log_c = std::log(c);
  double best = -std::numeric_limits<double>::infinity();
  for (int ds = -1; ds <= 1; ++ds) {
    const int sg = s_base + ds;
    if (sg < 0 || sg > s_max) continue;
    const int pc = 2 * sg + M;
    const int ps = 2 * (n - sg) - M;
    double lt = -(std::lgamma(sg + 1.0) + std::lgamma(n - mp - sg + 1.0) +
                  std::lgamma(n - mm - sg + 1.0) + std::lgamma(M + sg + 1.0));
    if (pc > 0) lt += pc * log_c;
    if (ps > 0) {
      if (s == 0.0) continue;  // term vanishes identically
      lt += ps * std::log(s);
    }
    if (lt > best) best = lt;
  }

  const double log_rho =
      0.5 * (std::lgamma(n + mm + 1.0) + std::lgamma(n - mm + 1.0) +
             std::lgamma(n + mp + 1.0) + std::lgamma(n - mp + 1.0));
  const double log_bound = log_rho + std::log(n - mm + 1.0) + best;
  return std::min(1.0, std::exp(log_bound));
}

double lambda_exponent(double mu, double mu_prime, double beta) {
  if (!(mu >= -1.0 && mu <= 1.0) || !(mu_prime >= -1.0 && mu_prime <= 1.0))
    throw std::domain_error("lambda_exponent: mu must lie in [-1, 1]");
  check_beta_range(beta, "lambda_exponent");

  const double c = std::cos(beta / 2);
  const double s = std::sin(beta / 2);
  const double t = std::tan(beta / 2);
  const double t2 = t * t;

  // Saddle offset xi: smaller root of
  //   (1 - t^2) xi^2 - [2 - (1 - t^2)(mu + mu')] xi + (1 - mu)(1 - mu') = 0
  // in subtraction-free form; tends to (1 - mu)(1 - mu')/2 as t -> 1 and to
  // 0 as t -> inf, with no branch switch.
  const double aq = 1.0 - t2;
  const double B = 2.0 - aq * (mu + mu_prime);
  const double cq = (1.0 - mu) * (1.0 - mu_prime);
  double xi = 0.0;
  if (cq != 0.0) {
    const double disc = std::max(0.0, B * B - 4.0 * aq * cq);
    xi = 2.0 * cq / (B + std::sqrt(disc));
  }

  return 0.5 * (xlogx(1.0 - mu) + xlogx(1.0 - mu_prime) + xlogx(1.0 + mu) +
                xlogx(1.0 + mu_prime)) -
         xlogx(xi) - xlogx(mu + mu_prime + xi) - xlogx(1.0 - mu - xi) -
         xlogx(1.0 - mu_prime - xi) + wlog(mu + mu_prime + 2.0 * xi, c) +
         wlog(2.0 - mu - mu_prime - 2.0 * xi, s);
}

EllipseRegion ellipse_contains(double mu, double mu_prime, double beta) {
  check_beta_range(beta, "ellipse_contains");
  const double c = std::cos(beta / 2);
  const double s = std::sin(beta / 2);
  const double p = mu + mu_prime;
  const double q = mu - mu_prime;
  double v = 0.0;
  if (p != 0.0) {
    if (c == 0.0) return EllipseRegion::outside;  // collapsed axis
    v += p * p / (4.0 * c * c);
  }
  if (q != 0.0) {
    if (s == 0.0) return EllipseRegion::outside;  // collapsed axis
    v += q * q / (4.0 * s * s);
  }
  if (v < 1.0 - 1e-12) return EllipseRegion::inside;
  if (v <= 1.0 + 1e-12) return EllipseRegion::boundary;
  return EllipseRegion::outside;
}

double cfl_speed(int n, int m, int m_prime) {
  if (n < 1 || std::abs(m) > n || std::abs(m_prime) > n)
    throw std::domain_error("cfl_speed: order out of range");
  if (m_prime == 0)
    throw std::domain_error("cfl_speed: m' = 0 is a degenerate characteristic");
  const auto k = [n](int order) {
    return 0.5 * (coeff_d(n, order - 1) + coeff_d(n, order));
  };
  const double km = k(m);
  const double kmp = k(m_prime);
  // Both orientations are formed from the same well-conditioned division so
  // that cfl_speed(n, a, b) == 1.0 / cfl_speed(n, b, a) holds exactly.
  if (std::abs(km) >= std::abs(kmp)) return km / kmp;
  return 1.0 / (kmp / km);
}

namespace {

std::size_t dense_budget_bytes() {
  if (const char* env = std::getenv("WIGROT_DENSE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{3} << 30;
}

int thread_count() {
  long v = 0;
  if (const char* env = std::getenv("WIGROT_THREADS")) {
    char* end = nullptr;
    v = std::strtol(env, &end, 10);
    if (end == env || v < 0) v = 0;
  }
  if (v == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    v = hc ? static_cast<long>(hc) : 1;
  }
  return static_cast<int>(v);
}

// Max deviation of (D D)_{ij} from the identity over the quarter i <= j,
// i + j <= N - 1; the product inherits symmetry and persymmetry from D, so
// the quarter determines the whole defect.  Rows are scanned in blocks of
// eight so each pass over row i feeds eight independent dot products.
double unitarity_quarter(const double* A, int N, int i_begin, int i_step) {
  double worst = 0.0;
  for (int i = i_begin; 2 * i <= N - 1; i += i_step) {
    const double* ri = A + static_cast<std::size_t>(i) * N;
    const int j_hi = N - 1 - i;
    int j = i;
    for (; j + 7 <= j_hi; j += 8) {
      const double* r0 = A + static_cast<std::size_t>(j) * N;
      const double* r1 = r0 + N;
      const double* r2 = r1 + N;
      const double* r3 = r2 + N;
      const double* r4 = r3 + N;
      const double* r5 = r4 + N;
      const double* r6 = r5 + N;
      const double* r7 = r6 + N;
      double a0 = 0, a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0, a7 = 0;
      for (int k = 0; k < N; ++k) {
        const double a = ri[k];
        a0 += a * r0[k];
        a1 += a * r1[k];
        a2 += a * r2[k];
        a3 += a * r3[k];
        a4 += a * r4[k];
        a5 += a * r5[k];
        a6 += a * r6[k];
        a7 += a * r7[k];
      }
      const double acc[8] = {a0, a1, a2, a3, a4, a5, a6, a7};
      for (int l = 0; l < 8; ++l) {
        const double dev = std::abs(acc[l] - (j + l == i ? 1.0 : 0.0));
        if (dev > worst) worst = dev;
      }
    }
    for (; j <= j_hi; ++j) {
      const double* rj = A + static_cast<std::size_t>(j) * N;
      double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
      int k = 0;
      for (; k + 3 < N; k += 4) {
        s0 += ri[k] * rj[k];
        s1 += ri[k + 1] * rj[k + 1];
        s2 += ri[k + 2] * rj[k + 2];
        s3 += ri[k + 3] * rj[k + 3];
      }
      for (; k < N; ++k) s0 += ri[k] * rj[k];
      const double dev = std::abs((s0 + s1 + s2 + s3) - (j == i ? 1.0 : 0.0));
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

}  // namespace

double unitarity_error(const CoeffTriangle& t) {
  const int n = t.degree();
  const int N = 2 * n + 1;
  const std::size_t bytes =
      static_cast<std::size_t>(N) * N * sizeof(double);
  if (bytes > dense_budget_bytes())
    throw std::length_error(
        "unitarity_error: dense matrix exceeds the memory budget "
        "(raise WIGROT_DENSE_BUDGET to override)");

  const std::vector<double> dense = full_matrix(t, n);
  const double* A = dense.data();

  int threads = thread_count();
  const int rows = (N + 1) / 2;
  if (threads > rows) threads = rows;
  if (threads <= 1) return unitarity_quarter(A, N, 0, 1);

  std::vector<double> partial(threads, 0.0);
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int w = 1; w < threads; ++w)
    pool.emplace_back([A, N, w, threads, &partial] {
      partial[w] = unitarity_quarter(A, N, w, threads);
    });
  partial[0] = unitarity_quarter(A, N, 0, threads);
  for (auto& th : pool) th.join();
  return *std::max_element(partial.begin(), partial.end());
}

double unitarity_error(const std::vector<double>& dense, int n) {
  if (n < 0) throw std::domain_error("unitarity_error: negative degree");
  const std::size_t N = 2 * static_cast<std::size_t>(n) + 1;
  if (dense.size() != N * N)
    throw std::invalid_argument("unitarity_error: size does not match degree");
  const double* A = dense.data();
  std::vector<double> row(N);
  double worst = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t k = 0; k < N; ++k) {
      const double a = A[i * N + k];
      if (a == 0.0) continue;
      const double* rk = A + k * N;
      for (std::size_t j = 0; j < N; ++j) row[j] += a * rk[j];
    }
    for (std::size_t j = 0; j < N; ++j) {
      const double dev = std::abs(row[j] - (i == j ? 1.0 : 0.0));
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

double cross_error(const CoeffTriangle& a, const CoeffTriangle& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("cross_error: degree mismatch");
  if (a.beta() != b.beta())
    throw std::invalid_argument("cross_error: angle mismatch");
  // Symmetry expansion applies the same index map to both operands, so the
  // dense maximum equals the maximum over the stored wedge.
  const std::vector<double>& va = a.data();
  const std::vector<double>& vb = b.data();
  double worst = 0.0;
  for (std::size_t k = 0; k < va.size(); ++k) {
    const double dev = std::abs(va[k] - vb[k]);
    if (dev > worst) worst = dev;
  }
  return worst;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

CoeffTriangle noise_realization(int n, const NoiseModel& model, int trial) {
  if (n < 2)
    throw std::domain_error(
        "noise_realization: need n >= 2 so the sweeps derive at least one layer");
  if (trial < 0) throw std::domain_error("noise_realization: negative trial");

  std::mt19937_64 eng(
      splitmix64(model.seed + static_cast<std::uint64_t>(trial)));
  const auto uniform01 = [&eng] {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };

  CoeffTriangle t(n, 0.0);
  double* l0 = t.layer(0);
  double* l1 = t.layer(1);
  if (model.kind == NoiseModel::Kind::uniform) {
    for (int m = 0; m <= n; ++m) l0[m] = 2.0 * uniform01() - 1.0;
    for (int m = 1; m <= n; ++m) l1[m - 1] = 2.0 * uniform01() - 1.0;
  } else {
    for (int m = 0; m <= n; ++m) l0[m] = uniform01();
    for (int m = 1; m <= n; ++m)
      l1[m - 1] = ((m & 1) ? -1.0 : 1.0) * uniform01();
  }
  run_sweeps(t);
  return t;
}

double noise_amplification(int n, const NoiseModel& model) {
  if (model.trials < 1)
    throw std::domain_error("noise_amplification: need at least one trial");
  double worst = 0.0;
  for (int trial = 0; trial < model.trials; ++trial) {
    const CoeffTriangle t = noise_realization(n, model, trial);
    double seed_max = 0.0;
    const double* l0 = t.layer(0);
    for (int m = 0; m <= n; ++m) seed_max = std::max(seed_max, std::abs(l0[m]));
    const double* l1 = t.layer(1);
    for (int m = 1; m <= n; ++m)
      seed_max = std::max(seed_max, std::abs(l1[m - 1]));
    double all_max = 0.0;
    for (const double v : t.data()) all_max = std::max(all_max, std::abs(v));
    worst = std::max(worst, all_max / seed_max);
  }
  return worst;
}

double fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw std::domain_error("fit_power_law: need at least two points");
  const std::size_t count = points.size();
  double mean_x = 0.0, mean_y = 0.0;
  std::vector<double> lx(count), ly(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& [x, y] = points[i];
    if (!(x > 0.0) || !(y > 0.0))
      throw std::domain_error("fit_power_law: coordinates must be positive");
    lx[i] = std::log(x);
    ly[i] = std::log(y);
    mean_x += lx[i];
    mean_y += ly[i];
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dx = lx[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (ly[i] - mean_y);
  }
  if (sxx == 0.0)
    throw std::domain_error("fit_power_law: need at least two distinct x");
  return sxy / sxx;
}

std::vector<ExperimentRecord> benchmark(EngineKind engine,
                                        const std::vector<int>& n_list,
                                        double beta, int repeats) {
  if (repeats < 1)
    throw std::domain_error("benchmark: need at least one repeat");
  std::vector<ExperimentRecord> records;
  records.reserve(n_list.size());
  for (const int n : n_list) {
    std::vector<double> times;
    times.reserve(repeats);
    double checksum = 0.0;
    for (int r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const CoeffTriangle t =
          engine == EngineKind::recursion
              ? compute_subspace(n, beta)
              : (engine == EngineKind::fft_basic
                     ? compute_subspace_fft_basic(n, beta)
                     : compute_subspace_fft_modified(n, beta));
      const auto stop = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(stop - start).count());
      double acc = 0.0;
      for (const double v : t.data()) acc += v;
      checksum = acc;
    }
    std::sort(times.begin(), times.end());
    const std::size_t h = times.size() / 2;
    const double median =
        (times.size() % 2) ? times[h] : 0.5 * (times[h - 1] + times[h]);
    records.push_back({n, beta, "checksum", checksum, median});
  }
  return records;
}

}  // namespace wigrot
