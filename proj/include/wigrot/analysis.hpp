#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wigrot/triangle.hpp"

// Diagnostics around the coefficient tables: a sharp per-entry magnitude
// bound, the exponential decay rate and oscillatory-region test that govern
// where entries are negligible, stability metrics (unitarity defect, noise
// growth through the sweeps, CFL-style characteristic speeds), and small
// experiment drivers (power-law fits, wall-clock benchmarks).

namespace wigrot {

// --- Magnitude bound -------------------------------------------------------

// Upper bound on |H_n^{m'm}(beta)|, capped at 1.  Built from the largest
// term of the defining sum times the term count, evaluated in log space, so
// it is finite and meaningful for any degree.  The bound is attained (as an
// equality) when the sum has a single term, e.g. at m = n.
double magnitude_bound(int n, int m_prime, int m, double beta);

// --- Asymptotic region diagnostics -----------------------------------------

// Decay exponent lambda(mu, mu', beta) for mu = m/n, mu' = m'/n held fixed
// as n grows: outside the oscillatory region, |H| ~ exp(n * lambda) with
// lambda < 0.  Requires mu, mu' in [-1, 1] and beta in [0, pi].
double lambda_exponent(double mu, double mu_prime, double beta);

// Classification of (mu, mu') against the ellipse
//
//     (mu + mu')^2 / (4 cos^2(beta/2)) + (mu - mu')^2 / (4 sin^2(beta/2)) = 1,
//
// whose interior is the region where entries oscillate at O(n^{-1/2}) size
// instead of decaying exponentially.  "boundary" means the quadratic form
// sits within 1e-12 of 1.  Degenerate beta (0 or pi) collapses one axis:
// points off that axis classify as outside, as the limit dictates.
enum class EllipseRegion { inside, boundary, outside };
EllipseRegion ellipse_contains(double mu, double mu_prime, double beta);

// Characteristic speed of the sweep recursion viewed as a one-sided
// advection scheme: the ratio of the band-edge wavespeeds at orders m and
// m'.  |speed| <= 1 along the actual sweep directions is what keeps the
// recursion stable.  m' = 0 is a degenerate characteristic (zero speed
// there), so it is rejected.  The two orientations are exact reciprocals:
// cfl_speed(n, a, b) == 1.0 / cfl_speed(n, b, a) bit-for-bit.
double cfl_speed(int n, int m, int m_prime);

// --- Error metrics ----------------------------------------------------------

// eps0: max |(H H)_{m'm} - delta_{m'm}| over the dense (2n+1)^2 product.
// H is orthogonal (and symmetric) in exact arithmetic, so this measures
// accumulated rounding error without reference values.  Materializes the
// dense matrix; refuses (std::length_error) when that would exceed the
// memory budget, 3 GiB by default or the byte count in WIGROT_DENSE_BUDGET.
// Honors WIGROT_THREADS (0 or unset = one thread per hardware core).
double unitarity_error(const CoeffTriangle& t);

// Same metric for an already-dense (2n+1) x (2n+1) row-major matrix; makes
// no symmetry assumptions about the input.
double unitarity_error(const std::vector<double>& dense, int n);

// eps1: max |a - b| over the full symmetry-expanded index set (equal, by
// construction, to the max over stored entries).  Degree and angle must
// match.
double cross_error(const CoeffTriangle& a, const CoeffTriangle& b);

// --- Noise propagation through the sweeps -----------------------------------

struct NoiseModel {
  enum class Kind {
    uniform,    // independent U(-1, 1) in both seed layers
    coherent    // U(0, 1) in layer 0; U(0, 1) * (-1)^m in layer 1
  };
  Kind kind = Kind::uniform;
  std::uint64_t seed = 0;
  int trials = 10;
};

// One realization: seeds layers m' = 0 and 1 with noise drawn from the
// model (stream derived from model.seed and the trial index, so results are
// reproducible bit-for-bit), runs the sweeps, and returns the propagated
// field.  Requires n >= 2 so there is at least one derived layer.
CoeffTriangle noise_realization(int n, const NoiseModel& model, int trial);

// Worst growth factor max|all entries| / max|seed entries| over the model's
// trials.
double noise_amplification(int n, const NoiseModel& model);

// --- Experiment helpers -----------------------------------------------------

// Least-squares slope of log y against log x.  Requires at least two points
// with positive coordinates and at least two distinct x values.
double fit_power_law(const std::vector<std::pair<double, double>>& points);

enum class EngineKind { recursion, fft_basic, fft_modified };

struct ExperimentRecord {
  int n = 0;
  double beta = 0.0;
  std::string metric;
  double value = 0.0;
  double wall_seconds = 0.0;
};

// Computes the degree-n subspace `repeats` times per entry of n_list and
// records the median wall time.  value carries a checksum of the table so
// the computation cannot be elided.
std::vector<ExperimentRecord> benchmark(EngineKind engine,
                                        const std::vector<int>& n_list,
                                        double beta, int repeats);

}  // namespace wigrot
