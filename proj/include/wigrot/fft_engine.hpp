#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "wigrot/triangle.hpp"

// Fourier-analysis route to the rotation coefficients, independent of the
// recursive engine: a degree-n spherical harmonic evaluated along the circle
// theta_hat = const of the rotated frame is a band-limited function of the
// azimuth (2n+1 harmonics), and its Fourier coefficients are proportional to
// the H_n^{m'm}.  Runs in O(n^2 log n) per subspace.
//
// Two variants:
//   basic     - samples at a colatitude chosen away from Legendre zeros;
//   modified  - samples at theta_hat = pi/2 augmented with a scaled
//               colatitude derivative, so the divisor spectrum is uniformly
//               well-conditioned.

namespace wigrot {

// Spherical direction of a rotated grid node.
struct RotatedAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2*pi)
};

// One recovered spectrum column: values[m' + n] holds the complex Fourier
// coefficient for harmonic m' = -n..n of the order-m sample line.
struct SpectrumLine {
  int n = 0;
  int m = 0;
  std::vector<std::complex<double>> values;
};

// Quality report from an FFT engine run.
struct FftDiagnostics {
  double max_imag_residue = 0.0;  // max |imag part| of recovered coefficients
  int grid_size = 0;              // azimuthal sample count N
  double theta_hat = 0.0;         // sampling colatitude actually used
  bool beyond_reliable = false;   // set when n exceeds the method's range
};

// Direction (theta, phi) of the point with spherical coordinates
// (theta_hat, phi_hat) after the frame rotation by beta.  phi is normalized
// to [0, 2*pi); at the poles (sin theta < 1e-300) phi = 0 by convention.
// Throws std::domain_error unless beta is in [0, pi].
RotatedAngles rotate_point(double beta, double theta_hat, double phi_hat);

// Basic variant.  theta_hat = NaN (the default) selects the deterministic
// policy pi/2 - 0.55/n, nudged by -0.1/n while any spectral divisor falls
// below 1e-250.  An explicit theta_hat is used as given; if a divisor falls
// below 1e-250 there, throws std::domain_error.  Throws std::domain_error
// for beta outside [0, pi].
CoeffTriangle compute_subspace_fft_basic(
    int n, double beta,
    double theta_hat = std::numeric_limits<double>::quiet_NaN(),
    FftDiagnostics* diag = nullptr);

// Derivative-augmented sample g_n^m(phi_hat) of the modified variant,
// m = 1..n.  gamma_nm is the derivative weight (must be nonzero).  The
// removable singularities on the sampling circle (beta = pi/2 within 1e-12,
// and the anchor nodes phi_hat = pi*k there) are evaluated by their closed
// limits.  Throws std::domain_error on bad arguments.
std::complex<double> sample_g_modified(int n, int m, double beta,
                                       double gamma_nm, double phi_hat);

// Spectral divisor of the modified variant for harmonic m' (|m'| <= n).
// Never zero: the parity of n+|m'| always selects a nonzero Legendre value.
// Throws std::domain_error for |m'| > n or gamma_nm = 0.
double spectrum_scale(int n, int m_prime, double gamma_nm);

// Modified variant at theta_hat = pi/2 with gamma = 1/n.  grid_size = 0
// selects the default N = next_fast_len(2n+2); an explicit grid_size >= 2n+1
// is used as given (any such N recovers identical coefficients up to
// rounding).  Degrees beyond 2000 are flagged in the diagnostics, not
// rejected.  Throws std::domain_error for beta outside [0, pi] or an
// explicit grid_size < 2n+1.
CoeffTriangle compute_subspace_fft_modified(int n, double beta,
                                            int grid_size = 0,
                                            FftDiagnostics* diag = nullptr);

// One recovered coefficient column of the modified variant before taking
// real parts: values[m'+n] = G_{m'}/K_{m'}.  Diagnostic: the imaginary parts
// measure the residue the engine discards.
SpectrumLine recovered_line_modified(int n, int m, double beta,
                                     int grid_size = 0);

}  // namespace wigrot
