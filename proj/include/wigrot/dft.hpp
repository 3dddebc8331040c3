#pragma once

#include <complex>

// Discrete Fourier transform primitive used by the FFT coefficient engines.
//
// Convention: for a length-N sample vector g_j = g(2*pi*j/N),
//
//     forward_scaled:  G_k = (1/N) sum_j g_j exp(-2*pi*i*j*k/N),
//
// so that g(phi) = sum_k G_k exp(i*k*phi) for band-limited g.  Signed
// harmonic indices map to bins with wraparound: index m' lives in bin
// (m' + N) mod N.

namespace wigrot {

// Smallest length >= n whose prime factors are all in {2, 3, 5}.
// Throws std::domain_error for n < 1.
int next_fast_len(int n);

// Reusable complex transform plan of fixed size.  Planning is serialized
// internally (the planner is not reentrant); execution is thread-safe as
// long as each thread uses its own Dft instance.
class Dft {
 public:
  explicit Dft(int size);
  ~Dft();

  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  int size() const noexcept { return size_; }

  // out[k] = (1/size) sum_j in[j] exp(-2*pi*i*j*k/size).
  // in and out must each hold size() elements; they may alias.
  void forward_scaled(const std::complex<double>* in,
                      std::complex<double>* out) const;

 private:
  int size_;
  void* plan_;  // fftw_plan
  void* buf_;   // fftw_complex scratch, planned in-place
};

}  // namespace wigrot
