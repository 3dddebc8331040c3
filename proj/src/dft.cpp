#include "wigrot/dft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace wigrot {
namespace {

// FFTW's planner mutates global state; serialize plan creation/destruction.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

int next_fast_len(int n) {
  if (n < 1) throw std::domain_error("next_fast_len: length must be positive");
  for (int len = n;; ++len) {
    int r = len;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return len;
  }
}

Dft::Dft(int size) : size_(size), plan_(nullptr), buf_(nullptr) {
  if (size < 1) throw std::domain_error("Dft: size must be positive");
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(size));
  if (!buf) throw std::bad_alloc();
  fftw_plan plan =
      fftw_plan_dft_1d(size, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  if (!plan) {
    fftw_free(buf);
    throw std::runtime_error("Dft: planner failed");
  }
  buf_ = buf;
  plan_ = plan;
}

Dft::~Dft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(static_cast<fftw_complex*>(buf_));
}

void Dft::forward_scaled(const std::complex<double>* in,
                         std::complex<double>* out) const {
  fftw_complex* buf = static_cast<fftw_complex*>(buf_);
  std::memcpy(buf, in, sizeof(fftw_complex) * static_cast<std::size_t>(size_));
  fftw_execute(static_cast<fftw_plan>(plan_));
  const double scale = 1.0 / size_;
  const fftw_complex* b = buf;
  for (int k = 0; k < size_; ++k)
    out[k] = std::complex<double>(b[k][0] * scale, b[k][1] * scale);
}

}  // namespace wigrot
