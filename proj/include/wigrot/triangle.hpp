#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

// Storage for one degree-n subspace of rotation coefficients H_n^{m'm}(beta).
//
// Only the triangle m = 0..n, m' = -m..m is stored ((n+1)^2 values); the
// remaining index pairs follow from the exact symmetries
//
//     H^{m'm} = H^{mm'}          and          H^{m'm} = H^{-m',-m},
//
// which get(m_prime, m) resolves on the fly.  Internally values live in
// layer-major order (fixed m', ascending m), so the recursion sweeps stream
// through memory.

namespace wigrot {

class CoeffTriangle {
 public:
  CoeffTriangle(int n, double beta)
      : n_(n), beta_(beta), v_(static_cast<std::size_t>(n + 1) * (n + 1)) {
    if (n < 0) throw std::domain_error("CoeffTriangle: negative degree");
  }

  int degree() const noexcept { return n_; }
  double beta() const noexcept { return beta_; }

  // Any |m'| <= n, |m| <= n; symmetry-resolved.
  double get(int m_prime, int m) const {
    if (m_prime > n_ || m_prime < -n_ || m > n_ || m < -n_)
      throw std::domain_error("CoeffTriangle::get: order out of range");
    if (m >= std::abs(m_prime)) return v_[idx(m_prime, m)];
    if (-m >= std::abs(m_prime)) return v_[idx(-m_prime, -m)];
    if (m_prime >= 0) return v_[idx(m, m_prime)];
    return v_[idx(-m, -m_prime)];
  }

  // Stored-slot access; requires m >= |m'|.
  double& at(int m_prime, int m) { return v_[idx(m_prime, m)]; }
  double at(int m_prime, int m) const { return v_[idx(m_prime, m)]; }

  // Contiguous layer m' over m = |m'|..n.
  double* layer(int m_prime) { return v_.data() + off(m_prime); }
  const double* layer(int m_prime) const { return v_.data() + off(m_prime); }

  std::size_t size() const noexcept { return v_.size(); }
  const std::vector<double>& data() const noexcept { return v_; }
  std::vector<double>& data() noexcept { return v_; }

 private:
  std::size_t off(int m_prime) const {
    // layers m' = 0..n first, then m' = -1..-n; layer m' holds n+1-|m'| values
    const std::size_t np1 = static_cast<std::size_t>(n_) + 1;
    if (m_prime >= 0) {
      const std::size_t k = m_prime;
      return k * np1 - k * (k - 1) / 2;
    }
    const std::size_t k = -m_prime;
    return np1 * (np1 + 1) / 2 + (k - 1) * np1 - k * (k - 1) / 2;
  }
  std::size_t idx(int m_prime, int m) const {
    return off(m_prime) + static_cast<std::size_t>(m - std::abs(m_prime));
  }

  int n_;
  double beta_;
  std::vector<double> v_;
};

// Dense (2n+1) x (2n+1) expansion, row-major over (m', m) with both indices
// running -n..n.  Guarded by a degree cap because the dense form is the
// square of the triangle's footprint.
std::vector<double> full_matrix(const CoeffTriangle& t, int max_degree = 4096);

}  // namespace wigrot
