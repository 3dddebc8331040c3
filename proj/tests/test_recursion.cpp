#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "wigrot/analysis.hpp"
#include "wigrot/oracle.hpp"
#include "wigrot/recursion.hpp"
#include "wigrot/triangle.hpp"

using namespace wigrot;

namespace {

constexpr double kPi = std::numbers::pi;

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double subspace_max_dev(const CoeffTriangle& t, double beta) {
  double worst = 0.0;
  const int n = t.degree();
  for (int m = 0; m <= n; ++m)
    for (int mp = -m; mp <= m; ++mp)
      worst = std::max(worst, std::abs(t.get(mp, m) - h_direct(n, mp, m, beta)));
  return worst;
}

}  // namespace

TEST_SUITE("recursion") {

TEST_CASE("seed layer m' = 0") {
  {
    const std::vector<double> l = layer_m0(1, kPi / 3);
    REQUIRE(l.size() == 2);
    CHECK(near(l[0], std::cos(kPi / 3), 1e-15));
    CHECK(near(l[1], std::sin(kPi / 3) / std::sqrt(2.0), 1e-15));
  }
  for (double beta : {0.2, 1.1, kPi / 2, 2.9}) {
    for (int n : {0, 1, 2, 5, 9, 14}) {
      const std::vector<double> l = layer_m0(n, beta);
      REQUIRE(l.size() == static_cast<std::size_t>(n + 1));
      for (int m = 0; m <= n; ++m)
        CHECK(near(l[m], h_direct(n, 0, m, beta), 1e-14));
    }
  }
  CHECK_THROWS_AS(layer_m0(3, -0.1), std::domain_error);
  CHECK_THROWS_AS(layer_m0(3, kPi + 0.1), std::domain_error);
}

TEST_CASE("seed layer m' = 1") {
  for (double beta : {0.2, 1.1, kPi / 2, 2.9}) {
    for (int n : {1, 2, 5, 9, 14}) {
      const std::vector<double> l = layer_m1(n, beta);
      REQUIRE(l.size() == static_cast<std::size_t>(n));
      for (int m = 1; m <= n; ++m)
        CHECK(near(l[m - 1], h_direct(n, 1, m, beta), 1e-13));
    }
  }
}

TEST_CASE("full subspace matches the direct sum") {
  for (double beta : {0.05, 0.7, kPi / 4, kPi / 2, 2.2, 3.1}) {
    for (int n = 0; n <= 20; ++n) {
      const CoeffTriangle t = compute_subspace(n, beta);
      CHECK(subspace_max_dev(t, beta) < 1e-12);
    }
  }
}

TEST_CASE("frozen degree-one and degree-two values") {
  const CoeffTriangle t1 = compute_subspace(1, kPi / 3);
  CHECK(near(t1.get(0, 0), 0.5, 1e-14));
  CHECK(near(t1.get(0, 1), 0.61237243569579447, 1e-14));
  CHECK(near(t1.get(1, 1), -0.75, 1e-14));
  CHECK(near(t1.get(-1, 1), 0.25, 1e-14));

  const CoeffTriangle t2 = compute_subspace(2, kPi / 3);
  CHECK(near(t2.get(2, 2), 0.5625, 1e-14));
  CHECK(near(t2.get(1, 2), -0.649519052838329, 1e-14));
  CHECK(near(t2.get(0, 2), 0.4592793267718458, 1e-14));
  CHECK(near(t2.get(-1, 2), 0.2165063509461096, 1e-14));
  CHECK(near(t2.get(-2, 2), 0.0625, 1e-14));
  CHECK(near(t2.get(1, 1), 0.0, 1e-14));
  CHECK(near(t2.get(0, 1), 0.5303300858899107, 1e-14));
  CHECK(near(t2.get(0, 0), -0.125, 1e-14));
  CHECK(near(t2.get(-1, 1), 0.5, 1e-14));
}

TEST_CASE("identity pattern at beta = 0") {
  for (int n : {0, 1, 2, 8, 33, 64}) {
    const CoeffTriangle t = compute_subspace(n, 0.0);
    for (int mp = -n; mp <= n; ++mp)
      for (int m = -n; m <= n; ++m) {
        const double want = (mp == m) ? ((mp & 1) ? -1.0 : 1.0) : 0.0;
        CHECK(near(t.get(mp, m), want, 1e-13));
      }
  }
}

TEST_CASE("supplementary-angle symmetry at large degree") {
  // H^{m'm}(pi - b) = (-1)^{n - m + m'} H^{-m'm}(b): relates two
  // independently computed subspaces, so it is a real cross-check rather
  // than a restatement of the storage symmetries.
  for (int n : {16, 64, 181, 256}) {
    for (double beta : {0.35, kPi / 4, 1.2}) {
      const CoeffTriangle a = compute_subspace(n, beta);
      const CoeffTriangle b = compute_subspace(n, kPi - beta);
      double worst = 0.0;
      const int step = std::max(1, n / 19);
      for (int m = 0; m <= n; m += step)
        for (int mp = -m; mp <= m; mp += step) {
          const double sgn = ((n - m + mp) % 2 == 0) ? 1.0 : -1.0;
          worst = std::max(worst,
                           std::abs(b.get(mp, m) - sgn * a.get(-mp, m)));
        }
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("unitarity at degree 64") {
  for (double beta : {0.3, kPi / 4, kPi / 2, 2.8}) {
    const CoeffTriangle t = compute_subspace(64, beta);
    CHECK(unitarity_error(t) < 1e-12);
  }
}

TEST_CASE("batched degrees are bit-identical to single subspaces") {
  const double beta = 1.05;
  const std::vector<CoeffTriangle> all = compute_all(40, beta);
  REQUIRE(all.size() == 40);
  for (int n = 0; n < 40; ++n) {
    const CoeffTriangle single = compute_subspace(n, beta);
    REQUIRE(all[n].degree() == n);
    REQUIRE(all[n].size() == single.size());
    CHECK(std::memcmp(all[n].data().data(), single.data().data(),
                      single.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("determinism") {
  const CoeffTriangle a = compute_subspace(33, 0.77);
  const CoeffTriangle b = compute_subspace(33, 0.77);
  CHECK(std::memcmp(a.data().data(), b.data().data(),
                    a.size() * sizeof(double)) == 0);
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(compute_subspace(-1, 0.5), std::domain_error);
  CHECK_THROWS_AS(compute_subspace(4, -0.01), std::domain_error);
  CHECK_THROWS_AS(compute_subspace(4, kPi + 0.01), std::domain_error);
  CHECK_THROWS_AS(compute_all(3, -0.01), std::domain_error);
}

TEST_CASE("sweeps preserve seeded layers") {
  // run_sweeps must only write layers |m'| >= 2 and m' = -1, leaving the
  // seeds untouched.
  const int n = 12;
  const double beta = 0.9;
  CoeffTriangle t(n, beta);
  const std::vector<double> l0 = layer_m0(n, beta);
  const std::vector<double> l1 = layer_m1(n, beta);
  for (int m = 0; m <= n; ++m) t.at(0, m) = l0[m];
  for (int m = 1; m <= n; ++m) t.at(1, m) = l1[m - 1];
  run_sweeps(t);
  for (int m = 0; m <= n; ++m) CHECK(t.at(0, m) == l0[m]);
  for (int m = 1; m <= n; ++m) CHECK(t.at(1, m) == l1[m - 1]);
  CHECK(subspace_max_dev(t, beta) < 1e-12);
}

}  // TEST_SUITE
