// Python module exposing the main operations: subspace computation by any
// engine, Wigner d conversion, rotation of expansions, and the analysis
// metrics.  Tables cross the boundary as dense (2n+1) x (2n+1) numpy
// arrays indexed [m' + n, m + n].

#include <complex>
#include <cstring>
#include <stdexcept>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wigrot/analysis.hpp"
#include "wigrot/fft_engine.hpp"
#include "wigrot/oracle.hpp"
#include "wigrot/recursion.hpp"
#include "wigrot/rotation.hpp"
#include "wigrot/triangle.hpp"

namespace py = pybind11;

namespace {

py::array_t<double> to_dense(const wigrot::CoeffTriangle& t) {
  const int n = t.degree();
  const py::ssize_t w = 2 * n + 1;
  py::array_t<double> out({w, w});
  auto a = out.mutable_unchecked<2>();
  for (int mp = -n; mp <= n; ++mp)
    for (int m = -n; m <= n; ++m) a(mp + n, m + n) = t.get(mp, m);
  return out;
}

wigrot::CoeffTriangle compute_by(const std::string& algo, int n, double beta) {
  if (algo == "recursive") return wigrot::compute_subspace(n, beta);
  if (algo == "fft-basic") return wigrot::compute_subspace_fft_basic(n, beta);
  if (algo == "fft-modified")
    return wigrot::compute_subspace_fft_modified(n, beta);
  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Rotation coefficients H_n^{m'm}(beta) for spherical harmonic "
      "expansions: stable recursion, FFT-based engines, and diagnostics";

  m.def(
      "subspace",
      [](int n, double beta, const std::string& algo) {
        return to_dense(compute_by(algo, n, beta));
      },
      py::arg("n"), py::arg("beta"), py::arg("algo") = "recursive",
      "Dense (2n+1) x (2n+1) table of H_n^{m'm}(beta), indexed "
      "[m' + n, m + n].");

  m.def(
      "wigner_d",
      [](int n, double beta, const std::string& algo) {
        const wigrot::CoeffTriangle t = compute_by(algo, n, beta);
        const py::ssize_t w = 2 * n + 1;
        py::array_t<double> out({w, w});
        auto a = out.mutable_unchecked<2>();
        for (int mp = -n; mp <= n; ++mp)
          for (int m = -n; m <= n; ++m)
            a(mp + n, m + n) = wigrot::wigner_d_from_h(mp, m, t.get(mp, m));
        return out;
      },
      py::arg("n"), py::arg("beta"), py::arg("algo") = "recursive",
      "Dense Wigner d_n^{m'm}(beta) table, indexed [m' + n, m + n].");

  m.def("h_direct", &wigrot::h_direct, py::arg("n"), py::arg("m_prime"),
        py::arg("m"), py::arg("beta"),
        "Reference evaluation of a single coefficient by direct summation "
        "(moderate degrees only).");

  m.def(
      "unitarity_error",
      [](int n, double beta, const std::string& algo) {
        return wigrot::unitarity_error(compute_by(algo, n, beta));
      },
      py::arg("n"), py::arg("beta"), py::arg("algo") = "recursive",
      "max |H H - I| over the dense product for one degree.");

  m.def(
      "cross_error",
      [](int n, double beta, const std::string& algo_a,
         const std::string& algo_b) {
        return wigrot::cross_error(compute_by(algo_a, n, beta),
                                   compute_by(algo_b, n, beta));
      },
      py::arg("n"), py::arg("beta"), py::arg("algo_a") = "recursive",
      py::arg("algo_b") = "fft-modified",
      "max |a - b| between two engines' tables at one degree.");

  m.def("magnitude_bound", &wigrot::magnitude_bound, py::arg("n"),
        py::arg("m_prime"), py::arg("m"), py::arg("beta"),
        "Per-entry upper bound on |H_n^{m'm}(beta)|, capped at 1.");

  m.def("lambda_exponent", &wigrot::lambda_exponent, py::arg("mu"),
        py::arg("mu_prime"), py::arg("beta"),
        "Asymptotic decay exponent at fixed index fractions mu = m/n, "
        "mu' = m'/n.");

  m.def(
      "rotate_expansion",
      [](py::array_t<std::complex<double>, py::array::c_style |
                                               py::array::forcecast> coeffs,
         double alpha, double beta, double gamma) {
        const py::ssize_t len = coeffs.size();
        int p = 0;
        while (static_cast<py::ssize_t>(p) * p < len) ++p;
        if (static_cast<py::ssize_t>(p) * p != len)
          throw std::invalid_argument(
              "coefficient array must hold p*p entries for some bandwidth p");
        wigrot::SHExpansion f;
        f.p = p;
        f.coeffs.assign(coeffs.data(), coeffs.data() + len);
        const wigrot::SHExpansion g =
            wigrot::rotate_expansion(f, {alpha, beta, gamma});
        py::array_t<std::complex<double>> out(
            std::vector<py::ssize_t>{len});
        auto o = out.mutable_unchecked<1>();
        for (py::ssize_t i = 0; i < len; ++i)
          o(i) = g.coeffs[static_cast<std::size_t>(i)];
        return out;
      },
      py::arg("coeffs"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
      "Rotate a band-limited expansion given as a flat length-p^2 array "
      "packed n*n + n + m; returns the same packing.");
}
