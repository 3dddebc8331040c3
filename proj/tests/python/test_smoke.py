"""Smoke tests for the python bindings.

The exhaustive checks live in the C++ suites; here we verify that the
bindings move data across the boundary faithfully.
"""

import math

import numpy as np
import pytest

import wigrot


def test_trivial_subspace():
    t = wigrot.subspace(0, 1.234)
    assert t.shape == (1, 1)
    assert t[0, 0] == 1.0


def test_degree_one_closed_forms():
    beta = 0.7
    t = wigrot.subspace(1, beta)
    c, s = math.cos(beta), math.sin(beta)
    assert t[1, 1] == pytest.approx(c, abs=1e-15)  # H^{00}
    assert t[1, 2] == pytest.approx(s / math.sqrt(2), abs=1e-15)  # H^{01}
    assert t[2, 2] == pytest.approx(-(1 + c) / 2, abs=1e-15)  # H^{11}
    assert t[0, 2] == pytest.approx((1 - c) / 2, abs=1e-15)  # H^{-11}
    # the table is symmetric
    assert np.allclose(t, t.T, atol=1e-15)


def test_engines_agree():
    beta = math.pi / 3
    a = wigrot.subspace(24, beta, algo="recursive")
    b = wigrot.subspace(24, beta, algo="fft-modified")
    c = wigrot.subspace(24, beta, algo="fft-basic")
    assert np.max(np.abs(a - b)) < 1e-11
    assert np.max(np.abs(a - c)) < 1e-11


def test_matches_direct_sum():
    n, beta = 9, 1.1
    t = wigrot.subspace(n, beta)
    for mp in (-9, -4, 0, 3, 9):
        for m in (-9, -2, 0, 5, 9):
            assert t[mp + n, m + n] == pytest.approx(
                wigrot.h_direct(n, mp, m, beta), abs=1e-13
            )


def test_wigner_d_signs():
    n, beta = 2, 0.9
    h = wigrot.subspace(n, beta)
    d = wigrot.wigner_d(n, beta)
    for mp in range(-n, n + 1):
        for m in range(-n, n + 1):
            eps_mp = (-1.0) ** mp if mp >= 0 else 1.0
            eps_neg_m = (-1.0) ** (-m) if -m >= 0 else 1.0
            assert d[mp + n, m + n] == eps_mp * eps_neg_m * h[mp + n, m + n]
    # classical closed form d^2_{2,2} = ((1+cos b)/2)^2
    assert d[4, 4] == pytest.approx(((1 + math.cos(beta)) / 2) ** 2, abs=1e-15)


def test_metrics():
    assert wigrot.unitarity_error(32, 0.8) < 1e-12
    assert wigrot.cross_error(32, 0.8) < 1e-10
    assert wigrot.magnitude_bound(2, 0, 2, math.pi / 2) == pytest.approx(
        math.sqrt(6) / 4, abs=1e-15
    )
    assert wigrot.lambda_exponent(1.0, 0.0, 0.5) < 0.0


def test_rotate_expansion_norms():
    rng = np.random.default_rng(7)
    p = 12
    coeffs = rng.standard_normal(p * p) + 1j * rng.standard_normal(p * p)
    rotated = wigrot.rotate_expansion(coeffs, 0.3, 1.2, 2.1)
    assert rotated.shape == coeffs.shape
    for n in range(p):
        sl = slice(n * n, n * n + 2 * n + 1)
        assert np.linalg.norm(rotated[sl]) == pytest.approx(
            np.linalg.norm(coeffs[sl]), rel=1e-12
        )
    # inverse angles restore the original
    back = wigrot.rotate_expansion(rotated, 2.1, 1.2, 0.3)
    assert np.max(np.abs(back - coeffs)) < 1e-12


def test_bad_inputs_raise():
    with pytest.raises(ValueError):
        wigrot.subspace(4, 0.5, algo="nonsense")
    with pytest.raises(ValueError):
        wigrot.rotate_expansion(np.zeros(7, dtype=complex), 0.0, 0.5, 0.0)
