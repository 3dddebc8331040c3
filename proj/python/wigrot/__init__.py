"""Rotation coefficients for spherical harmonic expansions.

The heavy lifting lives in the compiled ``_core`` module; this package
re-exports its functions under their public names.
"""

from ._core import (
    cross_error,
    h_direct,
    lambda_exponent,
    magnitude_bound,
    rotate_expansion,
    subspace,
    unitarity_error,
    wigner_d,
)

__all__ = [
    "cross_error",
    "h_direct",
    "lambda_exponent",
    "magnitude_bound",
    "rotate_expansion",
    "subspace",
    "unitarity_error",
    "wigner_d",
]
