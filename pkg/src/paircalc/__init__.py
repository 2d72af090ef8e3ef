"""Functional calculus for pairs of noncommuting contractions on finite matrices.

Core layout:

- ``linalg``: dense complex matrices, singular values, Schatten norms,
  reproducible random contractions and unitaries.
- ``poly``: analytic polynomials, roots-of-unity grids, the averaging kernel,
  divided differences, quadrature, interpolation, kernel matrices.
- ``besov``: Littlewood-Paley blocks, the (1, inf, 1) Besov norm, the
  projective tensor bound.
- ``funcalc``: f(T, R), finite-sum operator-difference formulas, path
  derivatives, finite triple operator sums.
- ``verify``: sweep harnesses and the p > 2 counterexample.
- ``service`` / ``cli``: FastAPI app and its thin command-line client.
"""

from . import besov, funcalc, linalg, poly, verify

__all__ = ["besov", "funcalc", "linalg", "poly", "verify"]
__version__ = "0.1.0"
