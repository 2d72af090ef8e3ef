"""Polynomial functional calculus for pairs of noncommuting contractions.

``f_of_pair`` fixes the order T-powers left, R-powers right:

    f(T, R) = sum_{j,k} c[j,k] T**j R**k.

Since T and R need not commute this ordering matters; everything downstream
(difference formulas, derivatives, the counterexample harness) relies on it.

The finite-sum representations of operator differences run over the m-th
roots of unity and are exact whenever the polynomial degree is at most m in
each variable.  Matrix powers are built iteratively (contractions need not be
diagonalizable); no spectral decomposition is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .linalg import as_matrix, is_contraction


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got {m.shape}")
    return m


def _check_contractions(tol: float = 1e-10, **mats) -> None:
    for name, m in mats.items():
        if not is_contraction(m, tol):
            raise ValueError(f"{name} is not a contraction (tol {tol:g})")


def matrix_powers(t, dmax: int) -> np.ndarray:
    """Stack [I, T, T^2, ..., T^dmax], shape (dmax+1, n, n)."""
    t = _square(t)
    n = t.shape[0]
    out = np.empty((dmax + 1, n, n), dtype=complex)
    out[0] = np.eye(n)
    for d in range(1, dmax + 1):
        out[d] = t @ out[d - 1]
    return out


def poly_calc(c, t) -> np.ndarray:
    """phi(T) = sum_s c[s] T**s by Horner's scheme."""
    a = poly.as_uni(c)
    t = _square(t)
    n = t.shape[0]
    if a.size == 0:
        return np.zeros((n, n), dtype=complex)
    acc = a[-1] * np.eye(n, dtype=complex)
    for s in range(a.size - 2, -1, -1):
        acc = acc @ t + a[s] * np.eye(n)
    return acc


def f_of_pair(c, t, r, *, check: bool = True) -> np.ndarray:
    """f(T, R) = sum_{j,k} c[j,k] T**j R**k (T-powers to the left)."""
    a = poly.as_bi(c)
    t, r = _square(t), _square(r)
    if t.shape != r.shape:
        raise ValueError(f"dimension mismatch: {t.shape} vs {r.shape}")
    if check:
        _check_contractions(T=t, R=r)
    rpow = matrix_powers(r, a.shape[1] - 1)
    # Horner over T of the R-polynomials P_j = sum_k c[j,k] R**k
    acc = np.tensordot(a[-1], rpow, axes=(0, 0))
    for j in range(a.shape[0] - 2, -1, -1):
        acc = t @ acc + np.tensordot(a[j], rpow, axes=(0, 0))
    return acc


def upsilon_matrix(m: int, t) -> np.ndarray:
    """upsilon_m(T) = (1/m) (I + T + ... + T**(m-1))."""
    return poly_calc(poly.upsilon_poly(m), t)


@dataclass(frozen=True)
class FiniteTripleSum:
    """Finite families of one-variable polynomial factors for a triple operator sum.

    kind "type1": sum_{j,k} alpha_j(T1) X beta_k(T2) Y gamma[j][k](T3)
    kind "type2": sum_{j,k} alpha[j][k](T1) X beta_j(T2) Y gamma_k(T3)

    ``singles_a`` / ``singles_c`` hold the singly-indexed families; ``grid``
    holds the doubly-indexed family as a |F1| x |F2| nested list of
    coefficient arrays.
    """

    kind: str
    singles_a: list
    singles_c: list
    grid: list

    def __post_init__(self):
        if self.kind not in ("type1", "type2"):
            raise ValueError(f"unknown kind {self.kind!r}")
        n1, n2 = len(self.singles_a), len(self.singles_c)
        if len(self.grid) != n1 or any(len(row) != n2 for row in self.grid):
            raise ValueError("grid shape inconsistent with the index sets")


def triple_sum(ts: FiniteTripleSum, t1, t2, t3, x, y) -> np.ndarray:
    """Evaluate the finite triple operator sum described by ``ts``."""
    t1, t2, t3 = _square(t1), _square(t2), _square(t3)
    x, y = as_matrix(x), as_matrix(y)
    shapes = {t1.shape, t2.shape, t3.shape, x.shape, y.shape}
    if len(shapes) != 1:
        raise ValueError(f"dimension mismatch among operators: {shapes}")
    n = t1.shape[0]
    acc = np.zeros((n, n), dtype=complex)
    if ts.kind == "type1":
        left = [poly_calc(a, t1) @ x for a in ts.singles_a]
        mid = [poly_calc(b, t2) @ y for b in ts.singles_c]
        for j, lj in enumerate(left):
            for k, mk in enumerate(mid):
                acc += lj @ mk @ poly_calc(ts.grid[j][k], t3)
    else:
        mid = [poly_calc(b, t2) @ y for b in ts.singles_a]
        right = [poly_calc(g, t3) for g in ts.singles_c]
        for j, mj in enumerate(mid):
            for k, rk in enumerate(right):
                acc += poly_calc(ts.grid[j][k], t1) @ x @ mj @ rk
    return acc


def _check_degree(a: np.ndarray, m: int) -> None:
    d1, d2 = poly._bi_degrees(a)
    if d1 > m or d2 > m:
        raise ValueError(f"polynomial degree ({d1}, {d2}) exceeds m = {m}")


def diff_first(c, t0, t1, r1, m: int, *, check: bool = True) -> np.ndarray:
    """Finite-sum representation of f(T1, R1) - f(T0, R1).

    Equals sum over the m x m roots grid of
    upsilon_m(conj(xi) T1) (T1 - T0) upsilon_m(conj(eta) T0) * (dd1 f)(xi, eta, R1)
    for polynomials of degree at most m in each variable.
    """
    a = poly.as_bi(c)
    t0, t1, r1 = _square(t0), _square(t1), _square(r1)
    _check_degree(a, m)
    if check:
        _check_contractions(T0=t0, T1=t1, R1=r1)
    grid = poly.roots_grid(m)
    t1pow = matrix_powers(t1, m - 1)
    t0pow = matrix_powers(t0, m - 1)
    rpow = matrix_powers(r1, a.shape[1] - 1)
    kpow = np.arange(m)
    left = [np.tensordot(np.conj(xi) ** kpow / m, t1pow, axes=(0, 0)) for xi in grid]
    right = [np.tensordot(np.conj(eta) ** kpow / m, t0pow, axes=(0, 0)) for eta in grid]
    delta = t1 - t0
    n = t0.shape[0]
    acc = np.zeros((n, n), dtype=complex)
    for i, xi in enumerate(grid):
        lf = left[i] @ delta
        for j, eta in enumerate(grid):
            cvec = poly.dd1_as_uni(a, xi, eta)  # polynomial in the second variable
            acc += lf @ right[j] @ np.tensordot(cvec, rpow, axes=(0, 0))
    return acc


def diff_second(c, t0, r0, r1, m: int, *, check: bool = True) -> np.ndarray:
    """Finite-sum representation of f(T0, R1) - f(T0, R0).

    Equals sum over the grid of
    (dd2 f)(T0, xi, eta) upsilon_m(conj(xi) R1) (R1 - R0) upsilon_m(conj(eta) R0).
    """
    a = poly.as_bi(c)
    t0, r0, r1 = _square(t0), _square(r0), _square(r1)
    _check_degree(a, m)
    if check:
        _check_contractions(T0=t0, R0=r0, R1=r1)
    grid = poly.roots_grid(m)
    r1pow = matrix_powers(r1, m - 1)
    r0pow = matrix_powers(r0, m - 1)
    tpow = matrix_powers(t0, a.shape[0] - 1)
    kpow = np.arange(m)
    left = [np.tensordot(np.conj(xi) ** kpow / m, r1pow, axes=(0, 0)) for xi in grid]
    right = [np.tensordot(np.conj(eta) ** kpow / m, r0pow, axes=(0, 0)) for eta in grid]
    delta = r1 - r0
    n = t0.shape[0]
    acc = np.zeros((n, n), dtype=complex)
    for i, xi in enumerate(grid):
        lf = left[i] @ delta
        for j, eta in enumerate(grid):
            cvec = poly.dd2_as_uni(a, xi, eta)  # polynomial in the first variable
            acc += np.tensordot(cvec, tpow, axes=(0, 0)) @ lf @ right[j]
    return acc


def full_difference(c, t0, r0, t1, r1, m: int, *, check: bool = True) -> np.ndarray:
    """f(T1, R1) - f(T0, R0) as the telescoped sum of the two one-sided formulas."""
    return diff_first(c, t0, t1, r1, m, check=check) + diff_second(
        c, t0, r0, r1, m, check=check
    )


def path_derivative(c, t, dt, r, dr, m: int, *, check: bool = True) -> np.ndarray:
    """Derivative of s -> f(T(s), R(s)) from the point values T, T', R, R'.

    Two finite sums over the m x m roots grid: the first differentiates
    through the T-slot, the second through the R-slot.
    """
    a = poly.as_bi(c)
    t, dt, r, dr = _square(t), _square(dt), _square(r), _square(dr)
    _check_degree(a, m)
    if check:
        _check_contractions(T=t, R=r)
    grid = poly.roots_grid(m)
    kpow = np.arange(m)
    tpow = matrix_powers(t, max(m - 1, a.shape[0] - 1))
    rpow = matrix_powers(r, max(m - 1, a.shape[1] - 1))
    ut = [np.tensordot(np.conj(xi) ** kpow / m, tpow[:m], axes=(0, 0)) for xi in grid]
    ur = [np.tensordot(np.conj(xi) ** kpow / m, rpow[:m], axes=(0, 0)) for xi in grid]
    n = t.shape[0]
    acc = np.zeros((n, n), dtype=complex)
    for i, xi in enumerate(grid):
        lf_t = ut[i] @ dt
        lf_r = ur[i] @ dr
        for j, eta in enumerate(grid):
            c1 = poly.dd1_as_uni(a, xi, eta)
            c2 = poly.dd2_as_uni(a, xi, eta)
            acc += lf_t @ ut[j] @ np.tensordot(c1, rpow[: a.shape[1]], axes=(0, 0))
            acc += np.tensordot(c2, tpow[: a.shape[0]], axes=(0, 0)) @ lf_r @ ur[j]
    return acc
