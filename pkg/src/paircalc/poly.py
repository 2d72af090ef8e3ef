"""Analytic polynomials in one and two variables on the torus.

A one-variable polynomial is a 1-D complex coefficient array ``c`` with
``c[s]`` the coefficient of ``z**s``; a two-variable polynomial is a 2-D array
``c`` with ``c[j, k]`` the coefficient of ``z**j * w**k``.  Only nonnegative
frequencies appear (analytic polynomials).

The roots-of-unity grid of order m is ``exp(2*pi*1j*t/m)`` for t = 0..m-1,
in that order; every kernel matrix below uses this fixed ordering.

``upsilon(m, z)`` is the averaging kernel ``(1/m) * sum_{k<m} z**k``.  It is
always evaluated in sum form, never as the quotient ``(z**m - 1)/(m*(z - 1))``,
which has a removable singularity at z = 1.
"""

from __future__ import annotations

import numpy as np


def as_uni(c) -> np.ndarray:
    """Coerce to a 1-D complex coefficient array (may be empty: the zero polynomial)."""
    a = np.atleast_1d(np.asarray(c, dtype=complex))
    if a.ndim != 1:
        raise ValueError(f"one-variable coefficients must be 1-D, got ndim={a.ndim}")
    if a.size and not np.all(np.isfinite(a.real) & np.isfinite(a.imag)):
        raise ValueError("non-finite coefficients")
    return a


def as_bi(c) -> np.ndarray:
    """Coerce to a 2-D complex coefficient grid."""
    a = np.atleast_2d(np.asarray(c, dtype=complex))
    if a.ndim != 2:
        raise ValueError(f"two-variable coefficients must be 2-D, got ndim={a.ndim}")
    if a.size and not np.all(np.isfinite(a.real) & np.isfinite(a.imag)):
        raise ValueError("non-finite coefficients")
    return a


def uni_degree(c) -> int:
    """Index of the highest nonzero coefficient; -1 for the zero polynomial."""
    a = as_uni(c)
    nz = np.nonzero(a)[0]
    return int(nz[-1]) if nz.size else -1


def roots_grid(m: int) -> np.ndarray:
    """The m-th roots of unity exp(2*pi*1j*t/m), t = 0..m-1."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return np.exp(2j * np.pi * np.arange(m) / m)


def eval_uni(c, z):
    """Evaluate sum_s c[s] z**s by Horner's scheme; z may be scalar or array."""
    a = as_uni(c)
    if a.size == 0:
        return np.zeros_like(np.asarray(z, dtype=complex))
    acc = np.full_like(np.asarray(z, dtype=complex), a[-1])
    for s in range(a.size - 2, -1, -1):
        acc = acc * z + a[s]
    return acc


def eval_bi(c, z, w):
    """Evaluate sum_{j,k} c[j,k] z**j w**k (nested Horner); z, w broadcastable."""
    a = as_bi(c)
    z = np.asarray(z, dtype=complex)
    acc = eval_uni(a[-1], w)
    for j in range(a.shape[0] - 2, -1, -1):
        acc = acc * z + eval_uni(a[j], w)
    return acc


def eval_bi_grid(c, zs, ws) -> np.ndarray:
    """Values c(z, w) on the product grid zs x ws, shape (len(zs), len(ws))."""
    a = as_bi(c)
    vz = np.power.outer(np.asarray(zs, dtype=complex), np.arange(a.shape[0]))
    vw = np.power.outer(np.asarray(ws, dtype=complex), np.arange(a.shape[1]))
    return vz @ a @ vw.T


def deriv_uni(c) -> np.ndarray:
    """Coefficient array of the derivative."""
    a = as_uni(c)
    if a.size <= 1:
        return np.zeros(0, dtype=complex)
    return a[1:] * np.arange(1, a.size)


def oversample_size(degree: int) -> int:
    """Grid size used by the sup-norm estimators: max(256, 8 * (degree + 1))."""
    return max(256, 8 * (degree + 1))


def sup_norm_uni(c) -> float:
    """Max modulus on an oversampled roots-of-unity grid (a tight lower bound)."""
    a = as_uni(c)
    if a.size == 0:
        return 0.0
    grid = roots_grid(oversample_size(a.size - 1))
    return float(np.max(np.abs(eval_uni(a, grid))))


def sup_norm_bi(c) -> float:
    """Max modulus of a two-variable polynomial on an oversampled product grid."""
    a = as_bi(c)
    if a.size == 0:
        return 0.0
    gz = roots_grid(oversample_size(a.shape[0] - 1))
    gw = roots_grid(oversample_size(a.shape[1] - 1))
    return float(np.max(np.abs(eval_bi_grid(a, gz, gw))))


def upsilon(m: int, z):
    """(1/m) * sum_{k=0}^{m-1} z**k, evaluated in sum form; z scalar or array."""
    if m < 1:
        raise ValueError("m must be at least 1")
    z = np.asarray(z, dtype=complex)
    acc = np.ones_like(z)
    power = np.ones_like(z)
    for _ in range(1, m):
        power = power * z
        acc = acc + power
    return acc / m


def upsilon_poly(m: int) -> np.ndarray:
    """Coefficient array of upsilon: m entries all equal to 1/m."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return np.full(m, 1.0 / m, dtype=complex)


def quadrature_1d(f, g, m: int) -> complex:
    """(1/m) * sum over the m-th roots of unity of f * conj(g).

    Both polynomials must have degree < m; the sum then equals the L^2(T)
    inner product sum_s f[s] * conj(g[s]).
    """
    a, b = as_uni(f), as_uni(g)
    if uni_degree(a) >= m or uni_degree(b) >= m:
        raise ValueError(f"degree must be < m = {m}")
    grid = roots_grid(m)
    return complex(np.sum(eval_uni(a, grid) * np.conj(eval_uni(b, grid))) / m)


def quadrature_2d(f, g, m: int) -> complex:
    """(1/m^2) * sum over the m x m roots-of-unity grid of f * conj(g).

    Degrees must be < m in each variable; the sum equals the coefficient
    inner product on T^2.
    """
    a, b = as_bi(f), as_bi(g)
    for c in (a, b):
        if _bi_degrees(c)[0] >= m or _bi_degrees(c)[1] >= m:
            raise ValueError(f"degree must be < m = {m} in each variable")
    grid = roots_grid(m)
    return complex(
        np.sum(eval_bi_grid(a, grid, grid) * np.conj(eval_bi_grid(b, grid, grid)))
        / m**2
    )


def _bi_degrees(c) -> tuple[int, int]:
    """Degrees in each variable (highest index with a nonzero row/column)."""
    a = as_bi(c)
    nz = np.nonzero(a)
    if nz[0].size == 0:
        return (-1, -1)
    return (int(nz[0].max()), int(nz[1].max()))


def divided_diff(f, zeta, tau) -> complex:
    """(f(zeta) - f(tau)) / (zeta - tau), and f'(zeta) on the diagonal."""
    a = as_uni(f)
    if zeta == tau:
        return complex(eval_uni(deriv_uni(a), zeta))
    return complex((eval_uni(a, zeta) - eval_uni(a, tau)) / (zeta - tau))


def divided_diff_1(f, zeta1, zeta2, tau) -> complex:
    """Divided difference of f(., tau) in the first variable."""
    a = as_bi(f)
    if zeta1 == zeta2:
        da = a[1:] * np.arange(1, a.shape[0])[:, None] if a.shape[0] > 1 else a[:0]
        return complex(eval_bi(da, zeta1, tau)) if da.size else 0j
    return complex((eval_bi(a, zeta1, tau) - eval_bi(a, zeta2, tau)) / (zeta1 - zeta2))


def divided_diff_2(f, zeta, tau1, tau2) -> complex:
    """Divided difference of f(zeta, .) in the second variable."""
    a = as_bi(f)
    if tau1 == tau2:
        da = a[:, 1:] * np.arange(1, a.shape[1])[None, :] if a.shape[1] > 1 else a[:, :0]
        return complex(eval_bi(da, zeta, tau1)) if da.size else 0j
    return complex((eval_bi(a, zeta, tau1) - eval_bi(a, zeta, tau2)) / (tau1 - tau2))


def monomial_divided_diffs(dmax: int, zeta, tau) -> np.ndarray:
    """Divided differences of z**j at (zeta, tau) for j = 0..dmax.

    Uses the recurrence dd[j] = zeta * dd[j-1] + tau**(j-1), which is exact on
    and off the diagonal.
    """
    dd = np.zeros(dmax + 1, dtype=complex)
    tpow = 1.0 + 0j
    for j in range(1, dmax + 1):
        dd[j] = zeta * dd[j - 1] + tpow
        tpow *= tau
    return dd


def dd1_as_uni(f, zeta1, zeta2) -> np.ndarray:
    """The one-variable polynomial tau -> divided_diff_1(f, zeta1, zeta2, tau).

    Returned as a coefficient array over the second variable.
    """
    a = as_bi(f)
    dd = monomial_divided_diffs(a.shape[0] - 1, zeta1, zeta2)
    return dd @ a


def dd2_as_uni(f, tau1, tau2) -> np.ndarray:
    """The one-variable polynomial zeta -> divided_diff_2(f, zeta, tau1, tau2)."""
    a = as_bi(f)
    dd = monomial_divided_diffs(a.shape[1] - 1, tau1, tau2)
    return a @ dd


def interpolate(values, m: int) -> np.ndarray:
    """Analytic interpolation through prescribed values on the m x m roots grid.

    Returns the coefficient grid of
    ``f(z, w) = sum a[s,t] * upsilon^2(z * conj(xi_s)) * upsilon^2(w * conj(xi_t))``,
    of degree at most 2m-2 in each variable.  f reproduces the grid values
    exactly and its sup norm does not exceed max |a|.
    """
    a = np.asarray(values, dtype=complex)
    if a.shape != (m, m):
        raise ValueError(f"expected an {m} x {m} value grid, got {a.shape}")
    grid = roots_grid(m)
    # upsilon(z*conj(xi))**2 = sum_s (c_s / m^2) conj(xi)**s z**s with
    # c_s = m - |s - (m-1)| counting the pairs (a, b) with a + b = s, a, b < m
    s_idx = np.arange(2 * m - 1)
    c = (m - np.abs(s_idx - (m - 1))).astype(float)
    vand = np.power.outer(np.conj(grid), s_idx)  # (m, 2m-1): conj(xi)**s
    inner = vand.T @ a @ vand  # (2m-1, 2m-1): sum a[xi,eta] conj(xi)^s conj(eta)^t
    return np.outer(c, c) / m**4 * inner


def kernel_matrix(k, m: int) -> np.ndarray:
    """The m x m matrix {K(xi, eta)} over the roots grid, in the fixed ordering."""
    a = as_bi(k)
    d1, d2 = _bi_degrees(a)
    if d1 >= m or d2 >= m:
        raise ValueError(f"kernel degree must be < m = {m} in each variable")
    grid = roots_grid(m)
    return eval_bi_grid(a, grid, grid)


def hankel_matrix(g) -> np.ndarray:
    """The d x d matrix {g[j+k+1]} for d = deg g; coefficient grid of the divided difference."""
    a = as_uni(g)
    d = uni_degree(a)
    if d <= 0:
        return np.zeros((0, 0), dtype=complex)
    h = np.zeros((d, d), dtype=complex)
    for j in range(d):
        for k in range(d):
            if j + k + 1 <= d:
                h[j, k] = a[j + k + 1]
    return h


def divided_diff_grid(f) -> np.ndarray:
    """Coefficient grid of the two-variable divided difference of a one-variable polynomial.

    For f = sum a_s z**s this is sum_{j+k < d} a[j+k+1] z**j w**k, whose
    coefficient grid is the Hankel matrix of f.
    """
    return hankel_matrix(f)


def bi_to_dict(c) -> dict:
    """Serialize a two-variable polynomial to the JSON exchange format."""
    a = as_bi(c)
    return {
        "d1": int(a.shape[0] - 1),
        "d2": int(a.shape[1] - 1),
        "coeffs": [[[float(v.real), float(v.imag)] for v in row] for row in a],
    }


def bi_from_dict(d: dict) -> np.ndarray:
    """Parse the JSON exchange format produced by :func:`bi_to_dict`."""
    coeffs = np.asarray(d["coeffs"], dtype=float)
    if coeffs.ndim != 3 or coeffs.shape[2] != 2:
        raise ValueError("coeffs must be a grid of [re, im] pairs")
    if coeffs.shape[0] != int(d["d1"]) + 1 or coeffs.shape[1] != int(d["d2"]) + 1:
        raise ValueError("coeffs shape inconsistent with declared degrees")
    return as_bi(coeffs[..., 0] + 1j * coeffs[..., 1])
