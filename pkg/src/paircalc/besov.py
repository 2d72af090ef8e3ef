"""Littlewood-Paley blocks and Besov-type norms for analytic polynomials.

The smooth bump w is supported in [1/2, 2] and satisfies w(s) = 1 - w(s/2)
for s in [1, 2].  Concretely, with h(x) = exp(-1/x) for x > 0 and 0 otherwise,

    sigma(t) = h(t - 1/2) / (h(t - 1/2) + h(1 - t)),   t in [1/2, 1],
    w(s) = sigma(s)       on [1/2, 1],
    w(s) = 1 - sigma(s/2) on [1, 2],
    w(s) = 0              elsewhere.

Frequency blocks: block n >= 1 multiplies the coefficient at lattice point j
by w(|j| / 2**n) (|j| the Euclidean norm of the multi-index).  Block 0 covers
|j| <= 1.  On the 2-D lattice there are points with 1 < |j| < 2 (e.g. (1,1))
that no dyadic multiplier with n >= 1 fully covers; block 0 absorbs the
residual weight there so the blocks always sum back to the polynomial exactly.
"""

from __future__ import annotations

import math

import numpy as np

from . import poly


def _h(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def bump(s):
    """The C-infinity bump w; accepts scalars or arrays."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    out = np.zeros_like(s_arr)

    lo = (s_arr >= 0.5) & (s_arr <= 1.0)
    t = s_arr[lo]
    num = _h(t - 0.5)
    out[lo] = np.divide(num, num + _h(1.0 - t), out=np.zeros_like(num),
                        where=(num + _h(1.0 - t)) > 0)

    hi = (s_arr > 1.0) & (s_arr <= 2.0)
    t = s_arr[hi] / 2.0
    num = _h(t - 0.5)
    out[hi] = 1.0 - np.divide(num, num + _h(1.0 - t), out=np.zeros_like(num),
                              where=(num + _h(1.0 - t)) > 0)

    return float(out[0]) if np.isscalar(s) or np.asarray(s).ndim == 0 else out


def wn_multiplier(n: int, j, d: int) -> float:
    """Frequency multiplier of block n at lattice point j (d = 1 or 2).

    For n = 0 this is the indicator of |j| <= 1; for n >= 1 it is
    bump(|j| / 2**n).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if d not in (1, 2):
        raise ValueError("d must be 1 or 2")
    jv = np.atleast_1d(np.asarray(j, dtype=float))
    if jv.size != d:
        raise ValueError(f"lattice point has {jv.size} components, expected {d}")
    norm = float(np.hypot(*jv)) if d == 2 else abs(float(jv[0]))
    if n == 0:
        return 1.0 if norm <= 1.0 else 0.0
    return float(bump(norm / 2.0**n))


def _lattice_norms(shape: tuple[int, ...]) -> np.ndarray:
    if len(shape) == 1:
        return np.arange(shape[0], dtype=float)
    jj, kk = np.meshgrid(np.arange(shape[0]), np.arange(shape[1]), indexing="ij")
    return np.hypot(jj, kk)


def lp_blocks(c) -> list[np.ndarray]:
    """Littlewood-Paley blocks of an analytic polynomial (1-D or 2-D coefficients).

    Returns coefficient arrays [f_0, f_1, ..., f_N] of the same shape as the
    input, with sum(blocks) == c exactly in coefficients.  Block 0 carries the
    residual weight 1 - sum_{n>=1} w(|j|/2**n), which equals the |j| <= 1
    indicator except at 2-D lattice points with 1 < |j| < 2.
    """
    a = np.asarray(c, dtype=complex)
    if a.ndim not in (1, 2):
        raise ValueError("expected 1-D or 2-D coefficients")
    norms = _lattice_norms(a.shape)
    maxnorm = float(norms.max()) if a.size else 0.0
    nmax = max(0, math.ceil(math.log2(maxnorm)) + 1) if maxnorm >= 1.0 else 0

    blocks = []
    residual = np.ones_like(norms)
    for n in range(1, nmax + 1):
        mult = bump(norms / 2.0**n)
        blocks.append(a * mult)
        residual = residual - mult
    blocks.insert(0, a * residual)

    while len(blocks) > 1 and not np.any(blocks[-1]):
        blocks.pop()
    return blocks


def block_sup_norms(c) -> list[float]:
    """Sup norm (oversampled-grid estimate) of each Littlewood-Paley block."""
    sup = poly.sup_norm_bi if np.asarray(c).ndim == 2 else poly.sup_norm_uni
    return [sup(b) for b in lp_blocks(c)]


def besov_norm_1_inf_1(c) -> float:
    """The (1, infinity, 1)-Besov norm: sum_n 2**n * sup-norm of block n."""
    return float(sum(2.0**n * s for n, s in enumerate(block_sup_norms(c))))


def projective_bound(c) -> float:
    """Row-wise tensor bound sum_j sup_tau |sum_k c[j,k] tau**k|.

    Bounded by (1 + N) * sup-norm for degree N in the first variable.
    """
    a = poly.as_bi(c)
    if not np.any(a):
        return 0.0
    grid = poly.roots_grid(poly.oversample_size(a.shape[1] - 1))
    vand = np.power.outer(grid, np.arange(a.shape[1]))
    row_vals = a @ vand.T  # (rows, grid)
    return float(np.sum(np.max(np.abs(row_vals), axis=1)))
