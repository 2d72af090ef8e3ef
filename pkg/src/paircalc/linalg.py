"""Dense complex matrix utilities: singular values, Schatten norms, random instances.

All matrices are plain ``numpy.ndarray`` objects with dtype complex128.  The
JSON exchange format used by the service and the CLI is
``{"rows": r, "cols": c, "entries": [[re, im], ...]}`` with entries in
row-major order.

Random generation uses NumPy's default PCG64 bit generator
(``numpy.random.default_rng``), so instances are reproducible from integer
seeds across platforms.
"""

from __future__ import annotations

import numpy as np


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting empty or non-finite input."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D array, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"matrix must have at least one row and column, got {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix has non-finite entries")
    return m


def singular_values(a) -> np.ndarray:
    """Singular values of ``a`` in nonincreasing order."""
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def schatten_norm(a, p) -> float:
    """Schatten p-norm: (sum sigma_i^p)^(1/p); p = inf gives the operator norm.

    The index must satisfy p >= 1 (p = numpy.inf / math.inf for the operator
    norm).
    """
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"Schatten index must satisfy p >= 1, got {p}")
    s = singular_values(a)
    if np.isinf(p):
        return float(s[0])
    # scale out the largest singular value so large p does not overflow
    top = float(s[0])
    if top == 0.0:
        return 0.0
    return top * float(np.sum((s / top) ** p) ** (1.0 / p))


def is_contraction(a, tol: float = 1e-10) -> bool:
    """True iff the operator norm of ``a`` is at most 1 + tol."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return float(singular_values(a)[0]) <= 1.0 + tol


def numerical_rank(a, tol: float) -> int:
    """Number of singular values exceeding tol * sigma_max (0 for the zero matrix)."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    s = singular_values(a)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def random_complex_gaussian(n: int, rng: np.random.Generator) -> np.ndarray:
    """n x n matrix with i.i.d. standard complex normal entries."""
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def random_contraction_from_rng(n: int, rng: np.random.Generator) -> np.ndarray:
    """Complex Gaussian matrix rescaled by 1/max(1, sigma_max); operator norm <= 1."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    z = random_complex_gaussian(n, rng)
    top = float(np.linalg.svd(z, compute_uv=False)[0])
    return z / max(1.0, top)


def random_contraction(n: int, seed: int) -> np.ndarray:
    """Deterministic random contraction: same (n, seed) gives the same matrix."""
    return random_contraction_from_rng(n, np.random.default_rng(seed))


def random_unitary_from_rng(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-like random unitary: QR of a complex Gaussian with sign-fixed diagonal."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    z = random_complex_gaussian(n, rng)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    ph = d / np.abs(d)
    return q * ph


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Deterministic Haar-like random unitary."""
    return random_unitary_from_rng(n, np.random.default_rng(seed))


def matrix_to_dict(a) -> dict:
    """Serialize to the JSON exchange format (row-major [re, im] pairs)."""
    m = as_matrix(a)
    flat = m.reshape(-1)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_dict(d: dict) -> np.ndarray:
    """Parse the JSON exchange format produced by :func:`matrix_to_dict`."""
    rows, cols = int(d["rows"]), int(d["cols"])
    entries = np.asarray(d["entries"], dtype=float)
    if entries.shape != (rows * cols, 2):
        raise ValueError(
            f"expected {rows * cols} [re, im] entries, got shape {entries.shape}"
        )
    flat = entries[:, 0] + 1j * entries[:, 1]
    return as_matrix(flat.reshape(rows, cols))
