"""Experiment harnesses: Lipschitz-type sweeps, the p > 2 counterexample, derivatives.

Every harness is a deterministic function of its parameters and seed.  Trial
randomness is derived per trial from ``numpy.random.SeedSequence([seed, index])``
so reports do not depend on execution order or worker count.

Reports carry one record per trial with the fields
``seed, m, dim, p, lhs, rhs, ratio`` plus a summary with the max ratio and the
violation count (ratio above 1 + slack).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import besov, funcalc, poly
from .linalg import (
    numerical_rank,
    random_contraction_from_rng,
    schatten_norm,
    singular_values,
)

SLACK = 1e-9


def _p_repr(p: float):
    return "inf" if math.isinf(p) else float(p)


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    m: int
    dim: int
    p: float
    lhs: float
    rhs: float
    ratio: float
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "seed": self.seed,
            "m": self.m,
            "dim": self.dim,
            "p": _p_repr(self.p),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
        }
        if self.extra:
            d["extra"] = self.extra
        return d

    def to_csv_row(self) -> list:
        return [self.seed, self.m, self.dim, _p_repr(self.p), self.lhs, self.rhs, self.ratio]


CSV_HEADER = ["seed", "m", "dim", "p", "lhs", "rhs", "ratio"]


@dataclass
class SweepReport:
    params: dict
    trials: list
    slack: float = SLACK

    @property
    def max_ratio(self) -> float:
        return max((t.ratio for t in self.trials), default=0.0)

    @property
    def violations(self) -> int:
        return sum(1 for t in self.trials if t.ratio > 1.0 + self.slack)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "trials": [t.to_dict() for t in self.trials],
            "summary": {
                "max_ratio": self.max_ratio,
                "violations": self.violations,
                "passed": self.passed,
            },
        }


def _run_trials(fn, n: int, jobs: int | None) -> list:
    if jobs is not None and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, range(n)))
    return [fn(i) for i in range(n)]


def _trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def random_bipoly(rng: np.random.Generator, d1: int, d2: int) -> np.ndarray:
    """Coefficients with independent real and imaginary parts uniform in [-1, 1]."""
    return rng.uniform(-1, 1, (d1 + 1, d2 + 1)) + 1j * rng.uniform(-1, 1, (d1 + 1, d2 + 1))


# ---------------------------------------------------------------------------
# Lipschitz-type sweeps, p in [1, 2]
# ---------------------------------------------------------------------------


def lipschitz_sweep(trials: int, dim: int, m: int, p: float, seed: int,
                    jobs: int | None = None) -> SweepReport:
    """Check ||f(T1,R1) - f(T0,R0)||_p <= 2m ||f||_inf max(||dT||_p, ||dR||_p).

    Valid for 1 <= p <= 2; each trial draws four random contractions and a
    random analytic polynomial of degree m in each variable.
    """
    if not 1.0 <= p <= 2.0:
        raise ValueError(f"the bound is claimed only for p in [1, 2], got {p}")

    def one(i: int) -> TrialRecord:
        rng = _trial_rng(seed, i)
        t0, t1, r0, r1 = (random_contraction_from_rng(dim, rng) for _ in range(4))
        f = random_bipoly(rng, m, m)
        lhs = schatten_norm(
            funcalc.f_of_pair(f, t1, r1) - funcalc.f_of_pair(f, t0, r0), p
        )
        pert = max(schatten_norm(t1 - t0, p), schatten_norm(r1 - r0, p))
        rhs = 2.0 * m * poly.sup_norm_bi(f) * pert
        return TrialRecord(seed, m, dim, p, lhs, rhs, lhs / rhs if rhs else 0.0)

    records = _run_trials(one, trials, jobs)
    return SweepReport(
        {"sweep": "lipschitz", "trials": trials, "dim": dim, "m": m,
         "p": _p_repr(p), "seed": seed},
        records,
    )


def besov_lipschitz_sweep(trials: int, dim: int, p: float, seed: int,
                          m_values: tuple = (2, 4, 8, 16),
                          jobs: int | None = None) -> SweepReport:
    """Measure the empirical constant in the Besov-norm Lipschitz estimate.

    Ratios lhs / (besov_norm(f) * max perturbation) are reported, never
    asserted against a specific constant; the report flags nothing unless a
    ratio is non-finite.
    """
    if not 1.0 <= p <= 2.0:
        raise ValueError(f"the bound is claimed only for p in [1, 2], got {p}")
    per_m = max(1, trials // len(m_values))

    def one(i: int) -> TrialRecord:
        m = m_values[i // per_m] if i // per_m < len(m_values) else m_values[-1]
        rng = _trial_rng(seed, i)
        t0, t1, r0, r1 = (random_contraction_from_rng(dim, rng) for _ in range(4))
        f = random_bipoly(rng, m, m)
        lhs = schatten_norm(
            funcalc.f_of_pair(f, t1, r1) - funcalc.f_of_pair(f, t0, r0), p
        )
        pert = max(schatten_norm(t1 - t0, p), schatten_norm(r1 - r0, p))
        denom = besov.besov_norm_1_inf_1(f) * pert
        const = lhs / denom if denom else 0.0
        # ratio reports the measured constant; no hard threshold applies
        return TrialRecord(seed, m, dim, p, lhs, denom, 0.0,
                           extra={"empirical_const": const})

    records = _run_trials(one, per_m * len(m_values), jobs)
    by_m = {
        m: max((t.extra["empirical_const"] for t in records if t.m == m), default=0.0)
        for m in m_values
    }
    report = SweepReport(
        {"sweep": "besov-lipschitz", "trials": per_m * len(m_values), "dim": dim,
         "p": _p_repr(p), "seed": seed, "m_values": list(m_values)},
        records,
    )
    report.params["max_const_by_m"] = {str(k): v for k, v in by_m.items()}
    return report


# ---------------------------------------------------------------------------
# Operator-difference identities
# ---------------------------------------------------------------------------


def identity_sweep(trials: int, dim: int, m: int, seed: int, tol: float = 1e-8,
                   jobs: int | None = None) -> SweepReport:
    """Compare the finite-sum difference formulas against direct differences.

    For each trial the three identities (first slot, second slot, telescoped
    full difference) are evaluated; lhs is the worst absolute deviation, rhs
    the tolerance scaled by 1 + the direct difference norm.
    """

    def one(i: int) -> TrialRecord:
        rng = _trial_rng(seed, i)
        t0, t1, r0, r1 = (random_contraction_from_rng(dim, rng) for _ in range(4))
        f = random_bipoly(rng, m, m)
        f10 = funcalc.f_of_pair(f, t1, r1)
        f01 = funcalc.f_of_pair(f, t0, r1)
        f00 = funcalc.f_of_pair(f, t0, r0)
        checks = [
            (funcalc.diff_first(f, t0, t1, r1, m), f10 - f01),
            (funcalc.diff_second(f, t0, r0, r1, m), f01 - f00),
            (funcalc.full_difference(f, t0, r0, t1, r1, m), f10 - f00),
        ]
        worst, rhs, worst_ratio = 0.0, tol, 0.0
        for finite_sum, direct in checks:
            err = schatten_norm(finite_sum - direct, np.inf)
            scale = tol * (1.0 + schatten_norm(direct, np.inf))
            if err / scale > worst_ratio:
                worst, rhs, worst_ratio = err, scale, err / scale
        return TrialRecord(seed, m, dim, float("inf"), worst, rhs, worst_ratio)

    records = _run_trials(one, trials, jobs)
    return SweepReport(
        {"sweep": "identities", "trials": trials, "dim": dim, "m": m,
         "seed": seed, "tol": tol},
        records,
    )


# ---------------------------------------------------------------------------
# Derivative along operator paths
# ---------------------------------------------------------------------------


def derivative_check(paths: int, dim: int, m: int, seed: int,
                     jobs: int | None = None) -> SweepReport:
    """Central finite differences against the closed-form path derivative.

    Paths T(t) = exp(1j t) T0, R(t) = exp(0.7j t) R0 stay contractive; the
    finite-difference error must shrink at order 2 and the Richardson
    extrapolation must agree with the formula to 1e-6.
    """
    h1, h2 = 1e-3, 1e-4
    s = 0.3

    def one(i: int) -> TrialRecord:
        rng = _trial_rng(seed, i)
        t0 = random_contraction_from_rng(dim, rng)
        r0 = random_contraction_from_rng(dim, rng)
        f = random_bipoly(rng, m, m)

        def pair_at(t):
            return np.exp(1j * t) * t0, np.exp(0.7j * t) * r0

        ts, rs = pair_at(s)
        deriv = funcalc.path_derivative(f, ts, 1j * ts, rs, 0.7j * rs, m)

        def central(h):
            tp, rp = pair_at(s + h)
            tm, rm = pair_at(s - h)
            return (funcalc.f_of_pair(f, tp, rp) - funcalc.f_of_pair(f, tm, rm)) / (2 * h)

        d1, d2 = central(h1), central(h2)
        e1 = schatten_norm(d1 - deriv, np.inf)
        e2 = schatten_norm(d2 - deriv, np.inf)
        order = math.log(e1 / e2) / math.log(h1 / h2) if e2 > 0 else 2.0
        extrap = (h1**2 * d2 - h2**2 * d1) / (h1**2 - h2**2)
        extrap_err = schatten_norm(extrap - deriv, np.inf) / (
            1.0 + schatten_norm(deriv, np.inf)
        )
        ok = abs(order - 2.0) <= 0.2 and extrap_err <= 1e-6
        return TrialRecord(seed, m, dim, float("inf"), extrap_err, 1e-6,
                           0.0 if ok else 2.0, extra={"order": order})

    records = _run_trials(one, paths, jobs)
    return SweepReport(
        {"sweep": "derivative", "paths": paths, "dim": dim, "m": m, "seed": seed},
        records,
    )


# ---------------------------------------------------------------------------
# The p > 2 counterexample
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CounterexampleInstance:
    """Unitaries and the interpolating polynomial realizing the p > 2 blow-up.

    ``g_basis`` columns are the averaging-kernel basis vectors g_xi; the
    second basis h_eta is the standard monomial basis (the identity matrix).
    ``f`` has degree at most 4m-2 in each variable, sup norm 1, and vanishes
    on the spectrum of u2 paired with the spectrum of v.
    """

    m: int
    u1: np.ndarray
    u2: np.ndarray
    v: np.ndarray
    f: np.ndarray
    g_basis: np.ndarray

    @property
    def h_basis(self) -> np.ndarray:
        return np.eye(self.m, dtype=complex)


def build_counterexample(m: int) -> CounterexampleInstance:
    """Construct the m-dimensional instance.

    In the monomial coordinates of polynomials of degree < m, g_xi has
    entries conj(xi)**k / sqrt(m); U1 rotates the g-basis by the m-th roots
    of unity, U2 = exp(1j pi / m) U1, and V is diagonal in the monomial
    basis.  f interpolates sqrt(m) * <g_xi, h_eta> on the m x m roots grid
    and 0 on the rest of the 2m x 2m grid.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    grid_m = poly.roots_grid(m)
    kpow = np.arange(m)
    g_basis = np.power.outer(np.conj(grid_m), kpow).T / np.sqrt(m)  # column xi
    u1 = (g_basis * grid_m) @ g_basis.conj().T
    u2 = np.exp(1j * np.pi / m) * u1
    v = np.diag(grid_m)

    # interpolation values on the 2m x 2m grid: at (xi, eta) with xi, eta in
    # the m-point subgrid (even indices) the value is sqrt(m) <g_xi, h_eta>
    # = conj(xi)**k with eta = exp(2 pi 1j k / m); zero elsewhere
    values = np.zeros((2 * m, 2 * m), dtype=complex)
    for s in range(m):
        for k in range(m):
            values[2 * s, 2 * k] = np.conj(grid_m[s]) ** k
    f = poly.interpolate(values, 2 * m)
    return CounterexampleInstance(m, u1, u2, v, f, g_basis)


def check_counterexample(inst: CounterexampleInstance, p: float) -> dict:
    """Verify every desk-checkable claim about the instance at Schatten index p.

    Raises ValueError naming the first failed structural invariant; returns a
    record with the per-claim results and the lhs/rhs ratio (> 1 demonstrates
    the failure of the Lipschitz estimate).
    """
    m = inst.m
    for name, u in (("u1", inst.u1), ("u2", inst.u2), ("v", inst.v)):
        defect = schatten_norm(u.conj().T @ u - np.eye(m), np.inf)
        if defect > 1e-10:
            raise ValueError(f"invariant failed: {name} is not unitary (defect {defect:.2e})")
    if schatten_norm(inst.u2 - np.exp(1j * np.pi / m) * inst.u1, np.inf) > 1e-10:
        raise ValueError("invariant failed: u2 != exp(1j pi / m) u1")
    gram = np.abs(inst.g_basis.conj().T @ inst.h_basis)
    if np.max(np.abs(gram - 1 / np.sqrt(m))) > 1e-10:
        raise ValueError("invariant failed: |<g_xi, h_eta>| != m**-0.5")

    f_u1 = funcalc.f_of_pair(inst.f, inst.u1, inst.v)
    f_u2 = funcalc.f_of_pair(inst.f, inst.u2, inst.v)
    sup_f = poly.sup_norm_bi(inst.f)

    zero_norm = schatten_norm(f_u2, np.inf)
    rank = numerical_rank(f_u1, 1e-8)
    norm_p = schatten_norm(f_u1, p)
    pert = schatten_norm(inst.u1 - inst.u2, p)
    pert_closed = abs(1 - np.exp(1j * np.pi / m)) * (
        1.0 if math.isinf(p) else m ** (1.0 / p)
    )
    lhs = schatten_norm(f_u1 - f_u2, p)
    rhs = (1.0 / np.pi) * m ** (1.5 - (0.0 if math.isinf(p) else 1.0 / p)) * sup_f * pert
    # matrix elements of f(U1, V) between the two bases are all m**-0.5
    elements = inst.g_basis.conj().T @ f_u1 @ inst.h_basis

    claims = {
        "f_u2_vanishes": bool(zero_norm <= 1e-8),
        "rank_one": bool(rank == 1),
        "schatten_norm_sqrt_m": bool(abs(norm_p - np.sqrt(m)) <= 1e-8 * np.sqrt(m)),
        "perturbation_closed_form": bool(abs(pert - pert_closed) <= 1e-10),
        "ratio_above_one": bool(lhs > rhs),
        "sup_norm_one": bool(1 - 1e-6 <= sup_f <= 1 + SLACK),
        "basis_elements": bool(np.max(np.abs(elements - 1 / np.sqrt(m))) <= 1e-10),
    }
    record = TrialRecord(0, m, m, p, lhs, rhs, lhs / rhs if rhs else np.inf,
                         extra={"claims": claims})
    return {
        "m": m,
        "p": _p_repr(p),
        "lhs": lhs,
        "rhs": rhs,
        "ratio": lhs / rhs if rhs else np.inf,
        "sup_f": sup_f,
        "f_u2_norm": zero_norm,
        "rank_f_u1": rank,
        "claims": claims,
        "passed": all(claims.values()),
        "record": record,
    }


def shifted_counterexample_poly(inst: CounterexampleInstance) -> np.ndarray:
    """The monomial-shifted variant z1**(4m-2) z2**(4m-2) f(z1, z2)."""
    d = 4 * inst.m - 2
    a = poly.as_bi(inst.f)
    out = np.zeros((a.shape[0] + d, a.shape[1] + d), dtype=complex)
    out[d:, d:] = a
    return out


def p_gt_2_blowup_table(m_list, p_list) -> dict:
    """Besov-normalized blow-up ratios for the shifted counterexample polynomial.

    For each m and each p > 2 reports
    ||g(U1,V) - g(U2,V)||_p / (besov_norm(g) * ||U1 - U2||_p); the ratios must
    increase strictly along m for each p, and remain > 0.
    """
    for p in p_list:
        if not p > 2.0:
            raise ValueError(f"the blow-up table requires p > 2, got {p}")
    rows = []
    unitary_checks = []
    for m in m_list:
        inst = build_counterexample(m)
        g = shifted_counterexample_poly(inst)
        g_u1 = funcalc.f_of_pair(g, inst.u1, inst.v)
        g_u2 = funcalc.f_of_pair(g, inst.u2, inst.v)
        bnorm = besov.besov_norm_1_inf_1(g)
        s2 = schatten_norm(g_u1, 2.0)
        unitary_checks.append(abs(s2 - np.sqrt(m)) <= 1e-8 * np.sqrt(m))
        for p in p_list:
            lhs = schatten_norm(g_u1 - g_u2, p)
            pert = schatten_norm(inst.u1 - inst.u2, p)
            rhs = bnorm * pert
            rows.append(TrialRecord(0, m, m, p, lhs, rhs, lhs / rhs,
                                    extra={"besov_norm": bnorm}))
    monotone = {}
    for p in p_list:
        series = [r.ratio for r in rows if r.p == p]
        monotone[str(_p_repr(p))] = all(b > a for a, b in zip(series, series[1:]))
    return {
        "m_list": list(m_list),
        "p_list": [_p_repr(p) for p in p_list],
        "rows": rows,
        "monotone_in_m": monotone,
        "s2_norm_preserved": all(unitary_checks),
        "passed": all(monotone.values()) and all(unitary_checks),
    }
