"""FastAPI front end over the verification harnesses.

Each endpoint wraps one harness; the CLI calls the same handler functions
in-process, so HTTP and command-line runs produce identical reports.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import besov, verify
from .schemas import (
    BesovNormRequest,
    BesovNormResponse,
    BesovSweepRequest,
    BlockNormModel,
    BlowupTableRequest,
    BlowupTableResponse,
    CounterexampleRequest,
    CounterexampleResponse,
    DerivativeCheckRequest,
    IdentitySweepRequest,
    LipschitzSweepRequest,
    SweepResponse,
    TrialModel,
    p_to_float,
    sweep_response,
)

app = FastAPI(title="paircalc", version="0.1.0")


def run_lipschitz_sweep(req: LipschitzSweepRequest) -> SweepResponse:
    report = verify.lipschitz_sweep(req.trials, req.dim, req.m, p_to_float(req.p),
                                    req.seed, jobs=req.jobs)
    return sweep_response(report)


def run_besov_sweep(req: BesovSweepRequest) -> SweepResponse:
    report = verify.besov_lipschitz_sweep(req.trials, req.dim, p_to_float(req.p),
                                          req.seed, m_values=tuple(req.m_values),
                                          jobs=req.jobs)
    return sweep_response(report)


def run_identity_sweep(req: IdentitySweepRequest) -> SweepResponse:
    report = verify.identity_sweep(req.trials, req.dim, req.m, req.seed,
                                   tol=req.tol, jobs=req.jobs)
    return sweep_response(report)


def run_derivative_check(req: DerivativeCheckRequest) -> SweepResponse:
    report = verify.derivative_check(req.paths, req.dim, req.m, req.seed,
                                     jobs=req.jobs)
    return sweep_response(report)


def run_counterexample(req: CounterexampleRequest) -> CounterexampleResponse:
    inst = verify.build_counterexample(req.m)
    result = verify.check_counterexample(inst, p_to_float(req.p))
    record = result.pop("record")
    return CounterexampleResponse(**result, record=TrialModel(**record.to_dict()))


def run_blowup_table(req: BlowupTableRequest) -> BlowupTableResponse:
    result = verify.p_gt_2_blowup_table(req.m_list, [p_to_float(p) for p in req.p_list])
    rows = [TrialModel(**r.to_dict()) for r in result["rows"]]
    return BlowupTableResponse(
        m_list=result["m_list"],
        p_list=result["p_list"],
        rows=rows,
        monotone_in_m=result["monotone_in_m"],
        s2_norm_preserved=result["s2_norm_preserved"],
        passed=result["passed"],
    )


def run_besov_norm(req: BesovNormRequest) -> BesovNormResponse:
    coeffs = req.poly.to_array()
    sups = besov.block_sup_norms(coeffs)
    return BesovNormResponse(
        besov_norm=besov.besov_norm_1_inf_1(coeffs),
        projective_bound=besov.projective_bound(coeffs),
        blocks=[BlockNormModel(n=n, sup_norm=s) for n, s in enumerate(sups)],
    )


def _wrap(fn, req):
    try:
        return fn(req)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/lipschitz-sweep", response_model=SweepResponse)
def lipschitz_sweep_endpoint(req: LipschitzSweepRequest):
    return _wrap(run_lipschitz_sweep, req)


@app.post("/besov-sweep", response_model=SweepResponse)
def besov_sweep_endpoint(req: BesovSweepRequest):
    return _wrap(run_besov_sweep, req)


@app.post("/verify-identities", response_model=SweepResponse)
def identity_sweep_endpoint(req: IdentitySweepRequest):
    return _wrap(run_identity_sweep, req)


@app.post("/derivative-check", response_model=SweepResponse)
def derivative_check_endpoint(req: DerivativeCheckRequest):
    return _wrap(run_derivative_check, req)


@app.post("/counterexample", response_model=CounterexampleResponse)
def counterexample_endpoint(req: CounterexampleRequest):
    return _wrap(run_counterexample, req)


@app.post("/blowup-table", response_model=BlowupTableResponse)
def blowup_table_endpoint(req: BlowupTableRequest):
    return _wrap(run_blowup_table, req)


@app.post("/besov-norm", response_model=BesovNormResponse)
def besov_norm_endpoint(req: BesovNormRequest):
    return _wrap(run_besov_norm, req)
