"""Pydantic request/response models shared by the HTTP service and the CLI."""

from __future__ import annotations

import math
from typing import Literal, Union

import numpy as np
from pydantic import BaseModel, Field, field_validator

from . import poly
from .linalg import matrix_from_dict, matrix_to_dict

SchattenP = Union[float, Literal["inf"]]


def p_to_float(p: SchattenP) -> float:
    return math.inf if p == "inf" else float(p)


class MatrixModel(BaseModel):
    """Dense complex matrix: row-major [re, im] entry pairs."""

    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    entries: list[list[float]]

    def to_array(self) -> np.ndarray:
        return matrix_from_dict(self.model_dump())

    @classmethod
    def from_array(cls, a) -> "MatrixModel":
        return cls(**matrix_to_dict(a))


class BiPolyModel(BaseModel):
    """Analytic two-variable polynomial: coefficient grid of [re, im] pairs."""

    d1: int = Field(ge=0)
    d2: int = Field(ge=0)
    coeffs: list[list[list[float]]]

    def to_array(self) -> np.ndarray:
        return poly.bi_from_dict(self.model_dump())

    @classmethod
    def from_array(cls, a) -> "BiPolyModel":
        return cls(**poly.bi_to_dict(a))


class TrialModel(BaseModel):
    seed: int
    m: int
    dim: int
    p: SchattenP
    lhs: float
    rhs: float
    ratio: float
    extra: dict = Field(default_factory=dict)


class SweepSummaryModel(BaseModel):
    max_ratio: float
    violations: int
    passed: bool


class SweepResponse(BaseModel):
    params: dict
    trials: list[TrialModel]
    summary: SweepSummaryModel


def sweep_response(report) -> SweepResponse:
    d = report.to_dict()
    trials = [
        TrialModel(**{**t, "extra": t.get("extra", {})}) for t in d["trials"]
    ]
    return SweepResponse(params=d["params"], trials=trials,
                         summary=SweepSummaryModel(**d["summary"]))


class LipschitzSweepRequest(BaseModel):
    trials: int = Field(ge=1, le=100_000)
    dim: int = Field(ge=1, le=64)
    m: int = Field(ge=1, le=128)
    p: SchattenP = 2.0
    seed: int = 0
    jobs: int | None = Field(default=None, ge=1)

    @field_validator("p")
    @classmethod
    def _p_in_range(cls, v):
        if not 1.0 <= p_to_float(v) <= 2.0:
            raise ValueError("lipschitz sweep requires p in [1, 2]")
        return v


class BesovSweepRequest(BaseModel):
    trials: int = Field(ge=1, le=100_000)
    dim: int = Field(ge=1, le=64)
    p: SchattenP = 2.0
    seed: int = 0
    m_values: list[int] = Field(default=[2, 4, 8, 16])
    jobs: int | None = Field(default=None, ge=1)

    @field_validator("p")
    @classmethod
    def _p_in_range(cls, v):
        if not 1.0 <= p_to_float(v) <= 2.0:
            raise ValueError("besov sweep requires p in [1, 2]")
        return v


class IdentitySweepRequest(BaseModel):
    trials: int = Field(ge=1, le=100_000)
    dim: int = Field(ge=1, le=64)
    m: int = Field(ge=1, le=128)
    seed: int = 0
    tol: float = Field(default=1e-8, gt=0)
    jobs: int | None = Field(default=None, ge=1)


class DerivativeCheckRequest(BaseModel):
    paths: int = Field(ge=1, le=100_000)
    dim: int = Field(ge=1, le=64)
    m: int = Field(ge=1, le=128)
    seed: int = 0
    jobs: int | None = Field(default=None, ge=1)


class CounterexampleRequest(BaseModel):
    m: int = Field(ge=1, le=128)
    p: SchattenP = "inf"


class CounterexampleResponse(BaseModel):
    m: int
    p: SchattenP
    lhs: float
    rhs: float
    ratio: float
    sup_f: float
    f_u2_norm: float
    rank_f_u1: int
    claims: dict[str, bool]
    passed: bool
    record: TrialModel


class BlowupTableRequest(BaseModel):
    m_list: list[int] = Field(default=[4, 8, 16, 32])
    p_list: list[SchattenP] = Field(default=["inf", 4.0])

    @field_validator("m_list")
    @classmethod
    def _m_range(cls, v):
        if not v or any(not 1 <= m <= 128 for m in v):
            raise ValueError("m_list entries must lie in [1, 128]")
        return v

    @field_validator("p_list")
    @classmethod
    def _p_gt_2(cls, v):
        if not v or any(p_to_float(p) <= 2.0 for p in v):
            raise ValueError("blow-up table requires every p > 2")
        return v


class BlowupTableResponse(BaseModel):
    m_list: list[int]
    p_list: list[SchattenP]
    rows: list[TrialModel]
    monotone_in_m: dict[str, bool]
    s2_norm_preserved: bool
    passed: bool


class BesovNormRequest(BaseModel):
    poly: BiPolyModel


class BlockNormModel(BaseModel):
    n: int
    sup_norm: float


class BesovNormResponse(BaseModel):
    besov_norm: float
    projective_bound: float
    blocks: list[BlockNormModel]
