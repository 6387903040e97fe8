from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator
from typing import Any, List, Optional
from fractions import Fraction
from enum import Enum

# ============= HELPERS =============


def exact(value: Any) -> Any:
    """integers stay integers, other rationals become "p/q" strings"""
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [exact(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    if hasattr(value, "is_Integer") and value.is_Integer:
        return int(value)
    if hasattr(value, "is_Rational") and value.is_Rational:
        return f"{value.p}/{value.q}"
    return str(value)


# ============= ENUMS =============


class Basis(str, Enum):
    E = "e"
    Y = "y"


# ============= REPORTS =============


class CheckResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    passed: bool = Field(..., alias="pass")
    detail: str = ""


class Report(BaseModel):
    name: str
    checks: List[CheckResult] = []
    data: Optional[dict] = None

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check_id: str, passed: bool, detail: str = "") -> "Report":
        self.checks.append(CheckResult(id=check_id, passed=bool(passed), detail=detail))
        return self

    def to_json(self) -> dict:
        return self.model_dump(by_alias=True)


# ============= LATTICE SCHEMAS =============


class LatticeIn(BaseModel):
    label: str = ""
    gram: List[List[int]] = Field(..., min_length=1)

    @field_validator("gram", mode="before")
    @classmethod
    def validate_gram(cls, v):
        if not isinstance(v, list) or not all(isinstance(row, list) for row in v):
            raise ValueError("Gram matrix must be a list of rows")
        for row in v:
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ValueError(f"Gram entry {x!r} is not an integer")
        n = len(v)
        if any(len(row) != n for row in v):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if v[i][j] != v[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i},{j})")
        return v


class LatticeOut(BaseModel):
    label: str
    rank: int
    signature: List[int]
    determinant: int
    even: bool
    invariant_factors: List[int]
    gram: List[List[int]]


class ScaleIn(BaseModel):
    lattice: LatticeIn
    factor: int


class SumIn(BaseModel):
    lattices: List[LatticeIn] = Field(..., min_length=1)


class FiniteFormOut(BaseModel):
    label: str
    orders: List[int]
    q: List[str]
    b: List[List[str]]


class OrbitOut(BaseModel):
    representative: List[int]
    size: int
    q: str


# ============= ORBIT SCHEMAS =============


class VectorIn(BaseModel):
    coords: List[int] = Field(..., min_length=6, max_length=6)
    basis: Basis = Basis.E


class ClassificationOut(BaseModel):
    basis: Basis
    coords: List[int]
    primitive: List[int]
    case: str
    norm: int
    delta: str
    representative: List[int]
    n_delta: Optional[int] = None
    f2_class: Optional[List[int]] = None


class OrbitRow(BaseModel):
    delta: int
    case: str
    representative: List[int]
    f2_class: List[int]
    orbit_size: int
    n_delta: int


# ============= UNITARY SCHEMAS =============


class GaussianMatrixIn(BaseModel):
    """entries as [re_num, re_den, im_num, im_den]"""

    entries: List[List[List[int]]]

    @field_validator("entries")
    @classmethod
    def validate_entries(cls, v):
        if len(v) != 4 or any(len(row) != 4 for row in v):
            raise ValueError("Expected a 4x4 matrix")
        for row in v:
            for e in row:
                if len(e) != 4 or e[1] == 0 or e[3] == 0:
                    raise ValueError("Entries are [re_num, re_den, im_num, im_den] with nonzero denominators")
        return v


class PhiOut(BaseModel):
    matrix: List[List[int]]
    congruence: bool
    so_plus: bool


class PfaffianOut(BaseModel):
    y: List[int]
    matrix: List[List[str]]
    pfaffian: str
    delta: int


# ============= CLIFFORD SCHEMAS =============


class QuatOut(BaseModel):
    a: str
    b: str
    ramification: List[str]
    split: bool


class KSReportOut(BaseModel):
    delta: int
    clifford_even: str
    is_split: bool
    ks_dimension: int
    decomposition: str
    ramification: List[str]


# ============= SCENARIO SCHEMAS =============


class ScenarioSummary(BaseModel):
    name: str
    description: str
    fibers: List[str]
    torsion_order: int
    mw_rank: int
    expected_ns: str
    expected_t: str
