from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


@dataclass
class RelationResult:
    name: str
    passed: bool
    residual: str = "0"
    trial: int | None = None
    description: str | None = None


def zero_check(
    name: str, residual, trial: int | None = None, description: str | None = None
) -> RelationResult:
    """Build a RelationResult from a residual RatFunc or MatrixRF."""
    if residual.is_zero():
        return RelationResult(
            name=name, passed=True, trial=trial, description=description
        )
    if hasattr(residual, "first_nonzero"):
        i, j, x = residual.first_nonzero()
        text = f"entry ({i + 1},{j + 1}): {x}"
    else:
        text = str(residual)
    return RelationResult(
        name=name, passed=False, residual=text, trial=trial, description=description
    )


class ParamsFile(BaseModel):
    """Parameter file: `{"r": 2, "rho": "canonical", "q": "q", "u": ["u1", "u2"]}`."""

    # plain JSON or TOML numbers are read as their decimal text
    model_config = ConfigDict(coerce_numbers_to_str=True)

    r: int = Field(ge=1)
    rho: str = "canonical"
    q: str = "q"
    u: list[str] | None = None
    mode: Literal["symbolic", "specialized"] = "symbolic"
    deltas: list[str] | None = None

    @model_validator(mode="after")
    def check_lengths(self):
        if self.u is not None and len(self.u) != self.r:
            raise ValueError(f"expected {self.r} entries in u, got {len(self.u)}")
        if self.deltas is not None and len(self.deltas) != self.r:
            raise ValueError(
                f"expected {self.r} initial deltas, got {len(self.deltas)}"
            )
        if self.mode == "specialized" and self.u is None:
            raise ValueError("specialized parameters need explicit values for u")
        return self


class StrandModel(BaseModel):
    ends: tuple[str, str]
    label: int = 0

    @field_validator("ends")
    @classmethod
    def check_ends(cls, ends):
        for end in ends:
            if len(end) < 2 or end[0] not in "tb" or not end[1:].isdigit():
                raise ValueError(f"invalid endpoint '{end}', use e.g. 't1' or 'b2'")
        return ends


class DiagramFile(BaseModel):
    """Diagram file: `{"n": 2, "r": 3, "strands": [{"ends": ["t1", "b2"], "label": 1}]}`."""

    n: int = Field(ge=0)
    r: int = Field(ge=1)
    strands: list[StrandModel]


class ThetaFile(BaseModel):
    """Loop parameters theta_0..theta_{r//2} as rationals, e.g. `["3", "1/2"]`."""

    model_config = ConfigDict(coerce_numbers_to_str=True)

    thetas: list[str]


class RelationModel(BaseModel):
    name: str
    passed: bool
    residual: str
    trial: int | None = None
    description: str | None = None

    @classmethod
    def from_result(cls, result: RelationResult) -> RelationModel:
        return cls(
            name=result.name,
            passed=result.passed,
            residual=result.residual,
            trial=result.trial,
            description=result.description,
        )


class CheckReport(BaseModel):
    ok: bool
    relations: list[RelationModel]


class AdmissibilityModel(BaseModel):
    ok: bool
    weakly_admissible: bool
    wilcox_yu_linear: dict[int, bool]
    wilcox_yu_rho: bool
    delta_recursion: bool
    ground_relation: bool
    u_admissible: bool
    relations: list[RelationModel]


class DeltaEntry(BaseModel):
    index: int
    value: str
    source: str


class DeltaReport(BaseModel):
    r: int
    deltas: list[DeltaEntry]


class CountReport(BaseModel):
    total: int
    by_shape: dict[str, int]


class TableauxReport(BaseModel):
    n: int
    r: int
    tableaux: list[list[list[list[int]]]]


class WeightReport(BaseModel):
    n: int
    r: int
    weights: dict[str, str]


class DiagramModel(BaseModel):
    n: int
    r: int
    strands: list[StrandModel]


class ProductReport(BaseModel):
    scalar: str
    diagram: DiagramModel


class GramReport(BaseModel):
    n: int
    r: int
    size: int
    thetas: list[str]
    determinant: str
    nondegenerate: bool


class DiagramCountReport(BaseModel):
    n: int
    r: int
    count: int
    formula: int


class SuiteReport(BaseModel):
    ok: bool
    r: int
    n: int
    mode: Literal["symbolic", "randomized"]
    seed: int
    trials: int
    sections: dict[str, list[RelationModel]]


class RunConfig(BaseModel):
    """Settings of one command after merging flags, environment and config file."""

    mode: Literal["symbolic", "randomized"] = "symbolic"
    trials: int = Field(default=20, ge=1)
    seed: int = 0
    threads: int = Field(default=1, ge=1)
    format: Literal["json", "tsv", "pretty"] = "json"
    window: int = Field(default=5, ge=0)
