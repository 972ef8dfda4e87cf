"""
Pydantic result models of the engine.
Every model serializes deterministically; exact rationals are rendered as "p/q" strings.
"""

from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator


def fraction_to_str(value: Fraction) -> str:
    """Render an exact rational: integers as "3", others as "1/2"."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class RootKind(str, Enum):
    """Classification of a dimension vector by its Tits form."""
    REAL = "real"
    ISOTROPIC = "isotropic"
    IMAGINARY_NONISOTROPIC = "imaginary-nonisotropic"
    NONE = "none"


class RootLabel(BaseModel):
    """Tits form value <d,d> together with the kind it determines."""
    model_config = ConfigDict(frozen=True)

    euler_self: int = Field(..., description="Tits form <d,d>")
    kind: RootKind

    @model_validator(mode="after")
    def check_kind(self) -> "RootLabel":
        if self.kind != kind_for_euler_self(self.euler_self):
            raise ValueError(f"kind {self.kind.value} does not match <d,d> = {self.euler_self}")
        return self


def kind_for_euler_self(q: int) -> RootKind:
    if q == 1:
        return RootKind.REAL
    if q == 0:
        return RootKind.ISOTROPIC
    if q < 0:
        return RootKind.IMAGINARY_NONISOTROPIC
    return RootKind.NONE


class HitKind(str, Enum):
    """Shape of the intersection of a segment with a cone."""
    EMPTY = "empty"
    POINT = "point"
    SUBSEGMENT = "subsegment"
    FULL = "full"


class SegmentHit(BaseModel):
    """Intersection of [p, q] with a cone, as a parameter interval inside [0, 1]."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: HitKind
    t_lo: Optional[Fraction] = None
    t_hi: Optional[Fraction] = None

    @model_validator(mode="after")
    def check_interval(self) -> "SegmentHit":
        if self.kind == HitKind.POINT:
            if self.t_lo is None or self.t_lo != self.t_hi:
                raise ValueError("a point hit needs t_lo == t_hi")
        elif self.kind == HitKind.SUBSEGMENT:
            if self.t_lo is None or self.t_hi is None or not self.t_lo < self.t_hi:
                raise ValueError("a subsegment hit needs t_lo < t_hi")
            if (self.t_lo, self.t_hi) == (0, 1):
                raise ValueError("the whole segment is a full hit")
        return self

    @property
    def is_proper(self) -> bool:
        """True for a nonempty hit that is not the whole segment."""
        return self.kind in (HitKind.POINT, HitKind.SUBSEGMENT)

    @field_serializer("t_lo", "t_hi")
    def serialize_t(self, value: Optional[Fraction]) -> Optional[str]:
        return None if value is None else fraction_to_str(value)


class SchurReport(BaseModel):
    """Schur-root classification of a dimension vector from its wall dimension."""
    model_config = ConfigDict(frozen=True)

    d: Tuple[int, ...]
    label: RootLabel
    wall_dim: int
    indivisible: bool
    is_schur: bool
    is_multiple_of_schur: bool

    @model_validator(mode="after")
    def schur_implies_multiple(self) -> "SchurReport":
        if self.is_schur and not self.is_multiple_of_schur:
            raise ValueError("a Schur root is a multiple of a Schur root")
        return self


class TfKind(str, Enum):
    NOT_EQUIVALENT = "not_equivalent"
    EQUIVALENT_UP_TO_BOUND = "equivalent_up_to_bound"
    EQUIVALENT_EXACT = "equivalent_exact"


class Witness(BaseModel):
    """A wall cutting the segment properly."""
    model_config = ConfigDict(frozen=True)

    d: Tuple[int, ...]
    hit: SegmentHit


class TfVerdict(BaseModel):
    """Bounded TF-equivalence decision for two stability parameters."""
    model_config = ConfigDict(frozen=True)

    kind: TfKind
    witness: Optional[Witness] = None
    bound: int

    @model_validator(mode="after")
    def check_witness(self) -> "TfVerdict":
        if self.kind == TfKind.NOT_EQUIVALENT:
            if self.witness is None or not self.witness.hit.is_proper:
                raise ValueError("not_equivalent needs a point or subsegment witness")
        return self

    @property
    def is_equivalent(self) -> bool:
        return self.kind != TfKind.NOT_EQUIVALENT

    def to_output(self) -> dict:
        """JSON shape of the `tf` command."""
        return {
            "verdict": self.kind.value,
            "bound": self.bound,
            "witness": self.witness.model_dump(mode="json") if self.witness else None
        }


class Violation(BaseModel):
    """A chamber failing the unimodularity check."""
    chamber: int
    rays: List[Tuple[int, ...]]
    det: int


class UnimodularityReport(BaseModel):
    passed: bool
    checked: int
    violations: List[Violation] = Field(default_factory=list)


class CoverageReport(BaseModel):
    """Outcome of the fan-coverage check."""
    passed: bool
    chambers: int
    facets_shared: int
    overlapping_pairs: List[Tuple[int, int]] = Field(default_factory=list)
    unmatched_facets: List[Tuple[int, Tuple[int, ...]]] = Field(
        default_factory=list,
        description="(chamber index, facet normal) of facets not shared with exactly one other chamber"
    )
    adjacent_pairs: List[Tuple[int, int]] = Field(
        default_factory=list,
        description="Chamber index pairs sharing a facet"
    )


class ChamberEntry(BaseModel):
    rays: List[Tuple[int, ...]]
    det: int
    cells: int


class ChamberSummary(BaseModel):
    chambers: int
    facets_shared: int
    coverage: str


class ChamberReport(BaseModel):
    """Output of the `chambers` command."""
    chambers: List[ChamberEntry]
    summary: ChamberSummary


class OracleResult(BaseModel):
    """Comparison of the recursive wall with the Kronecker closed form."""
    d: Tuple[int, ...]
    status: str
    recursive_rays: List[Tuple[int, ...]] = Field(default_factory=list)
    oracle_rays: List[Tuple[int, ...]] = Field(default_factory=list)
