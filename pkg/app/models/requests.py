"""
Pydantic input models for the engine.
"""

from fractions import Fraction
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.utils.linalg import rank, sub


class SliceSpec(BaseModel):
    """Affine triangle p0 p1 p2 in K0(proj A)_R on which walls are drawn."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p0: Tuple[Fraction, ...] = Field(..., description="Vertex with barycentric (1,0,0)")
    p1: Tuple[Fraction, ...] = Field(..., description="Vertex with barycentric (0,1,0)")
    p2: Tuple[Fraction, ...] = Field(..., description="Vertex with barycentric (0,0,1)")

    @model_validator(mode="after")
    def check_affinely_independent(self) -> "SliceSpec":
        n = len(self.p0)
        if len(self.p1) != n or len(self.p2) != n:
            raise ValueError("slice vertices must have the same length")
        if rank([sub(self.p1, self.p0), sub(self.p2, self.p0)], n) != 2:
            raise ValueError("slice vertices must be affinely independent")
        return self

    @classmethod
    def default_simplex(cls, n: int) -> "SliceSpec":
        """The triangle {a1[P1] - a2[P2] - a3[P3] : a >= 0, a1 + a2 + a3 = 1} for n = 3."""
        if n != 3:
            raise ValueError("the default slice plane needs a quiver with 3 vertices")
        one = Fraction(1)
        zero = Fraction(0)
        return cls(
            p0=(one, zero, zero),
            p1=(zero, -one, zero),
            p2=(zero, zero, -one),
        )

    @property
    def vertices(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return (self.p0, self.p1, self.p2)

    def to_ambient(self, bary: Tuple[Fraction, Fraction, Fraction]) -> Tuple[Fraction, ...]:
        """Map barycentric coordinates (u, v, w) to u p0 + v p1 + w p2."""
        u, v, w = bary
        return tuple(u * a + v * b + w * c for a, b, c in zip(self.p0, self.p1, self.p2))
