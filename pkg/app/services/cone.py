"""
Exact rational polyhedral cones in double description.

A cone is carried both by generators (extreme rays modulo a lineality basis)
and by constraints (facet inequalities v.x >= 0 and a basis of equations
v.x = 0). Conversions use the incremental double description method with the
combinatorial adjacency test; the generator -> constraint direction runs the
same routine on the dual.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Sequence, Tuple

from app.config import settings
from app.models.responses import HitKind, SegmentHit
from app.utils.errors import ConsistencyError, PreconditionError
from app.utils.linalg import (
    IntVector,
    dot,
    is_zero,
    lex_unique,
    neg,
    nullspace,
    primitive,
    project_to_complement,
    rank,
    row_space_basis,
    scale,
    sub,
)
from app.utils.logging_config import engine_logger, get_logger

logger = get_logger("cone")


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone in R^n with both descriptions, canonically presented."""
    n: int
    rays: Tuple[IntVector, ...]
    lineality: Tuple[IntVector, ...]
    ineqs: Tuple[IntVector, ...]
    eqs: Tuple[IntVector, ...]

    @property
    def dim(self) -> int:
        return self.n - len(self.eqs)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_strongly_convex(self) -> bool:
        return not self.lineality

    def generators(self) -> Tuple[IntVector, ...]:
        """Rays plus both signs of every lineality vector."""
        return self.rays + self.lineality + tuple(neg(v) for v in self.lineality)

    def to_dict(self) -> dict:
        return {
            "rays": [list(v) for v in self.rays],
            "lineality": [list(v) for v in self.lineality],
            "ineqs": [list(v) for v in self.ineqs],
            "eqs": [list(v) for v in self.eqs],
            "dim": self.dim,
            "lineality_dim": self.lineality_dim,
        }


class DimensionInfo(NamedTuple):
    dim: int
    lineality_dim: int
    strongly_convex: bool


def _as_primitive_vectors(vectors: Iterable[Sequence], n: int) -> List[IntVector]:
    out = []
    for v in vectors:
        if len(v) != n:
            raise PreconditionError(f"dimension mismatch: vector of length {len(v)} in R^{n}")
        p = primitive(v)
        if not is_zero(p):
            out.append(p)
    return out


def _extreme_generators(ineqs: Sequence[IntVector], eqs: Sequence[IntVector],
                        n: int) -> Tuple[List[IntVector], List[IntVector]]:
    """
    Double description: generators of {x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}.

    Returns:
        (extreme rays modulo lineality, lineality basis), integer vectors
    """
    lineality: List[IntVector] = nullspace(eqs, n)
    rays: List[IntVector] = []
    processed: List[IntVector] = []

    for a in ineqs:
        values = [dot(a, l) for l in lineality]
        pivot = next((i for i, v in enumerate(values) if v != 0), None)

        if pivot is not None:
            # The constraint halves a lineality direction: that direction
            # becomes a ray and everything else is sheared into a.x = 0.
            l_star = lineality.pop(pivot)
            s = values.pop(pivot)
            if s < 0:
                l_star, s = neg(l_star), -s
            lineality = [
                primitive(sub(scale(l, s), scale(l_star, v))) if v else l
                for l, v in zip(lineality, values)
            ]
            sheared = []
            for r in rays:
                v = dot(a, r)
                sheared.append(primitive(sub(scale(r, s), scale(l_star, v))) if v else r)
            rays = sheared + [l_star]
            processed.append(a)
            continue

        values = [dot(a, r) for r in rays]
        positive = [(r, v) for r, v in zip(rays, values) if v > 0]
        negative = [(r, v) for r, v in zip(rays, values) if v < 0]
        if not negative:
            processed.append(a)
            continue

        zero_sets = {
            r: frozenset(k for k, b in enumerate(processed) if dot(b, r) == 0)
            for r in rays
        }
        new_rays = [r for r, v in zip(rays, values) if v >= 0]
        for p, vp in positive:
            for q, vq in negative:
                common = zero_sets[p] & zero_sets[q]
                # adjacent iff no third ray lies on the smallest face holding p and q
                if any(r != p and r != q and common <= zero_sets[r] for r in rays):
                    continue
                new_rays.append(primitive(sub(scale(q, vp), scale(p, vq))))
        rays = list(dict.fromkeys(new_rays))
        processed.append(a)

    return rays, lineality


def _assemble(n: int, rays: Sequence[IntVector], lineality: Sequence[IntVector],
              ineqs: Sequence[IntVector], eqs: Sequence[IntVector]) -> Cone:
    """Canonicalize minimal descriptions and build the cone."""
    lin_basis = row_space_basis(lineality, n)
    eq_basis = row_space_basis(eqs, n)
    cone = Cone(
        n=n,
        rays=lex_unique(primitive(project_to_complement(r, lin_basis)) for r in rays),
        lineality=tuple(sorted(lin_basis)),
        ineqs=lex_unique(primitive(project_to_complement(v, eq_basis)) for v in ineqs),
        eqs=tuple(sorted(eq_basis)),
    )
    if settings.verify_cones:
        _check_coherence(cone)
    return cone


def _check_coherence(cone: Cone) -> None:
    """Every generator satisfies every constraint, and the dimensions agree."""
    for g in cone.generators():
        if any(dot(v, g) < 0 for v in cone.ineqs) or any(dot(v, g) != 0 for v in cone.eqs):
            detail = f"generator {g} violates the constraints of {cone.to_dict()}"
            engine_logger.log_consistency_violation("cone_coherence", detail)
            raise ConsistencyError(detail)
    if rank(cone.rays + cone.lineality, cone.n) != cone.dim:
        detail = f"generators and constraints disagree on dimension: {cone.to_dict()}"
        engine_logger.log_consistency_violation("cone_dimension", detail)
        raise ConsistencyError(detail)


def cone_from_generators(n: int, rays: Iterable[Sequence] = (),
                         lineality: Iterable[Sequence] = ()) -> Cone:
    """
    Cone generated by rays (non-negative combinations) and lineality vectors (all combinations).

    Args:
        n: ambient dimension
        rays: rational vectors; redundant ones are removed
        lineality: rational vectors spanning a linear subspace

    Returns:
        The cone with both descriptions computed and normalized
    """
    ray_list = _as_primitive_vectors(rays, n)
    lin_list = _as_primitive_vectors(lineality, n)
    facet_normals, equations = _extreme_generators(ray_list, lin_list, n)
    min_rays, min_lin = _extreme_generators(facet_normals, equations, n)
    return _assemble(n, min_rays, min_lin, facet_normals, equations)


def cone_from_constraints(n: int, ineqs: Iterable[Sequence] = (),
                          eqs: Iterable[Sequence] = ()) -> Cone:
    """Solution cone of {x : v.x >= 0 for v in ineqs, v.x = 0 for v in eqs}."""
    ineq_list = _as_primitive_vectors(ineqs, n)
    eq_list = _as_primitive_vectors(eqs, n)
    rays, lineality = _extreme_generators(ineq_list, eq_list, n)
    facet_normals, equations = _extreme_generators(rays, lineality, n)
    return _assemble(n, rays, lineality, facet_normals, equations)


def zero_cone(n: int) -> Cone:
    return cone_from_generators(n)


def whole_space(n: int) -> Cone:
    return cone_from_constraints(n)


def linear_span_cone(n: int, vectors: Iterable[Sequence]) -> Cone:
    return cone_from_generators(n, lineality=vectors)


def dual_cone(c: Cone) -> Cone:
    """
    {u : u.v >= 0 for every v in c}.

    Constraint normals of the dual are the generators of c and vice versa, and
    the canonical presentation is symmetric, so this is a swap.
    """
    return Cone(n=c.n, rays=c.ineqs, lineality=c.eqs, ineqs=c.rays, eqs=c.lineality)


def _same_ambient(a: Cone, b: Cone) -> None:
    if a.n != b.n:
        raise PreconditionError(f"dimension mismatch: cones in R^{a.n} and R^{b.n}")


def intersect(a: Cone, b: Cone) -> Cone:
    _same_ambient(a, b)
    return cone_from_constraints(a.n, a.ineqs + b.ineqs, a.eqs + b.eqs)


def conic_hull(cones: Sequence[Cone]) -> Cone:
    """Smallest polyhedral cone containing every cone of the list."""
    if not cones:
        raise PreconditionError("conic hull of an empty list")
    n = cones[0].n
    for c in cones[1:]:
        _same_ambient(cones[0], c)
    rays = [r for c in cones for r in c.rays]
    lineality = [l for c in cones for l in c.lineality]
    return cone_from_generators(n, rays, lineality)


def contains_point(c: Cone, p: Sequence) -> bool:
    if len(p) != c.n:
        raise PreconditionError(f"dimension mismatch: point of length {len(p)} in R^{c.n}")
    return all(dot(v, p) >= 0 for v in c.ineqs) and all(dot(v, p) == 0 for v in c.eqs)


def contains_cone(a: Cone, b: Cone) -> bool:
    """True iff b is a subset of a."""
    _same_ambient(a, b)
    return all(contains_point(a, g) for g in b.generators())


def cones_equal(a: Cone, b: Cone) -> bool:
    return contains_cone(a, b) and contains_cone(b, a)


def dimension_info(c: Cone) -> DimensionInfo:
    return DimensionInfo(dim=c.dim, lineality_dim=c.lineality_dim,
                         strongly_convex=c.is_strongly_convex)


def relative_interior_point(c: Cone) -> Tuple[Fraction, ...]:
    """Sum of the extreme rays: strictly positive on every facet inequality."""
    point = [Fraction(0)] * c.n
    for r in c.rays:
        point = [x + y for x, y in zip(point, r)]
    return tuple(point)


def segment_intersection(c: Cone, p: Sequence, q: Sequence) -> SegmentHit:
    """
    Intersect the segment {(1-t)p + tq : t in [0,1]} with c.

    Every constraint restricts t to a half-line or a single value; the
    intersection of these with [0, 1] is classified.
    """
    if len(p) != c.n or len(q) != c.n:
        raise PreconditionError("dimension mismatch between segment and cone")
    p = tuple(Fraction(x) for x in p)
    q = tuple(Fraction(x) for x in q)
    if p == q:
        raise PreconditionError("segment endpoints coincide")

    direction = sub(q, p)
    lo, hi = Fraction(0), Fraction(1)
    empty = SegmentHit(kind=HitKind.EMPTY)

    for v in c.ineqs:
        a0, a1 = dot(v, p), dot(v, direction)
        if a1 == 0:
            if a0 < 0:
                return empty
        elif a1 > 0:
            lo = max(lo, -a0 / a1)
        else:
            hi = min(hi, -a0 / a1)

    for v in c.eqs:
        a0, a1 = dot(v, p), dot(v, direction)
        if a1 == 0:
            if a0 != 0:
                return empty
        else:
            t = -a0 / a1
            lo, hi = max(lo, t), min(hi, t)

    if lo > hi:
        return empty
    if lo == hi:
        return SegmentHit(kind=HitKind.POINT, t_lo=lo, t_hi=hi)
    if lo == 0 and hi == 1:
        return SegmentHit(kind=HitKind.FULL, t_lo=lo, t_hi=hi)
    return SegmentHit(kind=HitKind.SUBSEGMENT, t_lo=lo, t_hi=hi)


def facets(c: Cone) -> List[Tuple[IntVector, Cone]]:
    """(normal, facet cone) for every facet inequality of c."""
    return [
        (v, cone_from_constraints(c.n, c.ineqs, c.eqs + (v,)))
        for v in c.ineqs
    ]
