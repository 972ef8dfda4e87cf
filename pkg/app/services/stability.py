"""
Stability queries: wall membership and the bounded TF-equivalence test.

Two weights are TF equivalent iff every wall meets the segment between them
either nowhere or along the whole segment. Walls are checked degree by
degree up to a bound, so a separating wall is always a certificate while an
equivalence answer is only exact when the bound covers every root of a
representation-finite quiver.
"""

from typing import List, Optional, Sequence

from app.models.responses import TfKind, TfVerdict, Witness
from app.services.cone import contains_point, segment_intersection
from app.services.quiver import (
    DimVector,
    dimension_vectors,
    highest_root_degree,
    is_representation_finite,
)
from app.services.walls import WallTable, wall, wall_sweep
from app.utils.logging_config import engine_logger, get_logger
from app.utils.validators import as_weight, require_positive

logger = get_logger("stability")


def on_wall(table: WallTable, theta: Sequence, d: Sequence[int]) -> bool:
    """True iff theta lies on the wall of d."""
    theta = as_weight(theta, table.quiver.n)
    return contains_point(wall(table, d), theta)


def walls_through(table: WallTable, theta: Sequence, degree_bound: int) -> List[DimVector]:
    """All d of total degree <= degree_bound whose wall contains theta, sorted."""
    theta = as_weight(theta, table.quiver.n)
    return [d for d, cone in wall_sweep(table, degree_bound) if contains_point(cone, theta)]


def in_chamber_bounded(table: WallTable, theta: Sequence, degree_bound: int) -> bool:
    return not walls_through(table, theta, degree_bound)


def exact_bound(table: WallTable) -> Optional[int]:
    """Degree bound making the TF test exact, or None for representation-infinite quivers."""
    if not is_representation_finite(table.quiver):
        return None
    return highest_root_degree(table.quiver)


def tf_equivalent_bounded(table: WallTable, theta: Sequence, theta2: Sequence,
                          degree_bound: int) -> TfVerdict:
    """
    Decide TF equivalence of theta and theta2 against all walls up to a degree bound.

    Args:
        table: wall memo of the quiver
        theta, theta2: exact rational weights of length n
        degree_bound: largest total degree of the dimension vectors checked

    Returns:
        TfVerdict; the witness is the first separating wall in
        (total degree, lexicographic) order
    """
    n = table.quiver.n
    theta = as_weight(theta, n)
    theta2 = as_weight(theta2, n)
    require_positive(degree_bound, "degree bound")

    if theta == theta2:
        verdict = TfVerdict(kind=TfKind.EQUIVALENT_EXACT, bound=degree_bound)
        engine_logger.log_tf_verdict(verdict.kind.value, degree_bound, None)
        return verdict

    wall_sweep(table, degree_bound)
    for d in dimension_vectors(n, degree_bound):
        hit = segment_intersection(wall(table, d), theta, theta2)
        if hit.is_proper:
            verdict = TfVerdict(
                kind=TfKind.NOT_EQUIVALENT,
                witness=Witness(d=d, hit=hit),
                bound=degree_bound,
            )
            engine_logger.log_tf_verdict(verdict.kind.value, degree_bound, d)
            return verdict

    needed = exact_bound(table)
    kind = (TfKind.EQUIVALENT_EXACT
            if needed is not None and degree_bound >= needed
            else TfKind.EQUIVALENT_UP_TO_BOUND)
    engine_logger.log_tf_verdict(kind.value, degree_bound, None)
    return TfVerdict(kind=kind, bound=degree_bound)
