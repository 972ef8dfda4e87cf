"""
Walls of dimension vectors.

The wall of d is the set of weights for which some representation of
dimension vector d is semistable. It is computed from closed forms on
supports of size one and two, and for larger supports as the conic hull of
the pairwise intersections wall(c) & wall(d - c) over all splits of d.
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from itertools import groupby, product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from app.config import settings
from app.models.responses import OracleResult, SchurReport
from app.services.cone import (
    Cone,
    cone_from_generators,
    conic_hull,
    cones_equal,
    intersect,
    zero_cone,
)
from app.services.quiver import (
    DimVector,
    Quiver,
    dimension_vectors,
    is_indivisible,
    kronecker_quiver,
    kronecker_sequence,
    root_label,
    support,
)
from app.utils.errors import PreconditionError
from app.utils.linalg import unit_vector
from app.utils.logging_config import engine_logger, get_logger
from app.utils.validators import require_dim_vector, require_positive

logger = get_logger("walls")


class WallTable:
    """
    Memo of walls for one quiver.

    Entries are written once and never replaced; reads and writes go through
    a lock so that same-degree walls can be computed from worker threads.
    """

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self._memo: Dict[DimVector, Cone] = {}
        self._lock = threading.Lock()

    def get(self, d: DimVector) -> Optional[Cone]:
        with self._lock:
            return self._memo.get(d)

    def store(self, d: DimVector, cone: Cone) -> Cone:
        """Record a wall; if another thread got there first its value is kept."""
        with self._lock:
            return self._memo.setdefault(d, cone)

    def __len__(self) -> int:
        with self._lock:
            return len(self._memo)

    def __contains__(self, d: DimVector) -> bool:
        with self._lock:
            return d in self._memo


_tables: Dict[Quiver, WallTable] = {}
_tables_lock = threading.Lock()


def get_wall_table(quiver: Quiver) -> WallTable:
    """Shared wall table per quiver (singleton per quiver value)."""
    with _tables_lock:
        if quiver not in _tables:
            _tables[quiver] = WallTable(quiver)
        return _tables[quiver]


def _complement_lineality(n: int, supp: Sequence[int]) -> List[Tuple[int, ...]]:
    return [unit_vector(n, i) for i in range(n) if i not in supp]


def _rank_one_wall(q: Quiver, d: DimVector) -> Cone:
    return cone_from_generators(q.n, lineality=_complement_lineality(q.n, support(d)))


def _rank_two_wall(q: Quiver, d: DimVector) -> Cone:
    """
    Support {k, l} with k the arrow source: the ray b[P_k] - a[P_l] is present
    iff a^2 + b^2 - m a b <= 1 for the reduced pair (a, b) = (d_k, d_l) / gcd.
    """
    k, l = support(d)
    if q.arrow_count(l + 1, k + 1) > 0:
        k, l = l, k
    m = q.arrow_count(k + 1, l + 1)
    g = gcd(d[k], d[l])
    a, b = d[k] // g, d[l] // g

    lineality = _complement_lineality(q.n, (k, l))
    rays = []
    if a * a + b * b - m * a * b <= 1:
        ray = [0] * q.n
        ray[k], ray[l] = b, -a
        rays.append(tuple(ray))
    return cone_from_generators(q.n, rays, lineality)


def _splits(d: DimVector) -> List[Tuple[DimVector, DimVector]]:
    """Unordered splits d = c + (d - c) with 0 < c < d componentwise."""
    out = []
    for c in product(*(range(x + 1) for x in d)):
        if not any(c) or c == d:
            continue
        rest = tuple(x - y for x, y in zip(d, c))
        if c <= rest:
            out.append((c, rest))
    return out


def wall(table: WallTable, d: Sequence[int]) -> Cone:
    """
    The wall of a nonzero dimension vector d.

    Args:
        table: memo of the quiver
        d: dimension vector of length n

    Returns:
        Wall cone inside the hyperplane orthogonal to d
    """
    q = table.quiver
    d = require_dim_vector(d, q.n)
    cached = table.get(d)
    if cached is not None:
        return cached

    size = len(support(d))
    splits = 0
    if size == 1:
        cone = _rank_one_wall(q, d)
    elif size == 2:
        cone = _rank_two_wall(q, d)
    else:
        pieces = []
        for c, rest in _splits(d):
            pieces.append(intersect(wall(table, c), wall(table, rest)))
            splits += 1
        cone = conic_hull(pieces)

    cone = table.store(d, cone)
    engine_logger.log_wall_computed(d, cone.dim, len(cone.rays), cone.lineality_dim, splits)
    return cone


def kronecker_wall_oracle(m: int, d: Sequence[int]) -> Cone:
    """
    Closed-form wall of the m-Kronecker quiver 1 -> 2 (m arrows).

    Vectors with a zero coordinate give the coordinate lines. Otherwise the
    reduced pair (a, b) decides: the preprojective and preinjective pairs built
    from s_0 = 0, s_1 = 1, s_{i+2} = m s_{i+1} - s_i carry a single ray, as do
    the pairs in the imaginary band a^2 + b^2 - m a b < 0 for m >= 3.
    """
    if m < 0:
        raise PreconditionError(f"m must be non-negative, got {m}")
    d = require_dim_vector(d, 2)
    x, y = d
    if x == 0:
        return cone_from_generators(2, lineality=[(1, 0)])
    if y == 0:
        return cone_from_generators(2, lineality=[(0, 1)])

    g = gcd(x, y)
    a, b = x // g, y // g

    def ray(u: int, v: int) -> Cone:
        return cone_from_generators(2, rays=[(u, v)])

    if m == 0:
        return zero_cone(2)
    if a == b and m <= 2:
        return ray(1, -1)
    if m == 1:
        return zero_cone(2)
    if m == 2:
        if b == a + 1:
            return ray(a + 1, -a)
        if a == b + 1:
            return ray(b, -(b + 1))
        return zero_cone(2)

    if a * a + b * b - m * a * b < 0:
        return ray(b, -a)
    seq = kronecker_sequence(m, 3)
    while seq[-1] <= max(a, b):
        seq.append(m * seq[-1] - seq[-2])
    for i in range(1, len(seq) - 1):
        if (a, b) == (seq[i], seq[i + 1]):
            return ray(seq[i + 1], -seq[i])
        if (a, b) == (seq[i + 1], seq[i]):
            return ray(seq[i], -seq[i + 1])
    return zero_cone(2)


def classify_schur(table: WallTable, d: Sequence[int]) -> SchurReport:
    """Schur criterion from the wall dimension and the sign of the Tits form."""
    q = table.quiver
    d = require_dim_vector(d, q.n)
    label = root_label(q, d)
    wall_dim = wall(table, d).dim
    indivisible = is_indivisible(d)
    full = wall_dim == q.n - 1

    if label.euler_self >= 0:
        is_schur = indivisible and full
        is_multiple = full
    else:
        is_schur = is_multiple = full

    return SchurReport(
        d=d,
        label=label,
        wall_dim=wall_dim,
        indivisible=indivisible,
        is_schur=is_schur,
        is_multiple_of_schur=is_multiple,
    )


def wall_sweep(table: WallTable, degree_bound: int) -> List[Tuple[DimVector, Cone]]:
    """
    Walls of every nonzero d with total degree <= degree_bound.

    Degree levels are filled in increasing order, so every wall needed by the
    recursion is already memoized when a level starts; walls of one level are
    independent and go to a thread pool when settings.max_workers > 1.

    Returns:
        (d, wall) pairs sorted by d
    """
    require_positive(degree_bound, "degree bound")
    vectors = dimension_vectors(table.quiver.n, degree_bound)
    results: Dict[DimVector, Cone] = {}

    for degree, level in groupby(vectors, key=sum):
        level = list(level)
        if settings.max_workers > 1:
            with ThreadPoolExecutor(max_workers=settings.max_workers) as pool:
                cones = list(pool.map(lambda d: wall(table, d), level))
        else:
            cones = [wall(table, d) for d in level]
        results.update(zip(level, cones))
        engine_logger.log_sweep_level(degree, len(level), len(table))

    return sorted(results.items())


def schur_roots(table: WallTable, degree_bound: int) -> List[SchurReport]:
    """Reports of all Schur roots of total degree <= degree_bound, sorted by d."""
    wall_sweep(table, degree_bound)
    reports = [classify_schur(table, d) for d in dimension_vectors(table.quiver.n, degree_bound)]
    return sorted((r for r in reports if r.is_schur), key=lambda r: r.d)


def kronecker_oracle_sweep(m: int, degree_bound: int) -> List[OracleResult]:
    """Compare the recursive walls of the m-Kronecker quiver with the closed form."""
    table = get_wall_table(kronecker_quiver(m))
    results = []
    for d, cone in wall_sweep(table, degree_bound):
        expected = kronecker_wall_oracle(m, d)
        status = "pass" if cones_equal(cone, expected) else "fail"
        if status == "fail":
            logger.warning("oracle_mismatch", m=m, d=list(d),
                           recursive=cone.to_dict(), oracle=expected.to_dict())
        results.append(OracleResult(
            d=d,
            status=status,
            recursive_rays=list(cone.rays),
            oracle_rays=list(expected.rays),
        ))
    logger.info("oracle_sweep_complete", m=m, bound=degree_bound,
                checked=len(results), failed=sum(r.status == "fail" for r in results))
    return results
