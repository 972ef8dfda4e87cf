"""
Chamber enumeration for representation-finite quivers.

The hyperplanes orthogonal to the positive roots cut the weight space into
open cells. Neighbouring cells are glued when the facet separating them is
not covered by the wall of its root; the glued components are the chambers.
Every chamber is checked to be a unimodular simplicial cone, and the full set
is checked to tile the whole space.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.models.responses import (
    ChamberEntry,
    ChamberReport,
    ChamberSummary,
    CoverageReport,
    UnimodularityReport,
    Violation,
)
from app.services.cone import (
    Cone,
    cone_from_constraints,
    conic_hull,
    cones_equal,
    contains_cone,
    facets,
    intersect,
    relative_interior_point,
    whole_space,
)
from app.services.quiver import DimVector, enumerate_positive_roots, is_representation_finite
from app.services.walls import WallTable, wall
from app.utils.errors import ConsistencyError, PreconditionError
from app.utils.linalg import IntVector, determinant, dot, neg
from app.utils.logging_config import engine_logger, get_logger
from app.utils.validators import as_weight

logger = get_logger("chambers")


@dataclass(frozen=True)
class Cell:
    """Open cell of the root arrangement: signs[i] is '+' or '-' on root i."""
    index: int
    signs: str
    cone: Cone
    witness: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Chamber:
    """Closure of a chamber with the cells it is glued from."""
    cells: Tuple[int, ...]
    cone: Cone
    g_matrix: Tuple[IntVector, ...]

    @property
    def rays(self) -> Tuple[IntVector, ...]:
        return self.cone.rays

    @property
    def det(self) -> int:
        return determinant(self.g_matrix)


def _half_space(root: DimVector, sign: str) -> IntVector:
    return tuple(root) if sign == "+" else neg(root)


def _enumerate_cells(n: int, roots: Sequence[DimVector]) -> List[Cell]:
    """Depth-first search over sign prefixes; a prefix survives iff its closed cone is full-dimensional."""
    cells: List[Cell] = []
    stack: List[Tuple[str, Cone]] = [("", whole_space(n))]
    while stack:
        signs, cone = stack.pop()
        if len(signs) == len(roots):
            cells.append(Cell(index=-1, signs=signs, cone=cone,
                              witness=relative_interior_point(cone)))
            continue
        root = roots[len(signs)]
        for sign in ("-", "+"):
            child = cone_from_constraints(n, cone.ineqs + (_half_space(root, sign),), cone.eqs)
            if child.dim == n:
                stack.append((signs + sign, child))

    cells.sort(key=lambda c: c.signs)
    return [Cell(index=i, signs=c.signs, cone=c.cone, witness=c.witness)
            for i, c in enumerate(cells)]


def _glue_graph(table: WallTable, roots: Sequence[DimVector], cells: Sequence[Cell]) -> nx.Graph:
    """Cells differing in one sign are joined when their common facet is not on the root's wall."""
    n = table.quiver.n
    by_signs: Dict[str, Cell] = {c.signs: c for c in cells}
    graph = nx.Graph()
    graph.add_nodes_from(c.index for c in cells)

    for cell in cells:
        for j, sign in enumerate(cell.signs):
            if sign != "+":
                continue
            other = by_signs.get(cell.signs[:j] + "-" + cell.signs[j + 1:])
            if other is None:
                continue
            common = intersect(cell.cone, other.cone)
            if common.dim != n - 1:
                continue
            if not contains_cone(wall(table, roots[j]), common):
                graph.add_edge(cell.index, other.index)
    return graph


def _check_wall_free(table: WallTable, roots: Sequence[DimVector], cone: Cone) -> None:
    """No wall of a positive root may reach the interior of a chamber."""
    for root in roots:
        section = intersect(wall(table, root), cone)
        point = relative_interior_point(section)
        if all(dot(v, point) > 0 for v in cone.ineqs):
            detail = f"wall of {list(root)} meets the interior of chamber {cone.to_dict()}"
            engine_logger.log_consistency_violation("chamber_wall_free", detail)
            raise ConsistencyError(detail)


def enumerate_chambers(table: WallTable) -> List[Chamber]:
    """
    All chambers of a representation-finite quiver.

    Raises:
        PreconditionError: the quiver is not representation-finite
        ConsistencyError: a chamber is not simplicial or is crossed by a wall
    """
    q = table.quiver
    if not is_representation_finite(q):
        raise PreconditionError(
            "chamber enumeration needs a representation-finite quiver "
            "(infinitely many chambers otherwise)"
        )
    roots = enumerate_positive_roots(q)
    cells = _enumerate_cells(q.n, roots)
    graph = _glue_graph(table, roots, cells)

    chambers = []
    for component in nx.connected_components(graph):
        members = tuple(sorted(component))
        cone = conic_hull([cells[i].cone for i in members])
        if cone.lineality or len(cone.rays) != q.n or cone.dim != q.n:
            detail = f"chamber from cells {list(members)} is not simplicial: {cone.to_dict()}"
            engine_logger.log_consistency_violation("chamber_simplicial", detail)
            raise ConsistencyError(detail)
        _check_wall_free(table, roots, cone)
        chambers.append(Chamber(cells=members, cone=cone, g_matrix=cone.rays))

    chambers.sort(key=lambda c: c.g_matrix)
    engine_logger.log_chambers(len(roots), len(cells), len(chambers))
    return chambers


def check_unimodular(chambers: Sequence[Chamber]) -> UnimodularityReport:
    """Every g-matrix must be a Z-basis: |det| = 1."""
    violations = [
        Violation(chamber=i, rays=list(c.rays), det=c.det)
        for i, c in enumerate(chambers)
        if abs(c.det) != 1
    ]
    return UnimodularityReport(passed=not violations, checked=len(chambers), violations=violations)


def check_fan_coverage(chambers: Sequence[Chamber]) -> CoverageReport:
    """
    Check that the chamber closures tile the space.

    Interiors must be pairwise disjoint (intersections are lower-dimensional)
    and every facet of every chamber must be a facet of exactly one other
    chamber.
    """
    if not chambers:
        return CoverageReport(passed=False, chambers=0, facets_shared=0)
    n = chambers[0].cone.n

    overlapping = [
        (i, j) for (i, a), (j, b) in combinations(enumerate(chambers), 2)
        if intersect(a.cone, b.cone).dim == n
    ]

    chamber_facets = [facets(c.cone) for c in chambers]
    unmatched: List[Tuple[int, IntVector]] = []
    adjacent = set()
    shared = 0
    for i, own in enumerate(chamber_facets):
        for normal, facet in own:
            partners = [
                j for j, theirs in enumerate(chamber_facets)
                if j != i and any(cones_equal(facet, f) for _, f in theirs)
            ]
            if len(partners) != 1:
                unmatched.append((i, normal))
                continue
            j = partners[0]
            adjacent.add((min(i, j), max(i, j)))
            if i < j:
                shared += 1

    passed = not overlapping and not unmatched
    engine_logger.log_coverage(len(chambers), shared, passed)
    return CoverageReport(
        passed=passed,
        chambers=len(chambers),
        facets_shared=shared,
        overlapping_pairs=overlapping,
        unmatched_facets=unmatched,
        adjacent_pairs=sorted(adjacent),
    )


def locate_chamber(chambers: Sequence[Chamber], theta: Sequence) -> Optional[int]:
    """Index of the chamber whose interior contains theta, or None on a wall."""
    if not chambers:
        return None
    theta = as_weight(theta, chambers[0].cone.n)
    for i, c in enumerate(chambers):
        if all(dot(v, theta) > 0 for v in c.cone.ineqs):
            return i
    return None


def chamber_report(table: WallTable) -> ChamberReport:
    """JSON report of the `chambers` command."""
    chambers = enumerate_chambers(table)
    unimodular = check_unimodular(chambers)
    if not unimodular.passed:
        detail = f"non-unimodular chambers: {[v.chamber for v in unimodular.violations]}"
        engine_logger.log_consistency_violation("chamber_unimodular", detail)
        raise ConsistencyError(detail)
    coverage = check_fan_coverage(chambers)
    return ChamberReport(
        chambers=[ChamberEntry(rays=list(c.rays), det=c.det, cells=len(c.cells)) for c in chambers],
        summary=ChamberSummary(
            chambers=len(chambers),
            facets_shared=coverage.facets_shared,
            coverage="pass" if coverage.passed else "fail",
        ),
    )
