"""
Planar slices of the wall structure and their SVG rendering.

A slice is the triangle spanned by three weights p0, p1, p2. A point of the
triangle has barycentric coordinates (u, v, w) >= 0 with u + v + w = 1, and
theta = u p0 + v p1 + w p2 lies on a wall iff (u, v, w) lies in the pulled
back cone. Pieces are computed exactly; floats appear only when the
barycentric vertices are projected onto the canvas.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.models.requests import SliceSpec
from app.models.responses import fraction_to_str
from app.services.cone import Cone, cone_from_constraints, contains_point
from app.services.quiver import DimVector
from app.services.walls import WallTable, wall, wall_sweep
from app.utils.errors import InputFormatError, PreconditionError
from app.utils.linalg import dot, unit_vector
from app.utils.logging_config import get_logger
from app.utils.validators import parse_rational

logger = get_logger("slicing")

Bary = Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class SlicePiece:
    """Intersection of one or more walls with the slice triangle."""
    vertices: Tuple[Bary, ...]
    sources: Tuple[DimVector, ...]

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    def to_dict(self) -> dict:
        return {
            "d": [list(d) for d in self.sources],
            "vertices": [[fraction_to_str(x) for x in v] for v in self.vertices],
        }


def _pull_back(spec: SliceSpec, normal: Sequence[int]) -> Tuple[Fraction, ...]:
    return tuple(dot(normal, p) for p in spec.vertices)


def _diamond_angle(x: Fraction, y: Fraction) -> Fraction:
    """Exact monotone substitute for atan2 with values in [0, 4)."""
    if y >= 0:
        return y / (x + y) if x >= 0 else 1 - x / (-x + y)
    return 2 - y / (-x - y) if x < 0 else 3 + x / (x - y)


def _cyclic_order(vertices: List[Bary]) -> List[Bary]:
    """Order polygon vertices counter-clockwise around their centroid in the (v, w) chart."""
    k = len(vertices)
    cv = sum((v[1] for v in vertices), Fraction(0)) / k
    cw = sum((v[2] for v in vertices), Fraction(0)) / k
    return sorted(vertices, key=lambda v: _diamond_angle(v[1] - cv, v[2] - cw))


def slice_wall(spec: SliceSpec, cone: Cone) -> Optional[Tuple[Bary, ...]]:
    """
    Barycentric vertices of cone & triangle, or None when they do not meet.

    Rays of the pulled-back cone live in the non-negative orthant and are
    rescaled to u + v + w = 1.
    """
    if cone.n != len(spec.p0):
        raise PreconditionError(f"slice plane lives in R^{len(spec.p0)}, wall in R^{cone.n}")
    pulled = cone_from_constraints(
        3,
        [_pull_back(spec, v) for v in cone.ineqs] + [unit_vector(3, i) for i in range(3)],
        [_pull_back(spec, v) for v in cone.eqs],
    )
    if pulled.is_zero:
        return None
    vertices = [tuple(Fraction(x, sum(r)) for x in r) for r in pulled.rays]
    if len(vertices) > 2:
        vertices = _cyclic_order(vertices)
    return tuple(vertices)


def compute_slice(table: WallTable, spec: SliceSpec, degree_bound: int) -> List[SlicePiece]:
    """All distinct wall pieces on the triangle for walls of total degree <= degree_bound."""
    sources: Dict[Tuple[Bary, ...], List[DimVector]] = {}
    canonical: Dict[frozenset, Tuple[Bary, ...]] = {}
    for d, cone in wall_sweep(table, degree_bound):
        vertices = slice_wall(spec, cone)
        if vertices is None:
            continue
        key = canonical.setdefault(frozenset(vertices), vertices)
        sources.setdefault(key, []).append(d)

    pieces = [SlicePiece(vertices=v, sources=tuple(sorted(ds))) for v, ds in sources.items()]
    pieces.sort(key=lambda p: (len(p.vertices), sorted(p.vertices), p.sources))
    logger.info("slice_computed", bound=degree_bound, pieces=len(pieces))
    return pieces


def slice_document(spec: SliceSpec, degree_bound: int, pieces: Sequence[SlicePiece]) -> dict:
    """JSON sidecar written next to the SVG."""
    return {
        "bound": degree_bound,
        "plane": [[fraction_to_str(x) for x in p] for p in spec.vertices],
        "pieces": [p.to_dict() for p in pieces],
    }


def verify_slice(table: WallTable, document: dict) -> List[Tuple[int, DimVector]]:
    """
    Re-read a sidecar and map every vertex back to ambient coordinates.

    Returns:
        (piece index, d) for every vertex that is not on the wall of d
    """
    try:
        plane = [tuple(parse_rational(x) for x in p) for p in document["plane"]]
        spec = SliceSpec(p0=plane[0], p1=plane[1], p2=plane[2])
        pieces = document["pieces"]
    except (KeyError, IndexError, TypeError, ValueError) as e:
        raise InputFormatError(f"malformed slice document: {e}") from e

    failures = []
    for i, piece in enumerate(pieces):
        for d in piece["d"]:
            cone = wall(table, d)
            for vertex in piece["vertices"]:
                point = spec.to_ambient(tuple(parse_rational(x) for x in vertex))
                if not contains_point(cone, point):
                    failures.append((i, tuple(d)))
                    break
    return failures


PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(size)s" height="%(size)s" viewBox="0 0 %(size)s %(size)s" version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<title>%(title)s</title>
<rect x="0" y="0" width="%(size)s" height="%(size)s" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


class SliceCanvas:
    """Accumulates SVG elements for a triangle drawn on a square canvas."""

    def __init__(self, size: Optional[int] = None, digits: Optional[int] = None):
        self.size = size or settings.svg_size
        self.digits = digits or settings.svg_significant_digits
        margin = self.size * 0.08
        self.corners = np.array([
            [self.size / 2, margin],
            [margin, self.size - margin],
            [self.size - margin, self.size - margin],
        ])
        self.commands: List[str] = []

    def fmt(self, x: float) -> str:
        return "%.*g" % (self.digits, x)

    def project(self, vertices: Sequence[Bary]) -> np.ndarray:
        bary = np.array([[float(x) for x in v] for v in vertices])
        return bary @ self.corners

    def _points(self, vertices: Sequence[Bary]) -> str:
        return " ".join("%s,%s" % (self.fmt(x), self.fmt(y)) for x, y in self.project(vertices))

    def polygon(self, vertices: Sequence[Bary], color: str, fill: str = "none", label: str = ""):
        self.commands.append(
            '<polygon points="%s" style="fill:%s;fill-opacity:0.3;stroke:%s;stroke-width:1"><title>%s</title></polygon>'
            % (self._points(vertices), fill, color, label)
        )

    def line(self, vertices: Sequence[Bary], color: str, label: str = ""):
        (x1, y1), (x2, y2) = self.project(vertices)
        self.commands.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" style="stroke:%s;stroke-width:1.5"><title>%s</title></line>'
            % (self.fmt(x1), self.fmt(y1), self.fmt(x2), self.fmt(y2), color, label)
        )

    def circle(self, vertex: Bary, color: str, label: str = ""):
        (x, y), = self.project([vertex])
        self.commands.append(
            '<circle cx="%s" cy="%s" r="3" style="fill:%s"><title>%s</title></circle>'
            % (self.fmt(x), self.fmt(y), color, label)
        )

    def text(self, x: float, y: float, text: str, color: str = "#444444"):
        self.commands.append(
            '<text x="%s" y="%s" fill="%s" font-size="12" font-family="monospace">%s</text>'
            % (self.fmt(x), self.fmt(y), color, text)
        )

    def render(self, title: str) -> str:
        size = self.fmt(self.size)
        return PREAMBLE % {"size": size, "title": title} + "".join(c + "\n" for c in self.commands) + POSTAMBLE


def _label(sources: Sequence[DimVector]) -> str:
    return " ".join("(" + ",".join(str(x) for x in d) + ")" for d in sources)


def render_svg(spec: SliceSpec, degree_bound: int, pieces: Sequence[SlicePiece]) -> str:
    """SVG 1.1 drawing of the slice; element order follows the sorted piece list."""
    canvas = SliceCanvas()
    corners = ((Fraction(1), Fraction(0), Fraction(0)),
               (Fraction(0), Fraction(1), Fraction(0)),
               (Fraction(0), Fraction(0), Fraction(1)))
    canvas.polygon(corners, color="#999999", label="slice")

    for piece in pieces:
        color = PALETTE[(min(sum(d) for d in piece.sources) - 1) % len(PALETTE)]
        label = _label(piece.sources)
        if piece.kind == "point":
            canvas.circle(piece.vertices[0], color, label)
        elif piece.kind == "segment":
            canvas.line(piece.vertices, color, label)
        else:
            canvas.polygon(piece.vertices, color, fill=color, label=label)

    for corner, name in zip(canvas.corners, ("p0", "p1", "p2")):
        canvas.text(corner[0] + 4, corner[1] - 4, name)
    title = f"walls of total degree &lt;= {degree_bound} (truncated at this bound)"
    canvas.text(canvas.size * 0.02, canvas.size * 0.04, title)
    return canvas.render(title)


def write_slice(table: WallTable, spec: SliceSpec, degree_bound: int, out: Path) -> dict:
    """
    Compute the slice, write OUT.svg and its OUT.json sidecar, and check the round trip.

    Returns:
        Summary printed by the `slice` command
    """
    pieces = compute_slice(table, spec, degree_bound)
    document = slice_document(spec, degree_bound, pieces)
    out = Path(out)
    sidecar = out.with_suffix(".json")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(render_svg(spec, degree_bound, pieces), encoding="utf-8")
    sidecar.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    failures = verify_slice(table, json.loads(sidecar.read_text(encoding="utf-8")))
    return {
        "bound": degree_bound,
        "svg": str(out),
        "sidecar": str(sidecar),
        "pieces": len(pieces),
        "kinds": {k: sum(p.kind == k for p in pieces) for k in ("point", "segment", "polygon")},
        "round_trip": "pass" if not failures else "fail",
        "failures": [{"piece": i, "d": list(d)} for i, d in failures],
    }
