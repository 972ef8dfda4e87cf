"""
Quiver data model and the forms living on dimension vectors.

Vertices are labelled 1..n in files and arrows; vectors are 0-indexed tuples,
coordinate i standing for vertex i + 1.
"""

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import product
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.config import settings
from app.models.responses import RootLabel, kind_for_euler_self
from app.utils.errors import ConsistencyError, InputFormatError, PreconditionError
from app.utils.linalg import add, unit_vector
from app.utils.logging_config import get_logger
from app.utils.validators import require_dim_vector, require_length, require_positive

logger = get_logger("quiver")

DimVector = Tuple[int, ...]
Weight = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver on vertices 1..n; arrows may repeat."""
    n: int
    arrows: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InputFormatError(f"a quiver needs at least one vertex, got {self.n}")
        arrows = tuple(sorted((int(s), int(t)) for s, t in self.arrows))
        for s, t in arrows:
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise InputFormatError(f"arrow {s} -> {t}: vertex index out of range 1..{self.n}")
            if s == t:
                raise InputFormatError(f"loop detected at vertex {s}")
        object.__setattr__(self, "arrows", arrows)
        if not nx.is_directed_acyclic_graph(self.graph()):
            cycle = nx.find_cycle(self.graph())
            raise InputFormatError(f"cycle detected: {[edge[:2] for edge in cycle]}")

    def graph(self) -> nx.MultiDiGraph:
        """The quiver as a networkx multigraph on nodes 1..n."""
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.arrows)
        return g

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """adjacency[i][j] = number of arrows (i+1) -> (j+1)."""
        counts = [[0] * self.n for _ in range(self.n)]
        for s, t in self.arrows:
            counts[s - 1][t - 1] += 1
        return tuple(tuple(row) for row in counts)

    def arrow_count(self, source: int, target: int) -> int:
        """Number of arrows source -> target (1-based labels)."""
        return self.adjacency[source - 1][target - 1]

    def euler_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """E with E_ii = 1 and E_ij = -(number of arrows i -> j)."""
        return tuple(
            tuple((1 if i == j else 0) - self.adjacency[i][j] for j in range(self.n))
            for i in range(self.n)
        )

    def to_text(self) -> str:
        lines = [f"vertices {self.n}"]
        lines.extend(f"arrow {s} {t}" for s, t in self.arrows)
        return "\n".join(lines) + "\n"


def kronecker_quiver(m: int) -> Quiver:
    """Two vertices joined by m parallel arrows 1 -> 2."""
    if m < 0:
        raise PreconditionError(f"arrow multiplicity must be non-negative, got {m}")
    return Quiver(2, tuple((1, 2) for _ in range(m)))


def linear_quiver(n: int) -> Quiver:
    """The equioriented type A quiver 1 -> 2 -> ... -> n."""
    return Quiver(n, tuple((i, i + 1) for i in range(1, n)))


_INT_PATTERN = re.compile(r'^\d+$')


def parse_quiver(text: str) -> Quiver:
    """
    Parse the line-oriented quiver format.

    The first non-comment line is `vertices <n>`; each further line is
    `arrow <i> <j>`. `#` starts a comment.
    """
    n: Optional[int] = None
    arrows: List[Tuple[int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "vertices" or not _INT_PATTERN.match(tokens[1]):
                raise InputFormatError(f"line {lineno}: expected 'vertices <n>', got {line!r}")
            n = int(tokens[1])
            continue
        if len(tokens) != 3 or tokens[0] != "arrow" or not all(_INT_PATTERN.match(t) for t in tokens[1:]):
            raise InputFormatError(f"line {lineno}: expected 'arrow <i> <j>', got {line!r}")
        arrows.append((int(tokens[1]), int(tokens[2])))

    if n is None:
        raise InputFormatError("missing 'vertices <n>' line")

    quiver = Quiver(n, tuple(arrows))
    logger.debug("quiver_parsed", n=quiver.n, arrows=len(quiver.arrows))
    return quiver


def load_quiver(path: Path) -> Quiver:
    """Read and parse a quiver file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputFormatError(f"cannot read quiver file {path}: {e}") from e
    return parse_quiver(text)


def stability_pairing(theta: Sequence, d: Sequence[int]) -> Fraction:
    """<theta, d> = sum of theta_i d_i in the dual bases [P_i], [S_i]."""
    require_length(d, len(theta), "dimension vector")
    return sum((Fraction(t) * x for t, x in zip(theta, d)), Fraction(0))


def euler_pairing(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """Euler form sum_i d_i e_i - sum_{arrows i->j} d_i e_j."""
    require_length(d, q.n, "first vector")
    require_length(e, q.n, "second vector")
    value = sum(x * y for x, y in zip(d, e))
    for s, t in q.arrows:
        value -= d[s - 1] * e[t - 1]
    return value


def root_label(q: Quiver, d: Sequence[int]) -> RootLabel:
    d = require_dim_vector(d, q.n)
    euler_self = euler_pairing(q, d, d)
    return RootLabel(euler_self=euler_self, kind=kind_for_euler_self(euler_self))


def support(d: Sequence[int]) -> Tuple[int, ...]:
    """0-based indices of the nonzero coordinates."""
    return tuple(i for i, x in enumerate(d) if x > 0)


def is_indivisible(d: Sequence[int]) -> bool:
    return reduce(gcd, d, 0) == 1


def dimension_vectors(n: int, degree_bound: int) -> List[DimVector]:
    """All nonzero d with total degree <= degree_bound, by (degree, lex)."""
    vectors = [
        d for d in product(range(degree_bound + 1), repeat=n)
        if 0 < sum(d) <= degree_bound
    ]
    vectors.sort(key=lambda d: (sum(d), d))
    return vectors


def projective_dimension_vector(q: Quiver, vertex: int) -> DimVector:
    """
    Dimension vector of the indecomposable projective at vertex (1-based).

    Coordinate j counts the paths from vertex to j + 1, multi-arrows counted
    with multiplicity.
    """
    g = q.graph()
    paths: Dict[int, int] = {v: 0 for v in g.nodes}
    paths[vertex] = 1
    for v in nx.topological_sort(g):
        if paths[v] == 0:
            continue
        for _, w in g.out_edges(v):
            paths[w] += paths[v]
    return tuple(paths[v] for v in range(1, q.n + 1))


def _component_type(g: nx.Graph) -> Optional[str]:
    """ADE type of a connected simple graph, or None."""
    size = g.number_of_nodes()
    if not nx.is_tree(g):
        return None
    branch = [v for v, deg in g.degree() if deg >= 3]
    if not branch:
        return f"A{size}"
    if len(branch) > 1 or g.degree(branch[0]) > 3:
        return None
    center = branch[0]
    rest = g.subgraph(v for v in g.nodes if v != center)
    arms = sorted(len(c) for c in nx.connected_components(rest))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{size}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] <= 4:
        return f"E{size}"
    return None


def dynkin_type(q: Quiver) -> Optional[Tuple[str, ...]]:
    """
    Dynkin types of the connected components of the underlying graph.

    Returns:
        Tuple of types such as ("A2", "D4"), or None if some component is not ADE
    """
    if any(q.adjacency[i][j] + q.adjacency[j][i] > 1
           for i in range(q.n) for j in range(i + 1, q.n)):
        return None
    g = nx.Graph(q.graph())
    types = []
    for component in sorted(nx.connected_components(g), key=min):
        kind = _component_type(g.subgraph(component))
        if kind is None:
            return None
        types.append(kind)
    return tuple(types)


def is_representation_finite(q: Quiver) -> bool:
    return dynkin_type(q) is not None


def enumerate_positive_roots(q: Quiver) -> List[DimVector]:
    """
    All positive roots of a Dynkin quiver, sorted lexicographically.

    Roots are grown from the simple roots: every non-simple positive root is a
    positive root plus a simple root, and the Tits form of a root is 1.
    """
    types = dynkin_type(q)
    if types is None:
        raise PreconditionError(
            "quiver is not representation-finite (underlying graph not Dynkin); "
            "use the degree-bounded tools instead"
        )

    simple = [unit_vector(q.n, i) for i in range(q.n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for e in simple:
            gamma = add(beta, e)
            if gamma not in seen and euler_pairing(q, gamma, gamma) == 1:
                seen.add(gamma)
                queue.append(gamma)

    roots = sorted(seen)
    if max(max(r) for r in roots) > settings.root_search_box:
        raise ConsistencyError(f"root coordinate exceeds {settings.root_search_box} for types {types}")
    logger.debug("positive_roots_enumerated", types=list(types), count=len(roots))
    return roots


def highest_root_degree(q: Quiver) -> int:
    """Largest total degree of a positive root of a Dynkin quiver."""
    return max(sum(r) for r in enumerate_positive_roots(q))


def kronecker_sequence(m: int, length: int) -> List[int]:
    """s_0 = 0, s_1 = 1, s_{i+2} = m s_{i+1} - s_i."""
    require_positive(length, "length")
    if m < 0:
        raise PreconditionError(f"m must be non-negative, got {m}")
    seq = [0, 1]
    while len(seq) < length:
        seq.append(m * seq[-1] - seq[-2])
    return seq[:length]
