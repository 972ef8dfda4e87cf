"""
Exact linear algebra over the rationals.

Vectors are plain tuples of ints or Fractions; matrices are sequences of rows.
Every routine is exact: no floating point is involved anywhere.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Sequence, Tuple, Union

Number = Union[int, Fraction]
IntVector = Tuple[int, ...]
RatVector = Tuple[Fraction, ...]


def dot(u: Sequence[Number], v: Sequence[Number]) -> Number:
    assert len(u) == len(v), "Cannot dot vectors of different dimensions!"
    return sum((a * b for a, b in zip(u, v)), 0)


def add(u: Sequence[Number], v: Sequence[Number]) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Number], v: Sequence[Number]) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(v: Sequence[Number], s: Number) -> tuple:
    return tuple(a * s for a in v)


def neg(v: Sequence[Number]) -> tuple:
    return tuple(-a for a in v)


def is_zero(v: Sequence[Number]) -> bool:
    return all(a == 0 for a in v)


def unit_vector(n: int, i: int) -> IntVector:
    """The i-th standard basis vector of Z^n (0-based i)."""
    return tuple(1 if j == i else 0 for j in range(n))


def primitive(v: Sequence[Number]) -> IntVector:
    """
    Scale a rational vector to the primitive integer vector with the same direction.

    Denominators are cleared and the content is divided out; the zero vector is
    returned unchanged (as integers).
    """
    fracs = [Fraction(a) for a in v]
    den = reduce(lcm, (f.denominator for f in fracs), 1)
    ints = [int(f * den) for f in fracs]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(a // g for a in ints)


def rref(rows: Iterable[Sequence[Number]], n: int) -> Tuple[List[List[Fraction]], List[int]]:
    """
    Reduced row echelon form.

    Returns:
        (nonzero rows of the RREF, pivot columns)
    """
    m = [[Fraction(a) for a in row] for row in rows]
    for row in m:
        if len(row) != n:
            raise ValueError(f"row of length {len(row)} in a system with {n} columns")
    pivots: List[int] = []
    piv_r = 0
    for piv_c in range(n):
        for i_row in range(piv_r, len(m)):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        m[piv_r] = [a / fp for a in m[piv_r]]
        for r in range(len(m)):
            if r == piv_r:
                continue
            fr = m[r][piv_c]
            if fr == 0:
                continue
            m[r] = [a - fr * b for a, b in zip(m[r], m[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return m[:piv_r], pivots


def rank(rows: Iterable[Sequence[Number]], n: int) -> int:
    return len(rref(rows, n)[1])


def nullspace(rows: Iterable[Sequence[Number]], n: int) -> List[IntVector]:
    """Primitive integer basis of {x : row . x = 0 for every row}."""
    reduced, pivots = rref(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def row_space_basis(rows: Iterable[Sequence[Number]], n: int) -> List[IntVector]:
    """
    Canonical primitive basis of the span of rows.

    The basis consists of the RREF rows scaled to primitive integers, so two
    spanning sets of the same subspace give the same basis.
    """
    reduced, _ = rref(rows, n)
    return [primitive(row) for row in reduced]


def solve(a: Sequence[Sequence[Number]], b: Sequence[Number]) -> RatVector:
    """Solve the square nonsingular system a x = b exactly."""
    n = len(a)
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    reduced, pivots = rref(augmented, n + 1)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return tuple(row[n] for row in reduced)


def project_to_complement(v: Sequence[Number], basis: Sequence[Sequence[Number]]) -> RatVector:
    """Orthogonal projection of v onto the orthogonal complement of span(basis)."""
    v = tuple(Fraction(a) for a in v)
    if not basis:
        return v
    gram = [[dot(b1, b2) for b2 in basis] for b1 in basis]
    y = solve(gram, [dot(b, v) for b in basis])
    correction = [Fraction(0)] * len(v)
    for coeff, b in zip(y, basis):
        correction = [c + coeff * x for c, x in zip(correction, b)]
    return tuple(a - c for a, c in zip(v, correction))


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def lex_unique(vectors: Iterable[Sequence[int]]) -> Tuple[IntVector, ...]:
    """Deduplicate and sort vectors lexicographically."""
    return tuple(sorted({tuple(v) for v in vectors}))
