"""
Tests for wall computation, the Schur criterion and the Kronecker closed form.
"""

from pathlib import Path

import pytest

from app.config import settings
from app.models.responses import RootKind
from app.services.cone import (
    cone_from_generators,
    cones_equal,
    contains_cone,
    intersect,
    linear_span_cone,
    zero_cone,
)
from app.services.quiver import (
    dimension_vectors,
    kronecker_quiver,
    linear_quiver,
    load_quiver,
    stability_pairing,
    support,
)
from app.services.walls import (
    WallTable,
    _splits,
    classify_schur,
    get_wall_table,
    kronecker_oracle_sweep,
    kronecker_wall_oracle,
    schur_roots,
    wall,
    wall_sweep,
)
from app.utils.errors import PreconditionError
from app.utils.linalg import unit_vector

DATA = Path(__file__).resolve().parent.parent / "data" / "quivers"


@pytest.fixture
def a2():
    return get_wall_table(linear_quiver(2))


@pytest.fixture
def a3():
    return get_wall_table(linear_quiver(3))


@pytest.fixture
def wild():
    return get_wall_table(load_quiver(DATA / "wild123.quiver"))


class TestBaseCases:
    """Walls on supports of size one and two."""

    def test_a2_walls(self, a2):
        assert wall(a2, (1, 0)) == linear_span_cone(2, [(0, 1)])
        assert wall(a2, (0, 1)) == linear_span_cone(2, [(1, 0)])
        assert wall(a2, (1, 1)).rays == ((1, -1),)
        assert wall(a2, (1, 1)).lineality == ()

    def test_a3_two_vertex_supports(self, a3):
        assert cones_equal(wall(a3, (1, 1, 0)), cone_from_generators(3, [(1, -1, 0)], [(0, 0, 1)]))
        assert cones_equal(wall(a3, (0, 1, 1)), cone_from_generators(3, [(0, 1, -1)], [(1, 0, 0)]))

    def test_no_arrows_gives_lineality_only(self):
        table = get_wall_table(kronecker_quiver(0))
        assert wall(table, (1, 1)) == zero_cone(2)
        a3 = get_wall_table(linear_quiver(3))
        assert wall(a3, (1, 0, 1)) == linear_span_cone(3, [(0, 1, 0)])

    def test_reduction_by_gcd(self, a2):
        assert wall(a2, (2, 2)) == wall(a2, (1, 1))
        assert wall(a2, (3, 0)) == wall(a2, (1, 0))

    def test_zero_vector_rejected(self, a2):
        with pytest.raises(PreconditionError):
            wall(a2, (0, 0))

    def test_length_mismatch_rejected(self, a2):
        with pytest.raises(PreconditionError):
            wall(a2, (1, 1, 1))


class TestRecursion:
    """Walls of supports with three or more vertices."""

    def test_a3_sincere_root(self, a3):
        expected = cone_from_generators(3, [(1, -1, 0), (0, 1, -1)])
        assert wall(a3, (1, 1, 1)) == expected

    def test_a3_contributing_splits(self, a3):
        assert cones_equal(intersect(wall(a3, (1, 0, 0)), wall(a3, (0, 1, 1))),
                           cone_from_generators(3, [(0, 1, -1)]))
        assert cones_equal(intersect(wall(a3, (1, 1, 0)), wall(a3, (0, 0, 1))),
                           cone_from_generators(3, [(1, -1, 0)]))
        assert intersect(wall(a3, (0, 1, 0)), wall(a3, (1, 0, 1))).is_zero

    def test_splits_are_unordered(self):
        splits = _splits((1, 1, 1))
        assert len(splits) == 3
        assert ((0, 0, 1), (1, 1, 0)) in splits
        assert all(c <= rest for c, rest in splits)

    def test_wild_sincere_wall(self, wild):
        assert wall(wild, (1, 1, 1)) == cone_from_generators(3, [(1, -1, 0), (0, 1, -1)])

    def test_monotone_containment(self, wild):
        wall_sweep(wild, 5)
        for d in dimension_vectors(3, 5):
            if len(support(d)) < 3:
                continue
            for c, rest in _splits(d):
                assert contains_cone(wall(wild, d), intersect(wall(wild, c), wall(wild, rest)))

    def test_multiples_contain_the_wall(self, wild):
        """wall(d) is one of the pieces of the hull defining wall(2d)."""
        for d in [(1, 1, 1), (1, 2, 1), (2, 1, 1)]:
            doubled = tuple(2 * x for x in d)
            assert contains_cone(wall(wild, doubled), wall(wild, d))


class TestWallInvariants:
    """Laws every wall satisfies."""

    @pytest.mark.parametrize("name,bound", [("a3", 4), ("wild123", 5), ("d4", 3)])
    def test_orthogonality(self, name, bound):
        table = get_wall_table(load_quiver(DATA / f"{name}.quiver"))
        for d, cone in wall_sweep(table, bound):
            for g in cone.generators():
                assert stability_pairing(g, d) == 0
            assert cone.dim <= table.quiver.n - 1

    @pytest.mark.parametrize("name,bound", [("a3", 4), ("wild123", 5)])
    def test_lineality_law(self, name, bound):
        table = get_wall_table(load_quiver(DATA / f"{name}.quiver"))
        n = table.quiver.n
        for d, cone in wall_sweep(table, bound):
            outside = [unit_vector(n, j) for j in range(n) if j not in support(d)]
            span = linear_span_cone(n, outside)
            lineality = linear_span_cone(n, cone.lineality)
            assert contains_cone(lineality, span)
            if len(support(d)) <= 2:
                assert cones_equal(lineality, span)

    @pytest.mark.parametrize("name,bound", [("a3", 4), ("wild123", 5)])
    def test_strongly_convex_on_support(self, name, bound):
        table = get_wall_table(load_quiver(DATA / f"{name}.quiver"))
        n = table.quiver.n
        for d, cone in wall_sweep(table, bound):
            inside = linear_span_cone(n, [unit_vector(n, i) for i in support(d)])
            assert intersect(cone, inside).lineality_dim == 0

    @pytest.mark.parametrize("k", [2, 3])
    def test_scale_stability_on_small_supports(self, wild, k):
        for d in dimension_vectors(3, 4):
            if len(support(d)) <= 2:
                assert wall(wild, tuple(k * x for x in d)) == wall(wild, d)


class TestKroneckerOracle:
    """Closed-form walls of the Kronecker quivers."""

    @pytest.mark.parametrize("m,d,expected_ray", [
        (2, (1, 2), (2, -1)),
        (2, (2, 1), (1, -2)),
        (2, (3, 4), (4, -3)),
        (2, (2, 2), (1, -1)),
        (3, (1, 3), (3, -1)),
        (3, (3, 1), (1, -3)),
        (3, (3, 8), (8, -3)),
        (3, (1, 1), (1, -1)),
        (3, (2, 3), (3, -2)),
        (1, (1, 1), (1, -1)),
    ])
    def test_rays(self, m, d, expected_ray):
        assert kronecker_wall_oracle(m, d).rays == (expected_ray,)

    @pytest.mark.parametrize("m,d", [(0, (1, 1)), (1, (1, 2)), (2, (1, 3)), (3, (1, 4))])
    def test_empty_walls(self, m, d):
        assert kronecker_wall_oracle(m, d).is_zero

    def test_coordinate_walls(self):
        assert kronecker_wall_oracle(3, (2, 0)) == linear_span_cone(2, [(0, 1)])
        assert kronecker_wall_oracle(3, (0, 5)) == linear_span_cone(2, [(1, 0)])

    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_recursion_matches_closed_form(self, m):
        table = get_wall_table(kronecker_quiver(m))
        vectors = dimension_vectors(2, 12)
        assert len(vectors) == 90
        for d in vectors:
            assert cones_equal(wall(table, d), kronecker_wall_oracle(m, d)), d

    def test_oracle_sweep_report(self):
        results = kronecker_oracle_sweep(3, 12)
        assert len(results) == 90
        assert all(r.status == "pass" for r in results)
        by_d = {r.d: r for r in results}
        assert by_d[(1, 3)].oracle_rays == [(3, -1)]

    def test_zero_vector_rejected(self):
        with pytest.raises(PreconditionError):
            kronecker_wall_oracle(2, (0, 0))


class TestSchur:
    """Schur-root classification from wall dimensions."""

    def test_a2_simple_root(self, a2):
        report = classify_schur(a2, (1, 1))
        assert report.is_schur and report.is_multiple_of_schur
        assert report.label.kind == RootKind.REAL
        assert report.wall_dim == 1

    def test_a2_multiple(self, a2):
        report = classify_schur(a2, (2, 2))
        assert not report.is_schur
        assert report.is_multiple_of_schur
        assert not report.indivisible

    def test_kronecker3_imaginary(self):
        report = classify_schur(get_wall_table(kronecker_quiver(3)), (2, 3))
        assert report.label.euler_self == -5
        assert report.label.kind == RootKind.IMAGINARY_NONISOTROPIC
        assert report.is_schur

    def test_kronecker2_isotropic(self):
        report = classify_schur(get_wall_table(kronecker_quiver(2)), (1, 1))
        assert report.label.kind == RootKind.ISOTROPIC
        assert report.is_schur

    def test_kronecker2_non_root(self):
        report = classify_schur(get_wall_table(kronecker_quiver(2)), (1, 3))
        assert not report.is_schur and not report.is_multiple_of_schur

    def test_schur_roots_of_a3_are_positive_roots(self, a3):
        found = [r.d for r in schur_roots(a3, 4)]
        assert found == [(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 1, 1)]


class TestSweep:
    """Batch driver and memo behaviour."""

    def test_a2_bound_two(self, a2):
        entries = wall_sweep(a2, 2)
        assert [d for d, _ in entries] == [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]

    def test_bound_one_gives_coordinate_walls(self, wild):
        entries = wall_sweep(wild, 1)
        assert len(entries) == 3
        for d, cone in entries:
            k = support(d)[0]
            assert cone == linear_span_cone(3, [unit_vector(3, i) for i in range(3) if i != k])

    def test_table_singleton(self):
        assert get_wall_table(linear_quiver(3)) is get_wall_table(load_quiver(DATA / "a3.quiver"))

    def test_memo_filled(self):
        table = WallTable(linear_quiver(3))
        wall_sweep(table, 3)
        assert len(table) == len(dimension_vectors(3, 3))
        assert (1, 1, 1) in table

    def test_threaded_sweep_matches_sequential(self, monkeypatch):
        q = load_quiver(DATA / "wild123.quiver")
        sequential = wall_sweep(WallTable(q), 5)
        monkeypatch.setattr(settings, "max_workers", 4)
        threaded = wall_sweep(WallTable(q), 5)
        assert threaded == sequential

    def test_invalid_bound(self, a2):
        with pytest.raises(PreconditionError):
            wall_sweep(a2, 0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
