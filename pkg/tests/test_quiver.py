"""
Tests for the quiver model, forms on dimension vectors and root enumeration.
"""

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from app.models.responses import RootKind
from app.services.quiver import (
    Quiver,
    dimension_vectors,
    dynkin_type,
    enumerate_positive_roots,
    euler_pairing,
    highest_root_degree,
    is_indivisible,
    is_representation_finite,
    kronecker_quiver,
    kronecker_sequence,
    linear_quiver,
    load_quiver,
    parse_quiver,
    projective_dimension_vector,
    root_label,
    stability_pairing,
    support,
)
from app.utils.errors import InputFormatError, PreconditionError

DATA = Path(__file__).resolve().parent.parent / "data" / "quivers"


class TestParsing:
    """Tests for the line-oriented quiver format."""

    def test_parse_linear_a3(self):
        q = parse_quiver("vertices 3\narrow 1 2\narrow 2 3\n")
        assert q.n == 3
        assert q.arrows == ((1, 2), (2, 3))

    def test_comments_and_blank_lines(self):
        text = "# Kronecker\n\nvertices 2   # two vertices\narrow 1 2\n\narrow 1 2\n"
        q = parse_quiver(text)
        assert q == kronecker_quiver(2)
        assert q.arrow_count(1, 2) == 2

    def test_round_trip_through_text(self):
        q = Quiver(3, ((2, 3), (1, 2), (1, 2)))
        assert parse_quiver(q.to_text()) == q

    @pytest.mark.parametrize("text", [
        "",
        "arrow 1 2\n",
        "vertices two\n",
        "vertices 2\narrow 1\n",
        "vertices 2\nedge 1 2\n",
        "vertices 2\narrow 1 -2\n",
    ])
    def test_syntax_errors(self, text):
        with pytest.raises(InputFormatError):
            parse_quiver(text)

    def test_error_mentions_line_number(self):
        with pytest.raises(InputFormatError, match="line 3"):
            parse_quiver("vertices 2\narrow 1 2\nbogus\n")

    def test_loop_rejected(self):
        with pytest.raises(InputFormatError, match="loop"):
            parse_quiver("vertices 2\narrow 1 1\n")

    def test_cycle_rejected(self):
        with pytest.raises(InputFormatError, match="cycle"):
            parse_quiver("vertices 3\narrow 1 2\narrow 2 3\narrow 3 1\n")

    def test_vertex_out_of_range(self):
        with pytest.raises(InputFormatError):
            parse_quiver("vertices 2\narrow 1 3\n")

    def test_load_sample_files(self):
        assert load_quiver(DATA / "a2.quiver") == linear_quiver(2)
        assert load_quiver(DATA / "a3.quiver") == linear_quiver(3)
        assert load_quiver(DATA / "kronecker3.quiver") == kronecker_quiver(3)
        wild = load_quiver(DATA / "wild123.quiver")
        assert wild.arrows == ((1, 2), (1, 2), (2, 3))

    def test_missing_file_is_input_error(self, tmp_path):
        with pytest.raises(InputFormatError):
            load_quiver(tmp_path / "missing.quiver")

    def test_invalid_utf8_is_input_error(self, tmp_path):
        path = tmp_path / "binary.quiver"
        path.write_bytes(b"vertices 2\narrow 1 2 # \xff\xfe\n")
        with pytest.raises(InputFormatError, match="cannot read"):
            load_quiver(path)


class TestForms:
    """Tests for the stability pairing and the Euler form."""

    def test_euler_matrix(self):
        assert linear_quiver(2).euler_matrix() == ((1, -1), (0, 1))

    @pytest.mark.parametrize("q,d,e,expected", [
        (linear_quiver(2), (1, 1), (1, 1), 1),
        (linear_quiver(2), (1, 0), (0, 1), -1),
        (linear_quiver(2), (0, 1), (1, 0), 0),
        (kronecker_quiver(2), (1, 1), (1, 1), 0),
        (kronecker_quiver(3), (2, 3), (2, 3), -5),
        (linear_quiver(3), (1, 1, 1), (1, 1, 1), 1),
    ])
    def test_euler_pairing(self, q, d, e, expected):
        assert euler_pairing(q, d, e) == expected

    def test_euler_pairing_length_mismatch(self):
        with pytest.raises(PreconditionError):
            euler_pairing(linear_quiver(2), (1, 1, 1), (1, 1))

    def test_stability_pairing_is_exact(self):
        value = stability_pairing((Fraction(1, 2), -1), (3, 1))
        assert value == Fraction(1, 2)
        assert isinstance(value, Fraction)

    def test_stability_pairing_vanishes_on_wall_ray(self):
        assert stability_pairing((1, -1), (1, 1)) == 0

    @pytest.mark.parametrize("q,d,kind", [
        (linear_quiver(2), (1, 1), RootKind.REAL),
        (linear_quiver(2), (2, 2), RootKind.NONE),
        (kronecker_quiver(2), (1, 1), RootKind.ISOTROPIC),
        (kronecker_quiver(3), (2, 3), RootKind.IMAGINARY_NONISOTROPIC),
    ])
    def test_root_label(self, q, d, kind):
        assert root_label(q, d).kind == kind

    def test_root_label_rejects_zero(self):
        with pytest.raises(PreconditionError):
            root_label(linear_quiver(2), (0, 0))

    def test_projective_dimension_vectors(self):
        a3 = linear_quiver(3)
        assert projective_dimension_vector(a3, 1) == (1, 1, 1)
        assert projective_dimension_vector(a3, 2) == (0, 1, 1)
        assert projective_dimension_vector(a3, 3) == (0, 0, 1)
        assert projective_dimension_vector(kronecker_quiver(2), 1) == (1, 2)

    @pytest.mark.parametrize("name", [
        "a1", "a2", "a3", "d4", "kronecker0", "kronecker1", "kronecker2", "kronecker3", "wild123",
    ])
    def test_projectives_pair_dually_with_simples(self, name):
        """<[P_i], [S_j]> in the Euler form is delta_ij."""
        q = load_quiver(DATA / f"{name}.quiver")
        for i in range(1, q.n + 1):
            p = projective_dimension_vector(q, i)
            for j in range(q.n):
                simple = tuple(1 if k == j else 0 for k in range(q.n))
                assert euler_pairing(q, p, simple) == (1 if j == i - 1 else 0)

    @pytest.mark.parametrize("name", ["a3", "d4", "kronecker3", "wild123"])
    def test_euler_pairing_is_bilinear(self, name):
        q = load_quiver(DATA / f"{name}.quiver")
        rng = np.random.default_rng(5)
        for _ in range(25):
            d, d2, e = (tuple(int(x) for x in rng.integers(0, 5, size=q.n)) for _ in range(3))
            a, b = (int(x) for x in rng.integers(-3, 4, size=2))
            combo = tuple(a * x + b * y for x, y in zip(d, d2))
            assert euler_pairing(q, combo, e) == a * euler_pairing(q, d, e) + b * euler_pairing(q, d2, e)
            assert euler_pairing(q, e, combo) == a * euler_pairing(q, e, d) + b * euler_pairing(q, e, d2)


class TestRoots:
    """Tests for Dynkin detection and positive root enumeration."""

    def test_a2_roots(self):
        assert enumerate_positive_roots(linear_quiver(2)) == [(0, 1), (1, 0), (1, 1)]

    def test_a3_roots(self):
        assert enumerate_positive_roots(linear_quiver(3)) == [
            (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 1, 0), (1, 1, 1),
        ]

    def test_d4_roots(self):
        q = load_quiver(DATA / "d4.quiver")
        roots = enumerate_positive_roots(q)
        assert len(roots) == 12
        assert (1, 2, 1, 1) in roots
        assert highest_root_degree(q) == 5

    def test_roots_have_tits_form_one(self):
        q = load_quiver(DATA / "d4.quiver")
        assert all(euler_pairing(q, r, r) == 1 for r in enumerate_positive_roots(q))

    def test_disconnected_roots(self):
        assert enumerate_positive_roots(kronecker_quiver(0)) == [(0, 1), (1, 0)]

    @pytest.mark.parametrize("q,expected", [
        (Quiver(1), ("A1",)),
        (linear_quiver(3), ("A3",)),
        (kronecker_quiver(0), ("A1", "A1")),
        (kronecker_quiver(1), ("A2",)),
        (kronecker_quiver(2), None),
        (Quiver(4, ((1, 2), (3, 2), (4, 2))), ("D4",)),
        (Quiver(6, ((1, 2), (2, 3), (3, 4), (4, 5), (6, 3))), ("E6",)),
        (Quiver(3, ((1, 2), (2, 3), (1, 3))), None),
    ])
    def test_dynkin_type(self, q, expected):
        assert dynkin_type(q) == expected
        assert is_representation_finite(q) == (expected is not None)

    def test_e6_highest_root(self):
        q = Quiver(6, ((1, 2), (2, 3), (3, 4), (4, 5), (6, 3)))
        roots = enumerate_positive_roots(q)
        assert len(roots) == 36
        assert highest_root_degree(q) == 11

    def test_non_dynkin_rejected(self):
        with pytest.raises(PreconditionError):
            enumerate_positive_roots(kronecker_quiver(2))

    def test_highest_root_degree(self):
        assert highest_root_degree(linear_quiver(2)) == 2
        assert highest_root_degree(linear_quiver(3)) == 3


class TestHelpers:
    """Tests for the small combinatorial helpers."""

    def test_kronecker_sequence(self):
        assert kronecker_sequence(3, 5) == [0, 1, 3, 8, 21]
        assert kronecker_sequence(2, 5) == [0, 1, 2, 3, 4]
        assert kronecker_sequence(1, 6) == [0, 1, 1, 0, -1, -1]

    @pytest.mark.parametrize("m", [2, 3, 4, 7])
    def test_kronecker_sequence_increases(self, m):
        seq = kronecker_sequence(m, 15)
        assert all(a < b for a, b in zip(seq[1:], seq[2:]))

    def test_dimension_vectors_order(self):
        assert dimension_vectors(2, 2) == [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]

    def test_dimension_vectors_count(self):
        assert len(dimension_vectors(2, 12)) == 90

    def test_support_and_divisibility(self):
        assert support((0, 2, 1)) == (1, 2)
        assert is_indivisible((2, 3))
        assert not is_indivisible((2, 2))

    def test_negative_kronecker_rejected(self):
        with pytest.raises(PreconditionError):
            kronecker_quiver(-1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
