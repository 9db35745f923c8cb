"""Tests for the exact sparse linear algebra core."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sscx.exactlinalg import (
    SparseRationalMatrix,
    SubspaceBasis,
    SubspaceEscapeError,
    compose,
    kernel,
    kernel_dim,
    rank,
    restrict,
    solve_in_basis,
    spans_equal,
    subspace_equal,
    dump,
)


def mat(rows):
    entries = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                entries[(i, j)] = Fraction(v)
    return SparseRationalMatrix(len(rows), len(rows[0]) if rows else 0, entries)


@st.composite
def sparse_matrices(draw, max_dim=6):
    nrows = draw(st.integers(1, max_dim))
    ncols = draw(st.integers(1, max_dim))
    nnz = draw(st.integers(0, nrows * ncols))
    entries = {}
    for _ in range(nnz):
        r = draw(st.integers(0, nrows - 1))
        c = draw(st.integers(0, ncols - 1))
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 9))
        entries[(r, c)] = Fraction(num, den)
    return SparseRationalMatrix(nrows, ncols, entries)


class TestBasics:
    def test_identity_rank(self):
        assert rank(SparseRationalMatrix.identity(2)) == 2

    def test_dependent_rows(self):
        assert rank(mat([[1, 2], [2, 4]])) == 1

    def test_no_stored_zeros(self):
        m = mat([[1, 0], [0, 0]])
        assert (0, 1) not in m.entries and (1, 0) not in m.entries

    def test_out_of_range_entry_rejected(self):
        with pytest.raises(ValueError):
            SparseRationalMatrix(1, 1, {(1, 0): Fraction(1)})

    def test_compose_identity(self):
        m = mat([[1, 2], [3, 4]])
        assert compose(SparseRationalMatrix.identity(2), m) == m

    def test_compose_zero(self):
        m = mat([[1, 2], [3, 4]])
        z = SparseRationalMatrix.zero(2, 2)
        assert (m @ z).is_zero()

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            mat([[1, 2]]) @ mat([[1, 2]])


class TestRankProperties:
    @given(sparse_matrices())
    @settings(max_examples=60, deadline=None)
    def test_rank_transpose(self, m):
        assert rank(m) == rank(m.transpose())

    @given(sparse_matrices(), st.integers(1, 7))
    @settings(max_examples=60, deadline=None)
    def test_rank_scaling_invariant(self, m, s):
        assert rank(m) == rank(m.scale(Fraction(s, 3)))

    @given(sparse_matrices())
    @settings(max_examples=60, deadline=None)
    def test_kernel_property(self, m):
        k = kernel(m)
        assert (m @ k).is_zero()
        assert rank(k) == k.ncols == m.ncols - rank(m)
        assert kernel_dim(m) == k.ncols

    @given(sparse_matrices(max_dim=4), sparse_matrices(max_dim=4))
    @settings(max_examples=40, deadline=None)
    def test_composition_rank_bound(self, a, b):
        if a.ncols != b.nrows:
            b = SparseRationalMatrix(
                a.ncols, b.ncols,
                {(r, c): v for (r, c), v in b.entries.items() if r < a.ncols},
            )
        assert rank(a @ b) <= min(rank(a), rank(b))


class TestSubspaces:
    def test_restrict_identity(self):
        b = SubspaceBasis(3, [{0: Fraction(1)}, {2: Fraction(1)}])
        m = restrict(SparseRationalMatrix.identity(3), b, b)
        assert m == SparseRationalMatrix.identity(2)

    def test_restrict_escape(self):
        b = SubspaceBasis(2, [{0: Fraction(1)}])
        rot = mat([[0, 1], [1, 0]])
        with pytest.raises(SubspaceEscapeError):
            restrict(rot, b, b)

    def test_solve_in_basis_roundtrip(self):
        basis = SubspaceBasis(3, [{0: Fraction(1), 1: Fraction(2)}, {2: Fraction(3)}])
        target = {0: Fraction(2), 1: Fraction(4), 2: Fraction(3)}
        coords = solve_in_basis(basis, [target])
        assert coords == [{0: Fraction(2), 1: Fraction(1)}]

    def test_subspace_equal_permuted(self):
        a = SubspaceBasis(3, [{0: Fraction(1)}, {1: Fraction(1)}])
        b = SubspaceBasis(3, [{1: Fraction(2)}, {0: Fraction(5)}])
        assert subspace_equal(a, b)

    def test_subspace_not_equal(self):
        a = SubspaceBasis(3, [{0: Fraction(1)}])
        b = SubspaceBasis(3, [{1: Fraction(1)}])
        assert not subspace_equal(a, b)

    def test_spans_equal_generating_sets(self):
        a = mat([[1, 1], [0, 0]])
        b = mat([[2], [0]])
        assert spans_equal(a, b)

    @given(sparse_matrices(max_dim=5))
    @settings(max_examples=40, deadline=None)
    def test_spans_equal_self(self, m):
        assert spans_equal(m, m)


class TestDump:
    def test_dump_format(self, tmp_path):
        m = mat([[1, 0], [0, Fraction(-2, 3)]])
        path = tmp_path / "m.txt"
        dump(m, path)
        assert path.read_text() == "0 0 1/1\n1 1 -2/3\n"
