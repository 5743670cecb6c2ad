"""Exact rational linear algebra: frozen values and random laws."""

import random
from fractions import Fraction

import pytest

from trilie.exactq import (
    MatrixQ,
    SubspaceQ,
    char_poly,
    eigenspace,
    kernel_basis,
    mat_apply_sv,
    mat_columns_sv,
    qnorm,
    qparse,
    qstr,
    rational_spectrum,
    rref,
    sv_axpy,
    sv_from_seq,
    sv_to_tuple,
)


def test_qnorm_collapses_integral_fractions():
    assert qnorm(Fraction(4, 2)) == 2
    assert isinstance(qnorm(Fraction(4, 2)), int)
    assert qnorm(Fraction(1, 3)) == Fraction(1, 3)
    assert isinstance(qnorm(Fraction(1, 3)), Fraction)


def test_qparse_qstr_roundtrip():
    for text in ("0", "7", "-12", "5/3", "-5/7"):
        assert qstr(qparse(text)) == text
    assert qparse(4) == 4
    assert qparse(Fraction(6, 4)) == Fraction(3, 2)


def test_rref_frozen():
    rows, pivots = rref([[1, 2], [2, 4]])
    assert rows == [(1, 2)]
    assert pivots == [0]


def test_kernel_basis_frozen():
    assert kernel_basis([[1, 2], [2, 4]], 2) == [(-2, 1)]


def test_kernel_orthogonal_to_rows():
    rng = random.Random(11)
    for _ in range(20):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)]
        ker = kernel_basis(rows, m)
        r, pivots = rref(rows)
        assert len(ker) == m - len(pivots)
        for v in ker:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_matrix_inverse_frozen():
    inv = MatrixQ([[1, 2], [3, 4]]).inverse()
    assert inv.rows == ((-2, 1), (Fraction(3, 2), Fraction(-1, 2)))


def test_matrix_inverse_random():
    rng = random.Random(23)
    found = 0
    while found < 15:
        n = rng.randint(1, 4)
        mat = MatrixQ([[rng.randint(-3, 3) for _ in range(n)]
                       for _ in range(n)])
        if not mat.is_invertible():
            continue
        found += 1
        assert mat @ mat.inverse() == MatrixQ.identity(n)
        assert mat.inverse() @ mat == MatrixQ.identity(n)


def test_singular_matrix_refuses_inverse():
    mat = MatrixQ([[1, 2], [2, 4]])
    assert not mat.is_invertible()
    assert mat.rank() == 1
    with pytest.raises(ValueError):
        mat.inverse()


def test_char_poly_frozen():
    assert char_poly(MatrixQ([[2, 0], [0, 3]])) == (1, -5, 6)


def test_char_poly_matches_trace_and_det():
    rng = random.Random(5)
    for _ in range(12):
        n = rng.randint(1, 4)
        mat = MatrixQ([[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                        for _ in range(n)] for _ in range(n)])
        coeffs = char_poly(mat)
        assert coeffs[0] == 1
        assert coeffs[1] == -mat.trace()


def test_rational_spectrum_frozen():
    assert rational_spectrum(MatrixQ.diagonal([2, 2, 3])) == {2: 2, 3: 1}
    # rotation has no rational eigenvalues
    assert rational_spectrum(MatrixQ([[0, -1], [1, 0]])) == {}
    half = MatrixQ.diagonal([Fraction(1, 2), 3])
    assert rational_spectrum(half) == {Fraction(1, 2): 1, 3: 1}


def test_eigenspace_dimensions():
    mat = MatrixQ([[0, 1], [1, 0]])
    assert rational_spectrum(mat) == {1: 1, -1: 1}
    plus = eigenspace(mat, 1)
    minus = eigenspace(mat, -1)
    assert plus.dim == minus.dim == 1
    assert plus.contains((1, 1))
    assert minus.contains((1, -1))


def test_subspace_canonical_equality():
    s = SubspaceQ(3, [(1, 1, 0), (0, 0, 2)])
    t = SubspaceQ(3, [(2, 2, 2), (0, 0, 1)])
    assert s == t
    assert hash(s) == hash(t)
    assert s.basis == ((1, 1, 0), (0, 0, 1))


def test_subspace_coordinates_roundtrip():
    s = SubspaceQ(3, [(1, 2, 0), (0, 1, 1)])
    v = (2, 5, 1)
    coord = s.coordinates(v)
    assert coord is not None
    rebuilt = [sum(c * b[i] for c, b in zip(coord, s.basis))
               for i in range(3)]
    assert tuple(rebuilt) == v
    assert s.coordinates((0, 0, 1)) is None


def test_subspace_dimension_formula():
    rng = random.Random(37)
    for _ in range(20):
        n = rng.randint(2, 5)
        u = SubspaceQ(n, [tuple(rng.randint(-2, 2) for _ in range(n))
                          for _ in range(rng.randint(1, 3))])
        v = SubspaceQ(n, [tuple(rng.randint(-2, 2) for _ in range(n))
                          for _ in range(rng.randint(1, 3))])
        s = u.sum_with(v)
        i = u.intersect(v)
        assert s.dim + i.dim == u.dim + v.dim
        assert s.contains_space(u) and s.contains_space(v)
        assert u.contains_space(i) and v.contains_space(i)


def test_subspace_is_direct():
    a = SubspaceQ(3, [(1, 0, 0)])
    b = SubspaceQ(3, [(0, 1, 0)])
    c = SubspaceQ(3, [(1, 1, 0)])
    assert SubspaceQ.is_direct([a, b], 3)
    assert not SubspaceQ.is_direct([a, b, c], 3)
    full = SubspaceQ.full(3)
    assert SubspaceQ.is_direct([a, b, SubspaceQ(3, [(0, 0, 1)])], 3,
                               equals=full)


def test_sparse_vector_helpers():
    acc = {0: 1, 2: 3}
    sv_axpy(acc, -1, {0: 1, 1: 2})
    assert acc == {1: -2, 2: 3}
    assert sv_to_tuple({1: 5}, 3) == (0, 5, 0)
    assert sv_from_seq((0, 5, 0)) == {1: 5}


def test_sparse_matrix_apply_agrees_with_dense():
    rng = random.Random(97)
    for _ in range(15):
        n = rng.randint(1, 5)
        mat = MatrixQ([[rng.randint(-3, 3) for _ in range(n)]
                       for _ in range(n)])
        cols = mat_columns_sv(mat)
        vec = tuple(rng.randint(-2, 2) for _ in range(n))
        sparse = mat_apply_sv(cols, sv_from_seq(vec))
        assert sv_to_tuple(sparse, n) == mat.apply(vec)
