import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2mhs.ratlinalg import Quotient, RatMatrix, Subspace, column_space, kernel_basis, rank, rat


def test_rat_parsing():
    assert rat(3) == Fraction(3)
    assert rat("2/6") == Fraction(1, 3)
    assert rat(Fraction(-1, 2)) == Fraction(-1, 2)
    with pytest.raises(TypeError):
        rat(0.5)


def test_rank_identity_and_zero():
    assert rank(RatMatrix.identity(3)) == 3
    assert rank(RatMatrix.zeros(2, 3)) == 0


def test_rank_dependent_rows():
    # hand row-reduction: second row is twice the first
    m = RatMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1


def test_kernel_examples():
    assert kernel_basis(RatMatrix.identity(4)) == []
    zero = RatMatrix.zeros(2, 2)
    assert len(kernel_basis(zero)) == 2
    m = RatMatrix.from_rows([[1, 2], [2, 4]])
    (v,) = kernel_basis(m)
    # proportional to (2, -1)
    assert v[0] * Fraction(-1) == v[1] * Fraction(2)
    assert all(x == 0 for x in m.apply(v))


def _random_matrix(rng, nrows, ncols, density=0.6):
    entries = {}
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < density:
                entries[(i, j)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return RatMatrix(nrows, ncols, entries)


def test_rank_nullity_and_transpose_on_random_matrices():
    rng = random.Random(7)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(0, 6), rng.randint(0, 6))
        r = rank(m)
        ker = kernel_basis(m)
        assert r + len(ker) == m.ncols
        assert rank(m.transpose()) == r
        for v in ker:
            assert all(x == 0 for x in m.apply(v))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=3, max_size=3),
        min_size=1,
        max_size=5,
    )
)
def test_rank_transpose_property(rows):
    m = RatMatrix.from_rows(rows)
    assert rank(m) == rank(m.transpose())
    assert rank(m) + len(kernel_basis(m)) == m.ncols


def test_matmul_and_stacks():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    b = RatMatrix.from_rows([["1/2", 0], [1, 1]])
    ab = a @ b
    assert ab == RatMatrix.from_rows([["5/2", 2], ["11/2", 4]])
    assert RatMatrix.hstack([a, b]).shape == (2, 4)
    assert RatMatrix.vstack([a, b]).shape == (4, 2)
    assert RatMatrix.block_diagonal([a, b]).shape == (4, 4)


def test_rref_is_canonical():
    m1 = RatMatrix.from_rows([[2, 4, 0], [1, 2, 1]])
    m2 = RatMatrix.from_rows([[1, 2, 1], [4, 8, 2], [3, 6, 1]])
    assert m1.rref() == m2.rref()


def test_dense_and_sparse_storage_agree():
    rng = random.Random(3)
    for density in (0.05, 0.9):
        m = _random_matrix(rng, 6, 7, density)
        d = RatMatrix.from_rows(m.rows())
        assert m == d
        assert rank(m) == rank(d)
        assert m.kernel_basis() == d.kernel_basis()


def test_subspace_sum_intersection():
    e1 = [1, 0, 0]
    e2 = [0, 1, 0]
    e3 = [0, 0, 1]
    a = Subspace.from_vectors(3, [e1, e2])
    b = Subspace.from_vectors(3, [e2, e3])
    assert a.sum_with(b) == Subspace.full(3)
    meet = a.intersect(b)
    assert meet.dim == 1 and meet.contains(e2)


def test_subspace_preimage_and_image():
    # projection (x,y,z) -> (x,y)
    m = RatMatrix.from_rows([[1, 0, 0], [0, 1, 0]])
    line = Subspace.from_vectors(2, [[1, 1]])
    pre = line.preimage_under(m)
    assert pre.dim == 2
    assert pre.contains([1, 1, 0]) and pre.contains([0, 0, 1])
    img = pre.image_under(m)
    assert img == line


def test_quotient_coordinates_roundtrip():
    v = Subspace.full(3)
    w = Subspace.from_vectors(3, [[1, 1, 0]])
    q = Quotient(v, w)
    assert q.dim == 2
    for i in range(q.dim):
        coords = q.coords(q.lift(i))
        expected = [Fraction(1) if j == i else Fraction(0) for j in range(q.dim)]
        assert coords == expected
    # adding an element of w does not change coordinates
    assert q.coords([2, 2, 5]) == q.coords([0, 0, 5])


def test_quotient_rejects_outside_vectors():
    v = Subspace.from_vectors(3, [[1, 0, 0]])
    q = Quotient(v, Subspace.zero(3))
    with pytest.raises(ValueError):
        q.coords([0, 1, 0])


def test_column_space():
    m = RatMatrix.from_rows([[1, 2], [2, 4], [0, 0]])
    assert column_space(m).dim == 1


def test_subspace_modular_law_and_preimage_fuzz():
    rng = random.Random(5150)

    def rvec(n):
        return [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]

    for _ in range(25):
        amb = rng.randint(2, 6)
        a = Subspace.from_vectors(amb, [rvec(amb) for _ in range(rng.randint(0, 3))])
        b = Subspace.from_vectors(amb, [rvec(amb) for _ in range(rng.randint(0, 3))])
        meet = a.intersect(b)
        total = a.sum_with(b)
        assert a.dim + b.dim == meet.dim + total.dim
        for r in meet.rows:
            assert a.contains(r) and b.contains(r)
        m = rng.randint(1, 5)
        f = _random_matrix(rng, m, amb)
        s = Subspace.from_vectors(m, [rvec(m) for _ in range(rng.randint(0, 2))])
        pre = s.preimage_under(f)
        assert pre.image_under(f).is_subspace_of(s)
        for v in f.kernel_basis():
            assert pre.contains(v)


def test_matrix_inverse():
    m = RatMatrix.from_rows([[2, 1], [1, 1]])
    assert m @ m.inverse() == RatMatrix.identity(2)
    with pytest.raises(ValueError, match="singular"):
        RatMatrix.from_rows([[1, 2], [2, 4]]).inverse()
