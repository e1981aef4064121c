import pytest
from hypothesis import given, strategies as st

from acirank import FieldSpec, linalg
from acirank.errors import DimensionMismatch

FIELDS = [FieldSpec.gf(2), FieldSpec.gf(3), FieldSpec.gf(7), FieldSpec.rational()]


@st.composite
def matrices(draw, field, max_m=5, max_n=5):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    hi = 3 if field.p is None else field.p - 1
    lo = -3 if field.p is None else 0
    return [[field.canon(draw(st.integers(lo, hi))) for _ in range(n)] for _ in range(m)]


@given(st.data())
def test_gf2_bitset_rank_matches_elimination(data):
    f = FieldSpec.gf(2)
    a = data.draw(matrices(f, 7, 9))
    assert linalg.rank(f, a) == len(linalg.rref(f, a)[1])


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_rank_nullity(field, data):
    a = data.draw(matrices(field))
    n = len(a[0])
    kernel = linalg.nullspace(field, a, n)
    assert linalg.rank(field, a) + len(kernel) == n
    for v in kernel:
        assert linalg.matmul(field, a, [[x] for x in v]) == [[0]] * len(a)


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_inverse_round_trip(field, data):
    n = data.draw(st.integers(1, 4))
    a = data.draw(matrices(field, n, n).filter(lambda x: len(x) == len(x[0])))
    inv = linalg.inverse(field, a)
    if inv is None:
        assert not linalg.is_nonsingular(field, a)
    else:
        assert linalg.matmul(field, a, inv) == linalg.identity(field, len(a))


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_solve_combination(field, data):
    rows = data.draw(matrices(field, 4, 4))
    coeffs = [field.canon(data.draw(st.integers(0, 2))) for _ in rows]
    target = linalg.matmul(field, [coeffs], rows)[0]
    sol = linalg.solve_combination(field, rows, target)
    assert sol is not None
    assert linalg.matmul(field, [sol], rows)[0] == target


def test_solve_combination_prefers_low_rows():
    f = FieldSpec.rational()
    assert linalg.solve_combination(f, [[1, 0], [1, 0]], [2, 0]) == [2, 0]
    assert linalg.solve_combination(f, [[1, 0]], [0, 1]) is None
    assert linalg.solve_combination(f, [], [0, 0]) == []


def test_annihilator_and_span():
    f = FieldSpec.gf(5)
    vecs = [[1, 2, 0], [0, 1, 1]]
    ann = linalg.annihilator(f, vecs, 3)
    assert len(ann) == 1
    assert all(sum(a * v for a, v in zip(ann[0], vec)) % 5 == 0 for vec in vecs)
    assert linalg.in_span(f, vecs, [1, 3, 1])
    assert not linalg.in_span(f, vecs, [0, 0, 1])
    assert linalg.annihilator(f, [], 2) == linalg.identity(f, 2)


def test_left_nullspace():
    f = FieldSpec.rational()
    a = [[1, 2], [2, 4], [0, 1]]
    for y in linalg.left_nullspace(f, a):
        assert linalg.matmul(f, [y], a) == [[0, 0]]


def test_permutation_matrices():
    f = FieldSpec.gf(3)
    a = [[1, 2, 0], [0, 1, 1]]
    q = linalg.permutation_matrix(f, [2, 0, 1])
    assert linalg.matmul(f, a, q) == [[0, 1, 2], [1, 0, 1]]
    p = linalg.row_permutation_matrix(f, [1, 0])
    assert linalg.matmul(f, p, a) == [a[1], a[0]]


def test_block_diag_and_empty_shapes():
    f = FieldSpec.gf(7)
    assert linalg.block_diag(f, [[[2]], [], [[3]]]) == [[2, 0], [0, 3]]
    assert linalg.matmul(f, [[], []], [], 3) == [[0, 0, 0], [0, 0, 0]]
    assert linalg.rank(f, []) == 0
    assert linalg.inverse(f, []) == []


def test_matmul_dimension_check():
    f = FieldSpec.gf(3)
    with pytest.raises(DimensionMismatch):
        linalg.matmul(f, [[1, 2]], [[1]])


@pytest.mark.parametrize("field", [FieldSpec.gf(3), FieldSpec.gf(7), FieldSpec.gf(11)], ids=str)
@given(data=st.data())
def test_prime_field_kernel_matches_rref(field, data):
    a = data.draw(matrices(field, 6, 6))
    assert linalg.gfp_rank(a, field.p) == len(linalg.rref(field, a)[1])
