import pytest
from hypothesis import given, settings, strategies as st

from acirank import canonical_form, is_constant_rank, matrix, verify_canonical_form
from acirank.aci import AciMatrix, AffineForm
from acirank.constant_rank import (
    DEFICIENT_IV,
    REFINED_WST,
    SQUARE_II,
    TALL_III,
    WIDE_I,
    CanonicalForm,
    cols_dependent_completion,
    rows_dependent_completion,
    structural_rank_drop,
)
from acirank.errors import FieldTooSmall, NotConstantRank
from acirank.generators import (
    iv_parameters,
    random_aci,
    random_equivalent,
    refined_parameters,
    template_full,
    template_iv,
    template_refined,
)
from acirank.rank import rank_of_completion

from conftest import GF2, GF3, GF5, GF7, Q, ONES_ROWS, aci_matrices, exhaustive_ranks, rng_for

GF11 = type(GF7).gf(11)
UNIT = [["1", "x"], ["0", "1"]]


@pytest.mark.parametrize("field", [GF5, Q], ids=str)
def test_unit_upper_is_constant(field):
    res = is_constant_rank(matrix(UNIT, field))
    assert res.constant and res.rho == 2


def test_xy_over_gf2_is_not_constant():
    M = matrix([["x", "1"], ["1", "y"]], GF2)
    res = is_constant_rank(M)
    assert not res and {res.low_rank, res.high_rank} == {1, 2}
    assert rank_of_completion(M, res.low) == 1 and rank_of_completion(M, res.high) == 2


@pytest.mark.parametrize("method", ["exhaustive", "structural"])
def test_ones_matrix_is_not_constant(method):
    M = matrix(ONES_ROWS, GF5)
    res = is_constant_rank(M, method=method)
    assert not res.constant
    assert (res.low_rank, res.high_rank) == (1, 2)
    assert rank_of_completion(M, res.low) == 1 and rank_of_completion(M, res.high) == 2


def test_rational_path_uses_structure():
    res = is_constant_rank(matrix(ONES_ROWS))
    assert res.method == "structural" and not res.constant
    with pytest.raises(ValueError):
        is_constant_rank(matrix(UNIT), method="guess")


def test_canonical_examples():
    M = matrix(UNIT, GF5)
    c = canonical_form(M)
    assert c.form_tag == SQUARE_II and c.arranged == M and verify_canonical_form(M, c)
    W = matrix([["1", "x", "y"]], GF5)
    c = canonical_form(W)
    assert c.form_tag == WIDE_I and c.arranged.entries[0][0] == AffineForm.const(GF5, 1)
    assert verify_canonical_form(W, c)


def test_deficient_round_trip_fixture():
    M = template_iv(rng_for(5), GF7, 4, 4, 3, 3)
    c = canonical_form(M)
    assert c.form_tag == DEFICIENT_IV and c.block_dims == {"r": 3, "s": 3} and c.rho == 2
    assert verify_canonical_form(M, c)


def test_tampered_form_fails():
    M = template_iv(rng_for(5), GF7, 4, 4, 3, 3)
    c = canonical_form(M)
    i, j = M.m - 1, 0
    grid = [list(r) for r in c.arranged.entries]
    grid[i][j] = AffineForm.const(GF7, 1)
    bad = CanonicalForm(c.R, c.order, c.form_tag, c.block_dims, c.arranged.with_entries(grid), c.rho)
    assert not verify_canonical_form(M, bad)
    worse = CanonicalForm(c.R, c.order, SQUARE_II, c.block_dims, c.arranged, c.rho)
    assert not verify_canonical_form(M, worse)


def test_field_too_small_and_not_constant():
    with pytest.raises(FieldTooSmall):
        canonical_form(matrix(UNIT, GF2))
    with pytest.raises(NotConstantRank) as info:
        canonical_form(matrix(ONES_ROWS, GF5))
    low, high = info.value.witnesses
    M = matrix(ONES_ROWS, GF5)
    assert rank_of_completion(M, low) < rank_of_completion(M, high)


def test_zero_matrix_outside_theorem():
    Z = AciMatrix.constant(GF5, [[0, 0], [0, 0]])
    c = canonical_form(Z)
    assert c.rho == 0 and c.outside_theorem and c.block_dims == {"r": 2, "s": 2}
    assert verify_canonical_form(Z, c)
    assert is_constant_rank(Z).constant


def test_block_rank_drop_helpers():
    B = matrix([["x", "1"], ["1", "y"]])
    values = rows_dependent_completion(B)
    assert values is not None
    assert cols_dependent_completion(matrix([["1"], ["x"]])) is None
    assert cols_dependent_completion(matrix([["x"], ["y"]])) is not None
    assert rows_dependent_completion(matrix([["1", "x"]])) is None


# properties -------------------------------------------------------------------------

def _sample(rng):
    m, n = rng.randint(1, 5), rng.randint(1, 5)
    p = rng.choice([q for q in (5, 7, 11) if q >= max(m, n + 1)])
    return type(GF7).gf(p), m, n


@settings(max_examples=60)
@given(seed=st.integers(0, 10**6))
def test_full_rank_templates_round_trip(seed):
    rng = rng_for(seed)
    f, m, n = _sample(rng)
    M, _, _ = random_equivalent(rng, template_full(rng, f, m, n))
    res = is_constant_rank(M, method="structural")
    assert res.constant and res.rho == min(m, n)
    c = canonical_form(M)
    assert c.form_tag == (WIDE_I if m < n else SQUARE_II if m == n else TALL_III)
    assert verify_canonical_form(M, c)


@settings(max_examples=60)
@given(seed=st.integers(0, 10**6))
def test_deficient_templates_round_trip(seed):
    rng = rng_for(seed)
    f, m, n = _sample(rng)
    params = iv_parameters(rng, m, n)
    if params is None:
        return
    rho, r, s = params
    M, _, _ = random_equivalent(rng, template_iv(rng, f, m, n, r, s))
    res = is_constant_rank(M, method="structural")
    assert res.constant and res.rho == rho
    c = canonical_form(M)
    assert c.form_tag == DEFICIENT_IV and c.block_dims == {"r": r, "s": s}
    assert verify_canonical_form(M, c)


@settings(max_examples=40)
@given(seed=st.integers(0, 10**6))
def test_refined_dimensions_are_invariant(seed):
    rng = rng_for(seed)
    dims = refined_parameters(rng)
    f = GF11
    M = template_refined(rng, f, **dims)
    expected = {"W": (dims["mW"], dims["nW"]), "S": (dims["mS"], dims["mS"]), "T": (dims["mT"], dims["nT"])}
    for _ in range(3):
        N, _, _ = random_equivalent(rng, M)
        c = canonical_form(N, refined=True)
        assert c.form_tag == REFINED_WST and c.block_dims == expected
        assert verify_canonical_form(N, c)


@settings(max_examples=150)
@given(M=aci_matrices(fields=(GF2, GF3, GF5), max_m=3, max_n=3))
def test_structural_agrees_with_enumeration(M):
    ranks = exhaustive_ranks(M)
    res = is_constant_rank(M, method="structural")
    assert res.constant == (len(ranks) == 1)
    if res.constant:
        assert res.rho == max(ranks)
    else:
        assert rank_of_completion(M, res.low) == res.low_rank < res.high_rank == rank_of_completion(M, res.high)


@settings(max_examples=80)
@given(M=aci_matrices(fields=(GF5, GF7), max_m=4, max_n=4, min_dim=1))
def test_canonical_form_is_sound_and_complete(M):
    if M.field.p < max(M.m, M.n + 1):
        return
    ranks = exhaustive_ranks(M)
    if len(ranks) == 1:
        c = canonical_form(M)
        assert verify_canonical_form(M, c) and c.rho == max(ranks)
    else:
        with pytest.raises(NotConstantRank):
            canonical_form(M)


def test_random_sparse_constant_rank_matrices_canonicalize():
    rng = rng_for(8)
    done = 0
    while done < 40:
        M = random_aci(rng, GF7, rng.randint(1, 4), rng.randint(1, 4), zero_prob=0.7)
        if len(exhaustive_ranks(M)) == 1:
            assert verify_canonical_form(M, canonical_form(M))
            done += 1
