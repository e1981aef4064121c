"""constantRank detection and canonical forms.

Write ``R M Q = [[W, *, *], [0, S, *], [0, 0, T]]`` for the WST-decomposition.
Every completion of such a block matrix has rank at least
``rank(W) + rank(S) + rank(T)``, and a rank drop in any one block caps the
rank of the whole completion below ``rows(W) + rows(S) + cols(T)`` no matter
what the other indeterminates are.  So ``M`` is constantRank exactly when
``W`` always has independent rows, ``S`` is always nonsingular and ``T``
always has independent columns.  Each of those three questions is a finite
linear-algebra problem, decided below over any prime field or the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .aci import AciMatrix, Completion, column_space, left_multiply, permute_columns
from .decomposition import WstDecomposition, wst_decompose
from .errors import (
    BudgetExceeded,
    FieldTooSmall,
    InternalAssertionFailed,
    NotConstantRank,
    ReductionFailed,
)
from .rank import (
    DEFAULT_BUDGET,
    SearchBudget,
    completion_count,
    max_rank,
    rank_of_completion,
    rank_set_exhaustive,
    symbolic_rank,
)
from .scalars import FieldSpec

WIDE_I = "wide-i"
SQUARE_II = "square-ii"
TALL_III = "tall-iii"
DEFICIENT_IV = "deficient-iv"
REFINED_WST = "refined-wst"


# generic points of subspaces ------------------------------------------------------

def _dot(field: FieldSpec, a, b):
    total = field.zero
    for x, y in zip(a, b):
        if x and y:
            total = field.add(total, field.mul(x, y))
    return total


def _combo(field: FieldSpec, coeffs, basis, dim):
    out = [field.zero] * dim
    for a, vec in zip(coeffs, basis):
        if a:
            out = [field.add(o, field.mul(a, v)) for o, v in zip(out, vec)]
    return out


def _points(field: FieldSpec, basis, dim: int, avoid_count: int, budget: SearchBudget):
    """Candidate nonzero vectors of ``span(basis)``.

    Over the rationals: points ``sum(t^i b_i)`` on the moment curve, enough of
    them that ``avoid_count`` proper subspaces cannot contain them all.  Over
    GF(p): every projective point, one representative each.
    """
    d = len(basis)
    if d == 0:
        return
    if field.p is None:
        for t in range(1, avoid_count * max(d - 1, 1) + 2):
            yield _combo(field, [field.canon(t ** i) for i in range(d)], basis, dim)
        return
    count = (field.p ** d - 1) // (field.p - 1)
    if count > budget.max_completions:
        raise BudgetExceeded(f"{count} projective points exceed the budget of {budget.max_completions}")
    for lead in range(d):
        for tail in itertools.product(range(field.p), repeat=d - lead - 1):
            coeffs = [0] * lead + [1] + list(tail)
            yield _combo(field, coeffs, basis, dim)


# rows of a block always independent? ---------------------------------------------------

def rows_dependent_completion(B: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET) -> Optional[Dict[int, object]]:
    """Values for ``B``'s indeterminates making its rows dependent, or ``None`` if impossible.

    A functional ``y != 0`` can kill every column exactly when, for each
    column ``j``, either ``y . c_j = 0`` or ``y`` does not annihilate ``V_j``.
    """
    f = B.field
    p = B.m
    if p == 0:
        return None
    cols = [column_space(B, j) for j in range(B.n)]
    L = linalg.identity(f, p)
    changed = True
    while changed and L:
        changed = False
        for c, V, _ in cols:
            if all(not _dot(f, b, v) for b in L for v in V):
                weights = [[_dot(f, b, c)] for b in L]
                if any(w[0] for w in weights):
                    kernel = linalg.left_nullspace(f, weights)
                    L = [_combo(f, k, L, p) for k in kernel]
                    changed = True
                    if not L:
                        break
    if not L:
        return None

    def good(y):
        return all(not _dot(f, y, c) or any(_dot(f, y, v) for v in V) for c, V, _ in cols)

    for y in _points(f, L, p, B.n + 1, budget):
        if good(y):
            values: Dict[int, object] = {}
            for c, V, ids in cols:
                yc = _dot(f, y, c)
                for ident in ids:
                    values[ident] = f.zero
                if yc:
                    l = next(i for i, v in enumerate(V) if _dot(f, y, v))
                    values[ids[l]] = f.neg(f.div(yc, _dot(f, y, V[l])))
            return values
    if f.p is None:
        raise InternalAssertionFailed("no generic point found on a nonzero subspace")
    return None


def cols_dependent_completion(B: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET) -> Optional[Dict[int, object]]:
    """Values for ``B``'s indeterminates making its columns dependent, or ``None``.

    With support ``K``, ``sum z_j (c_j + V_j x_j) = 0`` is linear in
    ``(z_j, w_j = z_j x_j)``; a solution with every ``z_j`` nonzero gives
    ``x_j = w_j / z_j``.
    """
    f = B.field
    if B.n == 0:
        return None
    cols = [column_space(B, j) for j in range(B.n)]
    for size in range(1, B.n + 1):
        for K in itertools.combinations(range(B.n), size):
            vectors = [cols[j][0] for j in K]
            owners = []
            for pos, j in enumerate(K):
                for l, v in enumerate(cols[j][1]):
                    vectors.append(v)
                    owners.append((pos, cols[j][2][l]))
            dim = len(vectors)
            kernel = linalg.nullspace(f, linalg.transpose(vectors), dim) if B.m else linalg.identity(f, dim)
            if not kernel:
                continue
            if any(all(not k[pos] for k in kernel) for pos in range(size)):
                continue
            for u in _points(f, kernel, dim, size + 1, budget):
                z = u[:size]
                if all(z):
                    values = {ident: f.zero for _, _, ids in cols for ident in ids}
                    for (pos, ident), w in zip(owners, u[size:]):
                        values[ident] = f.div(w, z[pos])
                    return values
            if f.p is None:
                raise InternalAssertionFailed("no generic point with full support found")
    return None


# the decision ---------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantRankResult:
    constant: bool
    rho: Optional[int]
    method: str
    low: Optional[Completion] = None
    high: Optional[Completion] = None
    low_rank: Optional[int] = None
    high_rank: Optional[int] = None

    def __iter__(self):
        return iter((self.constant, self.rho))

    def __bool__(self):
        return self.constant


def _lift(M: AciMatrix, values: Dict[int, object]) -> Completion:
    zero = M.field.zero
    return Completion({ind.id: values.get(ind.id, zero) for ind in M.registry})


def structural_rank_drop(M: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET,
                         wst: Optional[WstDecomposition] = None) -> Optional[Tuple[Completion, str]]:
    """A completion of rank below maxRank and the block that caused it, or ``None``."""
    if M.m == 0 or M.n == 0:
        return None
    d = wst or wst_decompose(M, budget)
    for label, block, test in (("W", d.W, rows_dependent_completion), ("S", d.S, rows_dependent_completion),
                               ("T", d.T, cols_dependent_completion)):
        values = test(block, budget)
        if values is not None:
            return _lift(M, values), label
    return None


def is_constant_rank(M: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET, method: str = "auto") -> ConstantRankResult:
    """Decide ``maxRank(M) == minRank(M)``.

    ``method`` is ``"exhaustive"`` (finite fields within budget),
    ``"structural"`` (any field), or ``"auto"``, which enumerates when that
    fits the budget and otherwise falls back to the structural test.
    """
    if method == "auto":
        fits = M.field.is_finite and completion_count(M) <= budget.max_completions
        method = "exhaustive" if fits else "structural"
    if method == "exhaustive":
        report = rank_set_exhaustive(M, budget)
        if len(report.rank_set) == 1:
            return ConstantRankResult(True, report.max_rank, "exhaustive")
        return ConstantRankResult(False, None, "exhaustive", report.min_witness, report.max_witness,
                                  report.min_rank, report.max_rank)
    if method != "structural":
        raise ValueError(f"unknown method {method!r}")
    rho, high = max_rank(M, budget)
    drop = structural_rank_drop(M, budget)
    if drop is None:
        return ConstantRankResult(True, rho, "structural")
    low, _ = drop
    low_rank = rank_of_completion(M, low)
    if low_rank >= rho:
        raise InternalAssertionFailed(f"block rank drop did not lower the rank ({low_rank} >= {rho})")
    return ConstantRankResult(False, None, "structural", low, high, low_rank, rho)


# canonical forms -------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    R: List[list]
    order: Tuple[int, ...]
    form_tag: str
    block_dims: Dict[str, object]
    arranged: AciMatrix
    rho: int
    outside_theorem: bool = False
    wst: Optional[WstDecomposition] = dc_field(default=None, compare=False, repr=False)


@dataclass
class _Reduced:
    R: List[list]
    order: List[int]
    pivots: int
    stars: int


def reduce_block(B: AciMatrix, pivots: int) -> _Reduced:
    """Find ``R, Q`` putting a unit upper-triangular ``pivots x pivots`` block at the bottom.

    The bottom ``pivots`` rows of ``R B Q`` get 1 on the diagonal of the first
    ``pivots`` columns and exact zeros below it; the remaining top rows are
    unconstrained.  Column ``j`` can be the next pivot after the set ``X``
    when ``c_j`` is outside ``span(X) + span(V_j)``; the search backtracks
    over pivot orders and remembers failed column sets.
    """
    f = B.field
    p = B.m
    stars = p - pivots
    cols = [column_space(B, j) for j in range(B.n)]
    failed = set()

    def span_of(chosen):
        out = []
        for j in chosen:
            c, V, _ = cols[j]
            out.append(c)
            out.extend(V)
        return out

    def search(chosen: List[int]):
        if len(chosen) == pivots:
            return list(chosen)
        key = frozenset(chosen)
        if key in failed:
            return None
        X = span_of(chosen)
        for j in range(B.n):
            if j in chosen:
                continue
            c, V, _ = cols[j]
            if not linalg.in_span(f, X + V, c):
                found = search(chosen + [j])
                if found is not None:
                    return found
        failed.add(key)
        return None

    order = search([])
    if order is None:
        raise ReductionFailed(f"no pivot order reduces the {B.m}x{B.n} block")
    pivot_rows = []
    for t, j in enumerate(order):
        c, V, _ = cols[j]
        ann = linalg.annihilator(f, span_of(order[:t]) + V, p)
        base = next(r for r in ann if _dot(f, r, c))
        scale = f.inv(_dot(f, base, c))
        pivot_rows.append([f.mul(scale, v) for v in base])
    top: List[list] = []
    basis = list(pivot_rows)
    for i in range(p):
        if len(top) == stars:
            break
        e = [f.one if k == i else f.zero for k in range(p)]
        if not linalg.in_span(f, basis, e):
            top.append(e)
            basis.append(e)
    R = top + pivot_rows
    rest = [j for j in range(B.n) if j not in set(order)]
    return _Reduced(R, list(order) + rest, pivots, stars)


def _check_field(M: AciMatrix):
    f = M.field
    need = max(M.m, M.n + 1)
    if f.is_finite and f.p < need:
        raise FieldTooSmall(f"{f} has {f.p} elements; canonical forms need at least {need}")


def canonical_form(M: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET, refined: bool = False) -> CanonicalForm:
    """Canonical form of a constantRank matrix (tags wide-i .. deficient-iv, or refined-wst)."""
    _check_field(M)
    f = M.field
    m, n = M.m, M.n
    rho = symbolic_rank(M)
    if rho == 0:
        if any(not e.is_zero() for row in M.entries for e in row):
            raise InternalAssertionFailed("maxRank 0 with a nonzero entry")
        return CanonicalForm(linalg.identity(f, m), tuple(range(n)), DEFICIENT_IV, {"r": m, "s": n},
                             M, 0, outside_theorem=True)
    d = wst_decompose(M, budget)
    drop = structural_rank_drop(M, budget, d)
    if drop is not None:
        low, _ = drop
        _, high = max_rank(M, budget)
        raise NotConstantRank(f"not constantRank: ranks {rank_of_completion(M, low)} and {rho} both occur",
                              low, high, rank_of_completion(M, low), rho)
    mW, nW = d.W.m, d.W.n
    mS = d.S.m
    mT, nT = d.T.m, d.T.n
    redW = reduce_block(d.W, mW) if mW else _Reduced([], list(range(nW)), 0, 0)
    redS = reduce_block(d.S, mS) if mS else _Reduced([], [], 0, 0)
    redT = reduce_block(d.T, nT) if mT else _Reduced([], list(range(nT)), 0, 0)
    R_blocks = linalg.block_diag(f, [redW.R, redS.R, redT.R])
    R = linalg.matmul(f, R_blocks, d.R)
    wst_cols = list(d.order)
    colsW, colsS, colsT = wst_cols[:nW], wst_cols[nW:nW + mS], wst_cols[nW + mS:]
    colsW = [colsW[k] for k in redW.order]
    colsS = [colsS[k] for k in redS.order]
    colsT = [colsT[k] for k in redT.order]
    kT = mT - nT
    rows_W = list(range(mW))
    rows_S = list(range(mW, mW + mS))
    rows_T_star = list(range(mW + mS, mW + mS + kT))
    rows_T_unit = list(range(mW + mS + kT, m))
    dims = {"W": (mW, nW), "S": (mS, mS), "T": (mT, nT)}
    if refined:
        tag = REFINED_WST
        row_order = rows_W + rows_S + rows_T_star + rows_T_unit
        col_order = colsW + colsS + colsT
    else:
        row_order = rows_W + rows_T_star + rows_S + rows_T_unit
        if rho == min(m, n):
            tag = WIDE_I if m < n else (SQUARE_II if m == n else TALL_III)
            col_order = colsW[:mW] + colsS + colsW[mW:] + colsT if m < n else colsW + colsS + colsT
        else:
            tag = DEFICIENT_IV
            col_order = colsW + colsS + colsT
            dims = {"r": m - mW, "s": nW}
    R = [R[i] for i in row_order]
    arranged = permute_columns(left_multiply(R, M), col_order)
    form = CanonicalForm(R, tuple(col_order), tag, dims, arranged, rho, wst=d)
    problems = canonical_problems(M, form)
    if problems:
        raise ReductionFailed(f"assembled {tag} form is invalid: {'; '.join(problems)}")
    return form


# template checks -------------------------------------------------------------------

def _is_one(form) -> bool:
    return form.is_constant() and form.constant == form.field.one


def _unit_upper(A: AciMatrix, row0: int, col0: int, size: int) -> List[str]:
    out = []
    for t in range(size):
        if not _is_one(A.entries[row0 + t][col0 + t]):
            out.append(f"entry ({row0 + t},{col0 + t}) should be 1")
        for u in range(t):
            if not A.entries[row0 + t][col0 + u].is_zero():
                out.append(f"entry ({row0 + t},{col0 + u}) should be 0")
    return out


def _zero_block(A: AciMatrix, rows, cols) -> List[str]:
    return [f"entry ({i},{j}) should be 0" for i in rows for j in cols if not A.entries[i][j].is_zero()]


def template_problems(A: AciMatrix, tag: str, dims: Dict[str, object], rho: int) -> List[str]:
    m, n = A.m, A.n
    if tag == WIDE_I:
        if not (rho == m < n):
            return [f"wide-i needs rho = m < n, got rho={rho}, {m}x{n}"]
        return _unit_upper(A, 0, 0, m)
    if tag == SQUARE_II:
        if not (rho == m == n):
            return [f"square-ii needs rho = m = n, got rho={rho}, {m}x{n}"]
        return _unit_upper(A, 0, 0, m)
    if tag == TALL_III:
        if not (rho == n < m):
            return [f"tall-iii needs rho = n < m, got rho={rho}, {m}x{n}"]
        return _unit_upper(A, m - n, 0, n)
    if tag == DEFICIENT_IV:
        r, s = dims["r"], dims["s"]
        if rho == 0:
            return [] if (r, s) == (m, n) else ["rho = 0 form must have r = m, s = n"]
        out = []
        if not (1 <= rho < min(m, n)):
            out.append(f"deficient-iv needs 1 <= rho < min(m, n), got {rho}")
        if not (r >= 1 and s >= 1 and r + s == m + n - rho and m - r <= s and n - s <= r):
            return out + [f"(r, s) = ({r}, {s}) does not fit {m}x{n} with rho {rho}"]
        out += _unit_upper(A, 0, 0, m - r)
        out += _zero_block(A, range(m - r, m), range(s))
        out += _unit_upper(A, m - (n - s), s, n - s)
        return out
    if tag == REFINED_WST:
        (mW, nW), (mS, _), (mT, nT) = dims["W"], dims["S"], dims["T"]
        if mW + mS + mT != m or nW + mS + nT != n:
            return ["block sizes do not add up"]
        out = []
        if mW and not mW < nW:
            out.append("W must be wide")
        if nT and not mT > nT:
            out.append("T must be tall")
        if mW + mS + nT != rho:
            out.append("rows(W)+rows(S)+cols(T) differs from rho")
        out += _unit_upper(A, 0, 0, mW)
        out += _unit_upper(A, mW, nW, mS)
        out += _unit_upper(A, m - nT, nW + mS, nT)
        out += _zero_block(A, range(mW, m), range(nW))
        out += _zero_block(A, range(mW + mS, m), range(nW, nW + mS))
        return out
    return [f"unknown tag {tag!r}"]


def canonical_problems(M: AciMatrix, c: CanonicalForm) -> List[str]:
    f = M.field
    if len(c.R) != M.m or any(len(r) != M.m for r in c.R):
        return ["R has the wrong size"]
    if M.m and not linalg.is_nonsingular(f, c.R):
        return ["R is singular"]
    if sorted(c.order) != list(range(M.n)):
        return ["Q is not a permutation"]
    got = permute_columns(left_multiply(c.R, M), c.order)
    if got.entries != c.arranged.entries:
        return ["arranged differs from R M Q"]
    return template_problems(got, c.form_tag, c.block_dims, c.rho)


def verify_canonical_form(M: AciMatrix, c: CanonicalForm) -> bool:
    return not canonical_problems(M, c)
