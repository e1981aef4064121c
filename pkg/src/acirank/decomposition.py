"""Sweeps, factor and semifactor sets, their lattices, and the WST-decomposition.

All column subsets are 0-based tuples in ascending order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .aci import (
    AciMatrix,
    ColumnSelector,
    ZeroBlock,
    classify_zero_block,
    combine,
    left_multiply,
    permute_columns,
    permute_rows,
    row_coefficient_matrix,
)
from .errors import InternalAssertionFailed, TooManyColumns
from .rank import DEFAULT_BUDGET, SearchBudget, is_FCmR, is_FmR, is_FRmR, max_rank_value

ENUMERATION_LIMIT = 12

FACTOR = "factor"
SEMIFACTOR = "semifactor"


# sweeps ------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    R: List[list]
    swept: AciMatrix
    zero_rows: Tuple[int, ...]


def _scope(M: AciMatrix, scope) -> Tuple[int, ...]:
    if scope is None:
        return tuple(range(M.n))
    if isinstance(scope, ColumnSelector):
        return scope.F
    return tuple(sorted(set(scope)))


def sweep_bottom_to_top(M: AciMatrix, scope=None) -> SweepResult:
    """Zero every row, within the scope columns, that depends on the rows below it.

    Row ``m-1-i`` is handled at step ``i`` for ``i = 1, ..., m-1``.  The
    combination found in the scope columns is applied to the whole row.
    """
    f = M.field
    cols = _scope(M, scope)
    coef = row_coefficient_matrix(M, cols)
    R = linalg.identity(f, M.m)
    rows = [list(r) for r in M.entries]
    for t in range(M.m - 2, -1, -1):
        if not any(coef[t]):
            continue
        below = [k for k in range(t + 1, M.m) if any(coef[k])]
        sol = linalg.solve_combination(f, [coef[k] for k in below], coef[t])
        if sol is None:
            continue
        ops = [(k, c) for k, c in zip(below, sol) if c]
        neg_one = f.neg(f.one)
        rows[t] = [combine(f, [(f.one, rows[t][j])] + [(f.mul(neg_one, c), rows[k][j]) for k, c in ops])
                   for j in range(M.n)]
        coef[t] = [f.zero] * len(coef[t])
        for k, c in ops:
            R[t] = [f.sub(a, f.mul(c, b)) for a, b in zip(R[t], R[k])]
    swept = AciMatrix(f, M.m, M.n, rows, M.registry, M.name)
    zero_rows = tuple(i for i in range(M.m) if not any(coef[i]))
    return SweepResult(R, swept, zero_rows)


def sink_zero_rows(result: SweepResult) -> Tuple[List[list], AciMatrix, int]:
    """Stable partition: nonzero rows keep their order, zero rows go to the bottom.

    Returns ``(R, arranged, r)`` with ``arranged = R M`` and ``r`` zero rows.
    """
    m = result.swept.m
    zero = set(result.zero_rows)
    order = [i for i in range(m) if i not in zero] + sorted(zero)
    R = [result.R[i] for i in order]
    return R, permute_rows(result.swept, order), len(zero)


def sweep_and_sink(M: AciMatrix, scope=None) -> Tuple[List[list], AciMatrix, int]:
    return sink_zero_rows(sweep_bottom_to_top(M, scope))


# F-decompositions ----------------------------------------------------------------

@dataclass(frozen=True)
class FDecomposition:
    F: Tuple[int, ...]
    R: List[list]
    order: Tuple[int, ...]
    arranged: AciMatrix
    block_A: AciMatrix
    block_B: AciMatrix
    block_C: AciMatrix
    r: int
    s: int
    kind: str

    @property
    def accepted(self) -> bool:
        return True


@dataclass(frozen=True)
class Refusal:
    F: Tuple[int, ...]
    kind: str
    reason: str
    r: int = 0
    s: int = 0

    @property
    def accepted(self) -> bool:
        return False

    def __bool__(self):
        return False


def _arrange(M: AciMatrix, F: Sequence[int]):
    sel = ColumnSelector(F, M.n)
    MQ = permute_columns(M, sel)
    R, arranged, r = sweep_and_sink(MQ, range(len(sel.F)))
    return sel, R, arranged, r


def _split(arranged: AciMatrix, r: int, s: int):
    m, n = arranged.m, arranged.n
    top = range(m - r)
    bottom = range(m - r, m)
    A = arranged.submatrix(top, range(s))
    B = arranged.submatrix(top, range(s, n))
    C = arranged.submatrix(bottom, range(s, n))
    return A, B, C


def _test_set(M: AciMatrix, F: Sequence[int], kinds=(FACTOR, SEMIFACTOR)) -> Dict[str, object]:
    sel, R, arranged, r = _arrange(M, F)
    s = len(sel.F)
    block = classify_zero_block(arranged, r, s)
    wanted = {ZeroBlock.BIG: FACTOR, ZeroBlock.MEDIUM: SEMIFACTOR}.get(block)
    out: Dict[str, object] = {}
    for kind in kinds:
        if wanted != kind:
            size = "Big" if kind == FACTOR else "Medium"
            out[kind] = Refusal(sel.F, kind, f"zero block {r}x{s} is not {size} (it is {block.value})", r, s)
            continue
        A, B, C = _split(arranged, r, s)
        if not is_FRmR(A):
            out[kind] = Refusal(sel.F, kind, "block A is not FRmR", r, s)
        elif not is_FCmR(C):
            out[kind] = Refusal(sel.F, kind, "block C is not FCmR", r, s)
        else:
            out[kind] = FDecomposition(sel.F, R, sel.order, arranged, A, B, C, r, s, kind)
    return out


def is_factor_set(M: AciMatrix, F: Sequence[int], budget: SearchBudget = DEFAULT_BUDGET):
    """:class:`FDecomposition` with a Big zero block, or a :class:`Refusal`."""
    return _test_set(M, F, (FACTOR,))[FACTOR]


def is_semifactor_set(M: AciMatrix, F: Sequence[int], budget: SearchBudget = DEFAULT_BUDGET):
    """:class:`FDecomposition` with a Medium zero block, or a :class:`Refusal`."""
    return _test_set(M, F, (SEMIFACTOR,))[SEMIFACTOR]


# lattices ----------------------------------------------------------------------

@dataclass(frozen=True)
class FactorLattice:
    kind: str
    members: Tuple[Tuple[int, ...], ...]
    f_bot: Optional[Tuple[int, ...]]
    f_top: Optional[Tuple[int, ...]]
    matrix_is_FmR: bool
    consistent: bool
    decompositions: Dict[Tuple[int, ...], FDecomposition] = dc_field(default_factory=dict, compare=False, repr=False)

    @property
    def note(self) -> str:
        if self.members:
            return ""
        return "matrix is FmR" if self.kind == FACTOR else "matrix is not FmR"


def all_subsets(n: int):
    """Subsets of ``range(n)`` by size, then lexicographically."""
    for size in range(n + 1):
        yield from itertools.combinations(range(n), size)


def enumerate_lattices(M: AciMatrix, limit: int = ENUMERATION_LIMIT) -> Dict[str, FactorLattice]:
    """Both lattices in one pass over the ``2^n`` column subsets."""
    if M.n > limit:
        raise TooManyColumns(f"{M.n} columns exceed the enumeration limit of {limit}")
    if "lattices" in M._cache:
        return M._cache["lattices"]
    found: Dict[str, Dict[Tuple[int, ...], FDecomposition]] = {FACTOR: {}, SEMIFACTOR: {}}
    for F in all_subsets(M.n):
        for kind, res in _test_set(M, F).items():
            if res:
                found[kind][tuple(F)] = res
    fmr = is_FmR(M)
    out = {}
    for kind, decs in found.items():
        members = tuple(decs)
        f_bot = f_top = None
        if members:
            f_bot = tuple(sorted(set.intersection(*(set(x) for x in members))))
            f_top = tuple(sorted(set.union(*(set(x) for x in members))))
        expected = (not fmr) if kind == FACTOR else fmr
        out[kind] = FactorLattice(kind, members, f_bot, f_top, fmr, bool(members) == expected, decs)
    M._cache["lattices"] = out
    return out


def enumerate_sets(M: AciMatrix, kind: str = FACTOR, budget: SearchBudget = DEFAULT_BUDGET,
                   limit: int = ENUMERATION_LIMIT) -> FactorLattice:
    if kind not in (FACTOR, SEMIFACTOR):
        raise ValueError(f"kind must be {FACTOR!r} or {SEMIFACTOR!r}")
    return enumerate_lattices(M, limit)[kind]


# zero-block witness ---------------------------------------------------------------

@dataclass(frozen=True)
class ZeroBlockWitness:
    R: List[list]
    order: Tuple[int, ...]
    r: int
    s: int
    arranged: AciMatrix
    F: Tuple[int, ...]


def zero_block_witness(M: AciMatrix, rho: int, budget: SearchBudget = DEFAULT_BUDGET):
    """``(R, Q, r, s)`` with ``rho = (m-r) + (n-s)`` and a zero bottom-left ``r x s`` block.

    Refuses exactly when ``maxRank(M) > rho``.
    """
    m, n = M.m, M.n
    if not 0 <= rho < min(m, n):
        raise ValueError(f"rho must satisfy 0 <= rho < {min(m, n)}")
    lattice = enumerate_sets(M, FACTOR, budget)
    if not lattice.members:
        return Refusal((), FACTOR, "no factor set: the matrix is FmR, so maxRank exceeds rho")
    dec = lattice.decompositions[lattice.members[0]]
    achieved = (m - dec.r) + (n - dec.s)
    if achieved > rho:
        return Refusal(dec.F, FACTOR, f"maxRank is {achieved} > {rho}", dec.r, dec.s)
    excess = (dec.r + dec.s) - (m + n - rho)
    take_r = min(excess, dec.r - 1)
    r, s = dec.r - take_r, dec.s - (excess - take_r)
    return ZeroBlockWitness(dec.R, dec.order, r, s, dec.arranged, dec.F)


# WST ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WstDecomposition:
    R: List[list]
    order: Tuple[int, ...]
    arranged: AciMatrix
    W: AciMatrix
    S: AciMatrix
    T: AciMatrix
    stars: Tuple[AciMatrix, AciMatrix, AciMatrix]
    f_bot: Tuple[int, ...]
    f_top: Tuple[int, ...]
    kind: str
    case: str

    @property
    def dims(self) -> Dict[str, Tuple[int, int]]:
        return {"W": (self.W.m, self.W.n), "S": (self.S.m, self.S.n), "T": (self.T.m, self.T.n)}

    @property
    def max_rank(self) -> int:
        return self.W.m + self.S.m + self.T.n

    def row_split(self) -> Tuple[int, int]:
        return self.W.m, self.W.m + self.S.m

    def col_split(self) -> Tuple[int, int]:
        return self.W.n, self.W.n + self.S.n


def _nonzero_rows(M: AciMatrix, cols) -> int:
    coef = row_coefficient_matrix(M, cols)
    return linalg.rank(M.field, coef) if coef and coef[0] else 0


def _columns_all_zero(M: AciMatrix, cols) -> bool:
    return all(M.entries[i][j].is_zero() for i in range(M.m) for j in cols)


def _wst_case(M: AciMatrix, fmr: bool, h: int, k: int, zero_bot: bool) -> Tuple[str, bool, bool]:
    """Case label and which sweeps (w.r.t. F_top, w.r.t. F_bot) the construction performs."""
    m, n = M.m, M.n
    if fmr:
        if m > n:
            if k == 0:
                return "FmR tall, F_top empty", False, False
            return ("FmR tall, F_top proper" if k < n else "FmR tall, F_top all columns"), True, False
        if m < n:
            if h == n:
                return "FmR wide, F_bot all columns", False, False
            if zero_bot:
                return "FmR wide, F_bot columns zero", False, False
            return "FmR wide, general", False, True
        return "FmR square", False, False
    label = f"non-FmR, F_bot {'<' if h < k else '='} F_top {'<' if k < n else '='} all columns"
    if zero_bot:
        label += ", F_bot columns zero"
    sweep_top = not (zero_bot and h == k)
    sweep_bot = not zero_bot and h < k
    return label, sweep_top, sweep_bot


def wst_decompose(M: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET,
                  limit: int = ENUMERATION_LIMIT) -> WstDecomposition:
    """WST-decomposition with ``S`` as large as possible."""
    f = M.field
    m, n = M.m, M.n
    if m == 0 or n == 0:
        every = tuple(range(n))
        return _assemble(M, linalg.identity(f, m), every, M, n, n, every, every, SEMIFACTOR,
                         "degenerate", mW=0, a=0)
    fmr = is_FmR(M)
    kind = SEMIFACTOR if fmr else FACTOR
    lattice = enumerate_sets(M, kind, budget, limit)
    if not lattice.members:
        raise InternalAssertionFailed(f"no {kind} set although FmR is {fmr}")
    f_bot, f_top = lattice.f_bot, lattice.f_top
    h, k = len(f_bot), len(f_top)
    zero_bot = h > 0 and _columns_all_zero(M, f_bot)
    case, sweep_top, sweep_bot = _wst_case(M, fmr, h, k, zero_bot)
    middle = [j for j in f_top if j not in set(f_bot)]
    rest = [j for j in range(n) if j not in set(f_top)]
    order = tuple(list(f_bot) + middle + rest)
    cur = permute_columns(M, order)
    R = linalg.identity(f, m)
    if sweep_top:
        R1, cur, _ = sweep_and_sink(cur, range(k))
        R = linalg.matmul(f, R1, R)
    a = _nonzero_rows(cur, range(k))
    if sweep_bot:
        R2, cur, _ = sweep_and_sink(cur, range(h))
        R = linalg.matmul(f, R2, R)
    mW = _nonzero_rows(cur, range(h))
    return _assemble(M, R, order, cur, h, k, f_bot, f_top, kind, case, mW=mW, a=a)


def _assemble(M, R, order, cur, h, k, f_bot, f_top, kind, case, mW, a) -> WstDecomposition:
    m, n = cur.m, cur.n
    rW, rS, rT = range(mW), range(mW, a), range(a, m)
    cW, cS, cT = range(h), range(h, k), range(k, n)
    W = cur.submatrix(rW, cW)
    S = cur.submatrix(rS, cS)
    T = cur.submatrix(rT, cT)
    stars = (cur.submatrix(rW, cS), cur.submatrix(rW, cT), cur.submatrix(rS, cT))
    d = WstDecomposition(R, tuple(order), cur, W, S, T, stars, tuple(f_bot), tuple(f_top), kind, case)
    problems = wst_problems(M, d, check_arranged=False)
    if problems:
        raise InternalAssertionFailed(f"WST postcondition failed ({case}): {'; '.join(problems)}")
    return d


def _block_predicates(d: WstDecomposition) -> List[str]:
    out = []
    W, S, T = d.W, d.S, d.T
    if not (W.m == 0 or (W.n > W.m and is_FRmR(W))):
        out.append(f"W {W.m}x{W.n} is not wide FRmR, void or wide degenerate")
    if not (S.m == S.n and is_FmR(S)):
        out.append(f"S {S.m}x{S.n} is not square FmR or void")
    if not (T.n == 0 or (T.m > T.n and is_FCmR(T))):
        out.append(f"T {T.m}x{T.n} is not tall FCmR, void or tall degenerate")
    return out


def wst_problems(M: AciMatrix, d: WstDecomposition, check_arranged: bool = True) -> List[str]:
    """Every violated postcondition of ``d`` as a readable message (empty when valid)."""
    f = M.field
    problems = _block_predicates(d)
    if d.S.n != len(d.f_top) - len(d.f_bot):
        problems.append("cols(S) differs from #F_top - #F_bot")
    if not linalg.is_nonsingular(f, d.R) and M.m:
        problems.append("R is singular")
    if sorted(d.order) != list(range(M.n)):
        problems.append("Q is not a permutation")
    if d.max_rank != max_rank_value(M):
        problems.append(f"rows(W)+rows(S)+cols(T) = {d.max_rank} but maxRank is {max_rank_value(M)}")
    if check_arranged:
        problems.extend(_shape_problems(M, d))
    return problems


def _shape_problems(M: AciMatrix, d: WstDecomposition) -> List[str]:
    out = []
    if len(d.R) != M.m or any(len(r) != M.m for r in d.R):
        return ["R has the wrong size"]
    got = permute_columns(left_multiply(d.R, M), d.order)
    mW, a = d.W.m, d.W.m + d.S.m
    h, k = d.W.n, d.W.n + d.S.n
    if a + d.T.m != M.m or k + d.T.n != M.n:
        return ["block sizes do not add up to the matrix size"]
    expect = {
        "W": (range(mW), range(h), d.W), "S": (range(mW, a), range(h, k), d.S),
        "T": (range(a, M.m), range(k, M.n), d.T), "*12": (range(mW), range(h, k), d.stars[0]),
        "*13": (range(mW), range(k, M.n), d.stars[1]), "*23": (range(mW, a), range(k, M.n), d.stars[2]),
    }
    for label, (rows, cols, block) in expect.items():
        if (block.m, block.n) != (len(rows), len(cols)) or got.submatrix(rows, cols).entries != block.entries:
            out.append(f"block {label} differs from R M Q")
    for i in range(mW, M.m):
        zero_cols = range(h) if i < a else range(k)
        if any(not got.entries[i][j].is_zero() for j in zero_cols):
            out.append(f"row {i} is not zero below the diagonal blocks")
            break
    return out


def verify_wst(M: AciMatrix, d: WstDecomposition, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    return not wst_problems(M, d)
