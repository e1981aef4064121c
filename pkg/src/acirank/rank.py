"""Rank, maxRank and minRank of ACI-matrices.

Two independent routes are provided.  ``rank_set_exhaustive`` enumerates
every completion over a prime field.  ``symbolic_rank`` eliminates over the
polynomial ring with fraction-free (Bareiss) steps.

Every minor of an ACI-matrix has degree at most one in each indeterminate,
because an indeterminate only occurs in one column.  Such a polynomial, if
nonzero, stays nonzero after substituting one of any two distinct values
for one of its variables, so the symbolic rank is attained by a completion
over every field, GF(2) included.  ``max_rank`` exploits this to produce
a witness without enumeration.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import linalg
from .aci import AciMatrix, Completion, complete
from .errors import BudgetExceeded, InfiniteField, InternalAssertionFailed
from .poly import Poly


@dataclass(frozen=True)
class SearchBudget:
    max_completions: int = 1 << 20
    rng_seed: int = 42
    random_tries: int = 512

    def __post_init__(self):
        if self.max_completions <= 0 or self.random_tries <= 0 or self.rng_seed < 0:
            raise ValueError("budget values must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class RankReport:
    max_rank: int
    max_witness: Optional[Completion]
    method: str
    rank_set: Optional[FrozenSet[int]] = None
    min_rank: Optional[int] = None
    min_witness: Optional[Completion] = None
    witnesses: Optional[Dict[int, Completion]] = None


def _full_completion(M: AciMatrix, values: Dict[int, object]) -> Completion:
    zero = M.field.zero
    return Completion({ind.id: values.get(ind.id, zero) for ind in M.registry})


def completion_count(M: AciMatrix) -> int:
    if not M.field.is_finite:
        raise InfiniteField("completions of a matrix over the rationals cannot be counted")
    return M.field.p ** len(M.active_ids())


class _Evaluator:
    """Fast rank of ``M`` at raw assignments of its active indeterminates."""

    def __init__(self, M: AciMatrix):
        self.M = M
        self.field = M.field
        self.ids = M.active_ids()
        where = {ident: k for k, ident in enumerate(self.ids)}
        self.cells = []
        for i, row in enumerate(M.entries):
            for j, form in enumerate(row):
                if form.terms:
                    self.cells.append((i, j, form.constant, [(where[t], c) for t, c in form.terms]))
        self.base = M.constant_part()

    def matrix(self, point) -> List[list]:
        out = [list(r) for r in self.base]
        f = self.field
        p = f.p
        for i, j, const, terms in self.cells:
            v = const
            for k, c in terms:
                v += c * point[k]
            out[i][j] = v % p if p is not None else v
        return out

    def rank(self, point) -> int:
        if self.M.m == 0 or self.M.n == 0:
            return 0
        mat = self.matrix(point)
        p = self.field.p
        if p == 2:
            return linalg.gf2_rank_bits([linalg._pack(r) for r in mat])
        if p is not None:
            return linalg.gfp_rank(mat, p)
        return linalg.rank(self.field, mat)


def iter_completions(M: AciMatrix):
    """All raw points for the active ids, first id most significant."""
    ids = M.active_ids()
    return ids, itertools.product(tuple(M.field.elements()), repeat=len(ids))


def rank_set_exhaustive(M: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET) -> RankReport:
    """Exact Rank set by enumerating every completion (finite fields only)."""
    total = completion_count(M)
    if total > budget.max_completions:
        raise BudgetExceeded(f"{total} completions exceed the budget of {budget.max_completions}")
    ev = _Evaluator(M)
    ids, points = iter_completions(M)
    witnesses: Dict[int, Completion] = {}
    top = min(M.m, M.n)
    for point in points:
        r = ev.rank(point)
        if r not in witnesses:
            witnesses[r] = _full_completion(M, dict(zip(ids, point)))
            if len(witnesses) == top + 1:
                break
    ranks = frozenset(witnesses)
    hi, lo = max(ranks), min(ranks)
    return RankReport(hi, witnesses[hi], "exhaustive", ranks, lo, witnesses[lo], witnesses)


def min_rank_exhaustive(M: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET) -> Tuple[int, Completion]:
    report = rank_set_exhaustive(M, budget)
    return report.min_rank, report.min_witness


def rank_of_completion(M: AciMatrix, c: Completion) -> int:
    if M.m == 0 or M.n == 0:
        return 0
    return linalg.rank(M.field, complete(M, c))


# symbolic route --------------------------------------------------------------

def _bareiss(M: AciMatrix):
    """Fraction-free elimination; returns ``(rank, last_pivot, var_ids)``."""
    f = M.field
    ids = M.active_ids()
    k = len(ids)
    where = {ident: v for v, ident in enumerate(ids)}
    A = [[Poly.affine(f, k, form.constant, [(where[t], c) for t, c in form.terms]) for form in row]
         for row in M.entries]
    m, n = M.m, M.n
    prev = Poly.constant(f, k, 1)
    last = prev
    r = 0
    for col in range(n):
        if r == m:
            break
        candidates = [i for i in range(r, m) if A[i][col]]
        if not candidates:
            continue
        piv = min(candidates, key=lambda i: (len(A[i][col].terms), A[i][col].degree(), i))
        A[r], A[piv] = A[piv], A[r]
        pivot = A[r][col]
        for i in range(r + 1, m):
            a_ic = A[i][col]
            row_i = A[i]
            for j in range(col + 1, n):
                num = pivot * row_i[j]
                if a_ic:
                    num = num - a_ic * A[r][j]
                row_i[j] = num.exact_div(prev) if r else num
            row_i[col] = Poly(f, k)
        prev = pivot
        last = pivot
        r += 1
    return r, last, ids


def _quick_lower_bound(M: AciMatrix, tries: int, seed: int) -> int:
    """Rank of a few random completions; never exceeds the symbolic rank."""
    ev = _Evaluator(M)
    rng = random.Random(seed)
    top = min(M.m, M.n)
    best = 0
    f = M.field
    for _ in range(tries):
        if f.p is None:
            point = [f.canon(rng.randint(-1000, 1000)) for _ in ev.ids]
        else:
            point = [rng.randrange(f.p) for _ in ev.ids]
        best = max(best, ev.rank(point))
        if best == top:
            break
    return best


def symbolic_rank(M: AciMatrix) -> int:
    """Rank over the field of rational functions in the indeterminates."""
    if "symbolic" not in M._cache:
        if M.m == 0 or M.n == 0:
            M._cache["symbolic"] = 0
        elif M.is_constant():
            M._cache["symbolic"] = linalg.rank(M.field, M.constant_part())
        else:
            top = min(M.m, M.n)
            if _quick_lower_bound(M, 3, 7) == top:
                M._cache["symbolic"] = top
            else:
                M._cache["symbolic"] = _bareiss(M)[0]
    return M._cache["symbolic"]


def symbolic_rank_bareiss(M: AciMatrix) -> int:
    """Symbolic rank by elimination alone, without the random shortcut."""
    if M.m == 0 or M.n == 0:
        return 0
    return _bareiss(M)[0]


def max_rank_value(M: AciMatrix) -> int:
    return symbolic_rank(M)


def greedy_witness(M: AciMatrix) -> Completion:
    """Completion attaining the symbolic rank, built from a nonzero maximal minor."""
    f = M.field
    if M.m == 0 or M.n == 0 or M.is_constant():
        return _full_completion(M, {})
    u, minor, ids = _bareiss(M)
    values: Dict[int, object] = {}
    for v, ident in enumerate(ids):
        if v not in minor.variables():
            values[ident] = f.zero
            continue
        for value in f.small_sequence():
            reduced = minor.substitute(v, value)
            if reduced:
                minor = reduced
                values[ident] = value
                break
        else:
            raise InternalAssertionFailed("a nonzero minor vanished for every value of one variable")
    c = _full_completion(M, values)
    if rank_of_completion(M, c) != u:
        raise InternalAssertionFailed("greedy witness does not attain the symbolic rank")
    return c


def max_rank(M: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET) -> Tuple[int, Completion]:
    """Exact maxRank with a completion attaining it."""
    u = symbolic_rank(M)
    f = M.field
    if M.m == 0 or M.n == 0 or M.is_constant():
        return u, _full_completion(M, {})
    if f.is_finite and f.p > min(M.m, M.n):
        ev = _Evaluator(M)
        rng = random.Random(budget.rng_seed)
        for _ in range(budget.random_tries):
            point = [rng.randrange(f.p) for _ in ev.ids]
            if ev.rank(point) == u:
                return u, _full_completion(M, dict(zip(ev.ids, point)))
    return u, greedy_witness(M)


def rank_report(M: AciMatrix, budget: SearchBudget = DEFAULT_BUDGET) -> RankReport:
    """Full Rank set when enumeration fits the budget, otherwise maxRank with a witness."""
    if M.field.is_finite and completion_count(M) <= budget.max_completions:
        return rank_set_exhaustive(M, budget)
    u, witness = max_rank(M, budget)
    return RankReport(u, witness, "symbolic+witness")


# full-rank predicates --------------------------------------------------------

def is_FRmR(M: AciMatrix) -> bool:
    if M.m == 0 or M.n == 0:
        return True
    return symbolic_rank(M) == M.m


def is_FCmR(M: AciMatrix) -> bool:
    if M.m == 0 or M.n == 0:
        return True
    return symbolic_rank(M) == M.n


def is_FmR(M: AciMatrix) -> bool:
    if M.m == 0 or M.n == 0:
        return True
    return symbolic_rank(M) == min(M.m, M.n)
