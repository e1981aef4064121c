"""Random ACI-matrices, equivalences and canonical-form templates for testing."""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from . import linalg
from .aci import AciMatrix, AffineForm, Indeterminate, left_multiply, permute_columns, validate_aci
from .scalars import FieldSpec


def _rand_scalar(rng: random.Random, field: FieldSpec, nonzero: bool = False):
    if field.p is None:
        pool = [v for v in range(-3, 4) if v or not nonzero]
        return field.canon(rng.choice(pool))
    return rng.randrange(1 if nonzero else 0, field.p)


def random_aci(rng: random.Random, field: FieldSpec, m: int, n: int, max_vars: int = 4,
               zero_prob: float = 0.5, n_vars: Optional[int] = None) -> AciMatrix:
    """Sparse random ACI-matrix; each indeterminate sits in a random column and 1..m rows."""
    consts = [[0 if rng.random() < zero_prob else _rand_scalar(rng, field, True) for _ in range(n)]
              for _ in range(m)]
    terms: List[List[list]] = [[[] for _ in range(n)] for _ in range(m)]
    k = rng.randint(0, max_vars) if n_vars is None else n_vars
    registry = []
    if m and n:
        for ident in range(k):
            col = rng.randrange(n)
            registry.append(Indeterminate(ident, f"x{ident + 1}", col))
            for i in rng.sample(range(m), rng.randint(1, m)):
                terms[i][col].append((ident, _rand_scalar(rng, field, True)))
    grid = [[AffineForm(field, consts[i][j], terms[i][j]) for j in range(n)] for i in range(m)]
    return validate_aci(field, grid, registry, m, n)


def random_nonsingular(rng: random.Random, field: FieldSpec, m: int) -> List[list]:
    while True:
        R = [[_rand_scalar(rng, field) for _ in range(m)] for _ in range(m)]
        if m == 0 or linalg.is_nonsingular(field, R):
            return R


def random_permutation(rng: random.Random, n: int) -> List[int]:
    order = list(range(n))
    rng.shuffle(order)
    return order


def random_equivalent(rng: random.Random, M: AciMatrix) -> Tuple[AciMatrix, List[list], List[int]]:
    """``R M Q`` for random nonsingular ``R`` and random column permutation ``Q``."""
    R = random_nonsingular(rng, M.field, M.m)
    order = random_permutation(rng, M.n)
    return permute_columns(left_multiply(R, M), order), R, order


# templates ----------------------------------------------------------------------

class _Builder:
    """Fill a grid cell by cell; ``star`` cells get a random constant plus a fresh indeterminate."""

    def __init__(self, rng: random.Random, field: FieldSpec, m: int, n: int):
        self.rng = rng
        self.field = field
        self.m, self.n = m, n
        self.cells = [[AffineForm.zero(field) for _ in range(n)] for _ in range(m)]
        self.registry: List[Indeterminate] = []

    def one(self, i, j):
        self.cells[i][j] = AffineForm.const(self.field, 1)

    def star(self, i, j):
        ident = len(self.registry)
        self.registry.append(Indeterminate(ident, f"s{ident + 1}", j))
        self.cells[i][j] = AffineForm(self.field, _rand_scalar(self.rng, self.field),
                                      [(ident, _rand_scalar(self.rng, self.field, True))])

    def unit_upper(self, row0, col0, size):
        for t in range(size):
            self.one(row0 + t, col0 + t)
            for u in range(t + 1, size):
                self.star(row0 + t, col0 + u)

    def stars(self, rows, cols):
        for i in rows:
            for j in cols:
                self.star(i, j)

    def matrix(self) -> AciMatrix:
        return validate_aci(self.field, self.cells, self.registry, self.m, self.n)


def template_iv(rng: random.Random, field: FieldSpec, m: int, n: int, r: int, s: int) -> AciMatrix:
    """The deficient-rank template with a zero ``r x s`` bottom-left block."""
    b = _Builder(rng, field, m, n)
    top = m - r
    b.unit_upper(0, 0, top)
    b.stars(range(top), range(top, n))
    k = r - (n - s)
    b.stars(range(top, top + k), range(s, n))
    b.unit_upper(top + k, s, n - s)
    return b.matrix()


def template_full(rng: random.Random, field: FieldSpec, m: int, n: int) -> AciMatrix:
    """Full-rank template: ``[U | *]`` when wide, ``U`` when square, ``[*; U]`` when tall."""
    b = _Builder(rng, field, m, n)
    if m <= n:
        b.unit_upper(0, 0, m)
        b.stars(range(m), range(m, n))
    else:
        b.stars(range(m - n), range(n))
        b.unit_upper(m - n, 0, n)
    return b.matrix()


def template_refined(rng: random.Random, field: FieldSpec, mW: int, nW: int, mS: int, mT: int,
                     nT: int) -> AciMatrix:
    """Block upper-triangular template with full-rank templates on the diagonal."""
    m, n = mW + mS + mT, nW + mS + nT
    b = _Builder(rng, field, m, n)
    b.unit_upper(0, 0, mW)
    b.stars(range(mW), range(mW, n))
    b.unit_upper(mW, nW, mS)
    b.stars(range(mW, mW + mS), range(nW + mS, n))
    b.stars(range(mW + mS, m - nT), range(nW + mS, n))
    b.unit_upper(m - nT, nW + mS, nT)
    return b.matrix()


def iv_parameters(rng: random.Random, m: int, n: int) -> Optional[Tuple[int, int, int]]:
    """Random ``(rho, r, s)`` admissible for the deficient template, or ``None``."""
    if min(m, n) < 2:
        return None
    rho = rng.randint(1, min(m, n) - 1)
    lo, hi = max(1, n - rho), min(n, m + n - rho - 1)
    s = rng.randint(lo, hi)
    return rho, m + n - rho - s, s


def refined_parameters(rng: random.Random, max_dim: int = 5) -> Dict[str, int]:
    """Random block sizes with ``W`` wide or empty and ``T`` tall or empty."""
    while True:
        mW = rng.randint(0, 2)
        nW = rng.randint(mW + 1, mW + 2) if mW else rng.choice([0, 0, 1])
        mS = rng.randint(0, 2)
        nT = rng.randint(0, 2)
        mT = rng.randint(nT + 1, nT + 2) if nT else rng.choice([0, 0, 1])
        m, n = mW + mS + mT, nW + mS + nT
        if 1 <= m <= max_dim and 1 <= n <= max_dim and mW + mS + nT >= 1:
            return {"mW": mW, "nW": nW, "mS": mS, "mT": mT, "nT": nT}
