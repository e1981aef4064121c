"""Exact linear algebra on constant matrices over a :class:`FieldSpec`.

Matrices are lists of rows of raw field values.  GF(2) ranks use packed
integer bitsets; everything else is plain Gaussian elimination.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .errors import DimensionMismatch
from .scalars import FieldSpec

Matrix = List[list]


def _reducer(field: FieldSpec):
    p = field.p
    if p is None:
        return (lambda v: v), (lambda a: 1 / a)
    return (lambda v: v % p), (lambda a: pow(a, -1, p))


def identity(field: FieldSpec, n: int) -> Matrix:
    one, zero = field.one, field.zero
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(field: FieldSpec, m: int, n: int) -> Matrix:
    return [[field.zero] * n for _ in range(m)]


def matmul(field: FieldSpec, a: Sequence[Sequence], b: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    red, _ = _reducer(field)
    if ncols is None:
        ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * ncols
        for k, coef in enumerate(row):
            if coef:
                brow = b[k]
                for j in range(ncols):
                    if brow[j]:
                        acc[j] += coef * brow[j]
        out.append([red(v) for v in acc] if field.p is not None else [field.canon(v) for v in acc])
    return out


def rank(field: FieldSpec, rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    if field.p == 2:
        return _gf2_rank([_pack(r) for r in rows])
    if field.p is not None:
        return gfp_rank(rows, field.p)
    return len(rref(field, rows)[1])


def _pack(row) -> int:
    bits = 0
    for j, v in enumerate(row):
        if v:
            bits |= 1 << j
    return bits


def _gf2_rank(work: List[int]) -> int:
    r = 0
    work = list(work)
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        r += 1
        low = pivot & -pivot
        work = [w ^ pivot if w & low else w for w in work]
    return r


def gf2_rank_bits(rows: List[int]) -> int:
    """Rank over GF(2) of rows given as packed integer bitsets."""
    return _gf2_rank(rows)


def gfp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p) of rows of residues; forward elimination only."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    r = 0
    for col in range(len(mat[0])):
        piv = next((k for k, row in enumerate(mat) if row[col]), None)
        if piv is None:
            continue
        prow = mat.pop(piv)
        r += 1
        if not mat:
            break
        inv = pow(prow[col], p - 2, p)
        rest = []
        for row in mat:
            c = row[col]
            if c:
                k = c * inv % p
                row = [(a - k * b) % p for a, b in zip(row, prow)]
                if not any(row):
                    continue
            rest.append(row)
        mat = rest
        if not mat:
            break
    return r


def rref(field: FieldSpec, rows: Sequence[Sequence]):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    red, inv = _reducer(field)
    mat = [list(r) for r in rows]
    if not mat:
        return mat, []
    ncols = len(mat[0])
    pivots = []
    prow = 0
    for col in range(ncols):
        sel = None
        for i in range(prow, len(mat)):
            if mat[i][col]:
                sel = i
                break
        if sel is None:
            continue
        mat[prow], mat[sel] = mat[sel], mat[prow]
        piv_inv = inv(mat[prow][col])
        mat[prow] = [red(v * piv_inv) for v in mat[prow]]
        prow_vals = mat[prow]
        for i in range(len(mat)):
            if i != prow and mat[i][col]:
                f = mat[i][col]
                mat[i] = [red(a - f * b) for a, b in zip(mat[i], prow_vals)]
        pivots.append(col)
        prow += 1
        if prow == len(mat):
            break
    return mat, pivots


def nullspace(field: FieldSpec, rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of ``{v : A v = 0}`` as a list of vectors of length ``ncols``."""
    if not rows:
        return identity(field, ncols)
    red_mat, pivots = rref(field, rows)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(red_mat[i][f])
        basis.append(v)
    return basis


def transpose(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def left_nullspace(field: FieldSpec, rows: Sequence[Sequence], nrows: Optional[int] = None) -> Matrix:
    """Basis of ``{y : y A = 0}``."""
    nrows = len(rows) if nrows is None else nrows
    if nrows == 0:
        return []
    ncols = len(rows[0]) if rows else 0
    if ncols == 0:
        return identity(field, nrows)
    return nullspace(field, transpose(rows), nrows)


def annihilator(field: FieldSpec, vectors: Sequence[Sequence], dim: int) -> Matrix:
    """Basis of the functionals ``y`` with ``y . v = 0`` for every given vector."""
    vectors = [v for v in vectors]
    if not vectors:
        return identity(field, dim)
    return nullspace(field, vectors, dim)


def in_span(field: FieldSpec, basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(field, list(basis) + [list(v)]) == rank(field, basis)


def solve_combination(field: FieldSpec, rows: Sequence[Sequence], target: Sequence) -> Optional[list]:
    """Coefficients ``c`` with ``sum(c[i] * rows[i]) == target``, or ``None``.

    Free coefficients (rows dependent on earlier ones) are set to zero, so
    the answer is the one using the lowest-index rows.
    """
    k = len(rows)
    if k == 0:
        return [] if not any(target) else None
    n = len(target)
    # columns of the system are the given rows; solve A c = target with A = rows^T
    aug = [[rows[i][j] for i in range(k)] + [target[j]] for j in range(n)]
    red_mat, pivots = rref(field, aug)
    if k in pivots:
        return None
    coeffs = [field.zero] * k
    for i, pc in enumerate(pivots):
        coeffs[pc] = red_mat[i][k]
    return coeffs


def inverse(field: FieldSpec, a: Sequence[Sequence]) -> Optional[Matrix]:
    n = len(a)
    if n == 0:
        return []
    aug = [list(row) + e for row, e in zip(a, identity(field, n))]
    red_mat, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in red_mat]


def is_nonsingular(field: FieldSpec, a: Sequence[Sequence]) -> bool:
    n = len(a)
    if any(len(row) != n for row in a):
        return False
    return rank(field, a) == n


def permutation_matrix(field: FieldSpec, perm: Sequence[int]) -> Matrix:
    """Matrix ``Q`` such that column ``k`` of ``M Q`` is column ``perm[k]`` of ``M``."""
    n = len(perm)
    q = zeros(field, n, n)
    for k, src in enumerate(perm):
        q[src][k] = field.one
    return q


def row_permutation_matrix(field: FieldSpec, order: Sequence[int]) -> Matrix:
    """Matrix ``P`` such that row ``k`` of ``P A`` is row ``order[k]`` of ``A``."""
    n = len(order)
    p = zeros(field, n, n)
    for k, src in enumerate(order):
        p[k][src] = field.one
    return p


def block_diag(field: FieldSpec, blocks: Sequence[Sequence[Sequence]]) -> Matrix:
    size = sum(len(b) for b in blocks)
    out = zeros(field, size, size)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out
