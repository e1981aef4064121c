"""The ACI-matrix data model.

An ACI-matrix is an ``m x n`` grid of affine forms (constant plus linear
terms) in which every indeterminate lives in exactly one column.  Matrices
are immutable; every operation returns a new value.  Row and column
indices are 0-based throughout the library.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    ColumnSharing,
    DimensionMismatch,
    IndexOutOfRange,
    MissingAssignment,
    UnknownIndeterminate,
)
from .scalars import FieldSpec, Scalar


@dataclass(frozen=True, order=True)
class Indeterminate:
    id: int
    name: str
    owner_column: int


class AffineForm:
    """``constant + sum(coef * x_id)`` with raw field values and no zero coefficients."""

    __slots__ = ("field", "constant", "terms", "_hash")

    def __init__(self, field: FieldSpec, constant=0, terms: Iterable[Tuple[int, object]] = ()):
        self.field = field
        self.constant = field.canon(constant)
        merged: Dict[int, object] = {}
        for ident, coef in terms:
            merged[ident] = field.add(merged.get(ident, field.zero), field.canon(coef))
        self.terms = tuple(sorted((i, c) for i, c in merged.items() if c))
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldSpec, constant, terms: tuple) -> "AffineForm":
        obj = cls.__new__(cls)
        obj.field = field
        obj.constant = constant
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field: FieldSpec) -> "AffineForm":
        return cls._raw(field, field.zero, ())

    @classmethod
    def const(cls, field: FieldSpec, value) -> "AffineForm":
        return cls._raw(field, field.canon(value), ())

    @classmethod
    def var(cls, field: FieldSpec, ident: int, coef=1, constant=0) -> "AffineForm":
        return cls(field, constant, [(ident, coef)])

    def is_zero(self) -> bool:
        return not self.constant and not self.terms

    def is_constant(self) -> bool:
        return not self.terms

    def ids(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.terms)

    def coefficient(self, ident: int):
        for i, c in self.terms:
            if i == ident:
                return c
        return self.field.zero

    @property
    def constant_scalar(self) -> Scalar:
        return Scalar(self.field, self.constant)

    def evaluate(self, values: Mapping[int, object]):
        f = self.field
        total = self.constant
        for ident, coef in self.terms:
            try:
                x = values[ident]
            except KeyError:
                raise MissingAssignment(f"no value for indeterminate id {ident}") from None
            total = f.add(total, f.mul(coef, x))
        return total

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return combine(self.field, [(self.field.one, self), (self.field.one, other)])

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        f = self.field
        return combine(f, [(f.one, self), (f.neg(f.one), other)])

    def scale(self, coef) -> "AffineForm":
        return combine(self.field, [(self.field.canon(coef), self)])

    def __eq__(self, other):
        if not isinstance(other, AffineForm):
            return NotImplemented
        return self.field == other.field and self.constant == other.constant and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.constant, self.terms))
        return self._hash

    def __repr__(self):
        return f"AffineForm({self.field.format(self.constant)}, {self.terms})"


def combine(field: FieldSpec, pairs: Iterable[Tuple[object, AffineForm]]) -> AffineForm:
    """``sum(coef * form)`` for raw coefficients."""
    const = field.zero
    acc: Dict[int, object] = {}
    for coef, form in pairs:
        if not coef:
            continue
        if form.constant:
            const = field.add(const, field.mul(coef, form.constant))
        for ident, c in form.terms:
            acc[ident] = field.add(acc.get(ident, field.zero), field.mul(coef, c))
    return AffineForm._raw(field, const, tuple(sorted((i, c) for i, c in acc.items() if c)))


class ShapeTag(str, Enum):
    WIDE = "wide"
    TALL = "tall"
    SQUARE = "square"


@dataclass(frozen=True)
class Shape:
    tag: ShapeTag
    degenerate: bool
    void: bool

    def __str__(self):
        if self.void:
            return "void"
        return f"{self.tag.value} degenerate" if self.degenerate else self.tag.value


@dataclass(frozen=True)
class Completion:
    """Total assignment ``id -> value``; values may be raw or :class:`Scalar`."""

    assignment: Mapping[int, object] = dc_field(default_factory=dict)

    def raw(self, field: FieldSpec) -> Dict[int, object]:
        return {i: field.canon(v) for i, v in self.assignment.items()}

    def by_name(self, matrix: "AciMatrix") -> Dict[str, str]:
        vals = self.raw(matrix.field)
        return {ind.name: matrix.field.format(vals.get(ind.id, 0)) for ind in matrix.registry}

    def __hash__(self):
        return hash(tuple(sorted(self.assignment.items())))


class ColumnSelector:
    """A column subset ``F`` together with the permutation that moves it to the front.

    ``order[k]`` is the original column shown at position ``k``; ``sigma`` is
    the inverse map, original column to new position.
    """

    __slots__ = ("F", "n", "order", "sigma")

    def __init__(self, F: Iterable[int], n: int):
        cols = sorted(set(F))
        for j in cols:
            if not 0 <= j < n:
                raise IndexOutOfRange(f"column {j} outside 0..{n - 1}")
        self.F = tuple(cols)
        self.n = n
        chosen = set(cols)
        self.order = tuple(cols + [j for j in range(n) if j not in chosen])
        sigma = [0] * n
        for k, j in enumerate(self.order):
            sigma[j] = k
        self.sigma = tuple(sigma)

    def Q(self, field: FieldSpec):
        return linalg.permutation_matrix(field, self.order)

    def __repr__(self):
        return f"ColumnSelector(F={list(self.F)}, n={self.n})"


class AciMatrix:
    """Immutable ``m x n`` ACI-matrix over ``field``.

    ``entries`` is a tuple of row tuples of :class:`AffineForm`; ``registry``
    lists every declared indeterminate sorted by id.  The registry is kept
    through row operations even if an indeterminate cancels out, so that
    completions of ``M`` are also completions of ``R M Q``.
    """

    __slots__ = ("field", "m", "n", "entries", "registry", "name", "_hash", "_by_id", "_cache")

    def __init__(self, field: FieldSpec, m: int, n: int, entries, registry: Iterable[Indeterminate] = (),
                 name: Optional[str] = None):
        self.field = field
        self.m = m
        self.n = n
        self.entries = tuple(tuple(row) for row in entries)
        self.registry = tuple(sorted(registry, key=lambda ind: ind.id))
        self.name = name
        self._hash = None
        self._by_id = None
        self._cache = {}

    # construction helpers ---------------------------------------------------

    @classmethod
    def constant(cls, field: FieldSpec, rows: Sequence[Sequence], m: Optional[int] = None,
                 n: Optional[int] = None) -> "AciMatrix":
        m = len(rows) if m is None else m
        n = (len(rows[0]) if rows else 0) if n is None else n
        entries = [[AffineForm.const(field, v) for v in row] for row in rows]
        return cls(field, m, n, entries)

    def with_entries(self, entries, registry=None) -> "AciMatrix":
        return AciMatrix(self.field, len(entries), self.n, entries,
                         self.registry if registry is None else registry, self.name)

    # accessors -------------------------------------------------------------

    @property
    def by_id(self) -> Dict[int, Indeterminate]:
        if self._by_id is None:
            self._by_id = {ind.id: ind for ind in self.registry}
        return self._by_id

    def owned(self, j: int) -> List[int]:
        return [ind.id for ind in self.registry if ind.owner_column == j]

    def active_ids(self) -> Tuple[int, ...]:
        """Ids that actually occur in some entry, ascending."""
        if "active" not in self._cache:
            seen = set()
            for row in self.entries:
                for form in row:
                    seen.update(form.ids())
            self._cache["active"] = tuple(sorted(seen))
        return self._cache["active"]

    def __getitem__(self, ij) -> AffineForm:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[AffineForm, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[AffineForm, ...]:
        return tuple(row[j] for row in self.entries)

    def is_constant(self) -> bool:
        return not self.active_ids()

    def constant_part(self):
        return [[form.constant for form in row] for row in self.entries]

    def name_of(self, ident: int) -> str:
        return self.by_id[ident].name

    def to_strings(self) -> List[List[str]]:
        return [[format_form(form, self) for form in row] for row in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "AciMatrix":
        """Rows and columns in the given orders; the registry follows the kept columns."""
        for i in rows:
            if not 0 <= i < self.m:
                raise IndexOutOfRange(f"row {i} outside 0..{self.m - 1}")
        for j in cols:
            if not 0 <= j < self.n:
                raise IndexOutOfRange(f"column {j} outside 0..{self.n - 1}")
        where = {j: k for k, j in enumerate(cols)}
        registry = [Indeterminate(ind.id, ind.name, where[ind.owner_column])
                    for ind in self.registry if ind.owner_column in where]
        entries = [[self.entries[i][j] for j in cols] for i in rows]
        return AciMatrix(self.field, len(rows), len(cols), entries, registry)

    def __eq__(self, other):
        if not isinstance(other, AciMatrix):
            return NotImplemented
        return (self.field == other.field and self.m == other.m and self.n == other.n
                and self.entries == other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.m, self.n, self.entries))
        return self._hash

    def __repr__(self):
        grid = "; ".join(", ".join(row) for row in self.to_strings())
        return f"AciMatrix({self.field}, {self.m}x{self.n}, [{grid}])"


# validation ----------------------------------------------------------------

def validate_aci(field: FieldSpec, grid: Sequence[Sequence[AffineForm]], registry: Iterable[Indeterminate] = (),
                 m: Optional[int] = None, n: Optional[int] = None, name: Optional[str] = None) -> AciMatrix:
    """Check a grid of affine forms against the ACI rules and wrap it.

    ``m``/``n`` are needed only for degenerate shapes with no entries.
    """
    m = len(grid) if m is None else m
    if n is None:
        n = len(grid[0]) if grid else 0
    if len(grid) != m or any(len(row) != n for row in grid):
        raise DimensionMismatch(f"grid is not {m}x{n}")
    declared = {ind.id: ind for ind in registry}
    if len({ind.name for ind in declared.values()}) != len(declared):
        raise ColumnSharing("two indeterminates share a display name")
    for ind in declared.values():
        if not 0 <= ind.owner_column < n:
            raise IndexOutOfRange(f"{ind.name} owned by missing column {ind.owner_column}")
    seen_col: Dict[int, int] = {}
    for i, row in enumerate(grid):
        for j, form in enumerate(row):
            if form.field != field:
                raise DimensionMismatch(f"entry ({i},{j}) is over {form.field}, matrix over {field}")
            for ident in form.ids():
                if ident not in declared:
                    raise UnknownIndeterminate(f"entry ({i},{j}) uses undeclared id {ident}")
                col = seen_col.setdefault(ident, j)
                if col != j or declared[ident].owner_column != j:
                    raise ColumnSharing(f"{declared[ident].name} appears in columns {col} and {j}")
    return AciMatrix(field, m, n, grid, declared.values(), name)


def shape_of(M: AciMatrix) -> Shape:
    if M.m == M.n:
        return Shape(ShapeTag.SQUARE, M.m == 0, M.m == 0)
    if M.n > M.m:
        return Shape(ShapeTag.WIDE, M.m == 0, False)
    return Shape(ShapeTag.TALL, M.n == 0, False)


def complete(M: AciMatrix, c) -> List[list]:
    """Constant matrix (raw values) obtained by substituting the completion ``c``."""
    values = c.raw(M.field) if isinstance(c, Completion) else {i: M.field.canon(v) for i, v in c.items()}
    missing = [ind.name for ind in M.registry if ind.id not in values]
    if missing:
        raise MissingAssignment(f"completion misses {', '.join(missing)}")
    return [[form.evaluate(values) for form in row] for row in M.entries]


def zero_completion(M: AciMatrix) -> Completion:
    return Completion({ind.id: M.field.zero for ind in M.registry})


# equivalence moves -----------------------------------------------------------

def left_multiply(R: Sequence[Sequence], M: AciMatrix) -> AciMatrix:
    """``R M`` for a constant matrix ``R`` (raw values or scalars)."""
    f = M.field
    rows = len(R)
    if any(len(r) != M.m for r in R):
        raise DimensionMismatch(f"R has {rows} rows of the wrong length for {M.m} rows of M")
    R = [[f.canon(v) for v in r] for r in R]
    entries = []
    for i in range(rows):
        pairs = [(R[i][k], M.entries[k]) for k in range(M.m) if R[i][k]]
        entries.append([combine(f, [(c, row[j]) for c, row in pairs]) for j in range(M.n)])
    return AciMatrix(f, rows, M.n, entries, M.registry, M.name)


def permute_columns(M: AciMatrix, sel) -> AciMatrix:
    """``M Q``; ``sel`` is a :class:`ColumnSelector` or an explicit column order."""
    if isinstance(sel, ColumnSelector):
        if sel.n != M.n:
            raise IndexOutOfRange(f"selector for {sel.n} columns applied to {M.n}")
        order = sel.order
    else:
        order = tuple(sel)
        if sorted(order) != list(range(M.n)):
            raise IndexOutOfRange(f"{list(order)} is not a permutation of {M.n} columns")
    out = M.submatrix(range(M.m), order)
    return AciMatrix(M.field, M.m, M.n, out.entries, out.registry, M.name)


def permute_rows(M: AciMatrix, order: Sequence[int]) -> AciMatrix:
    return AciMatrix(M.field, M.m, M.n, [M.entries[i] for i in order], M.registry, M.name)


def equivalent(M: AciMatrix, R: Sequence[Sequence], order: Sequence[int]) -> AciMatrix:
    """``R M Q`` with ``Q`` the permutation given by a column order."""
    return permute_columns(left_multiply(R, M), order)


def compose_block(A: AciMatrix, B: AciMatrix, C: AciMatrix) -> AciMatrix:
    """``[[A, B], [0, C]]`` with indeterminates matched by display name."""
    if A.m != B.m or B.n != C.n:
        raise DimensionMismatch(f"blocks {A.m}x{A.n}, {B.m}x{B.n}, {C.m}x{C.n} do not fit")
    if len({A.field, B.field, C.field}) != 1:
        raise DimensionMismatch("blocks over different fields")
    f = A.field
    m, n = A.m + C.m, A.n + B.n
    owner: Dict[str, int] = {}

    def claim(name, col):
        prev = owner.setdefault(name, col)
        if prev != col:
            raise ColumnSharing(f"{name} appears in columns {prev} and {col}")

    for block, col_off in ((A, 0), (B, A.n), (C, A.n)):
        for ind in block.registry:
            claim(ind.name, ind.owner_column + col_off)

    ids: Dict[str, int] = {}

    def rename(block: AciMatrix, form: AffineForm) -> AffineForm:
        terms = []
        for ident, coef in form.terms:
            nm = block.name_of(ident)
            terms.append((ids.setdefault(nm, len(ids)), coef))
        return AffineForm(f, form.constant, terms)

    entries = []
    for i in range(A.m):
        entries.append([rename(A, e) for e in A.entries[i]] + [rename(B, e) for e in B.entries[i]])
    for i in range(C.m):
        entries.append([AffineForm.zero(f)] * A.n + [rename(C, e) for e in C.entries[i]])
    for name in owner:
        ids.setdefault(name, len(ids))
    registry = [Indeterminate(ids[nm], nm, owner[nm]) for nm in owner]
    return validate_aci(f, entries, registry, m, n)


# zero blocks and the row space -----------------------------------------------

class ZeroBlock(str, Enum):
    BIG = "Big"
    MEDIUM = "Medium"
    NEITHER = "Neither"


def bottom_left_is_zero(M: AciMatrix, r: int, s: int) -> bool:
    return all(M.entries[i][j].is_zero() for i in range(M.m - r, M.m) for j in range(s))


def classify_zero_block(M: AciMatrix, r: int, s: int) -> ZeroBlock:
    if not (0 <= r <= M.m and 0 <= s <= M.n):
        raise IndexOutOfRange(f"block {r}x{s} does not fit in {M.m}x{M.n}")
    if not bottom_left_is_zero(M, r, s):
        return ZeroBlock.NEITHER
    big = max(M.m, M.n)
    if r + s > big:
        return ZeroBlock.BIG
    if r + s == big:
        return ZeroBlock.MEDIUM
    return ZeroBlock.NEITHER


def _scope_columns(M: AciMatrix, restrict_to) -> Sequence[int]:
    if restrict_to is None:
        return range(M.n)
    if isinstance(restrict_to, ColumnSelector):
        return restrict_to.F
    return sorted(set(restrict_to))


def row_coefficient_matrix(M: AciMatrix, restrict_to=None) -> List[list]:
    """Coordinates of each row in the basis ``1, x_a, x_b, ...`` of every scope column."""
    cols = _scope_columns(M, restrict_to)
    layout = [(j, M.owned(j)) for j in cols]
    out = []
    for row in M.entries:
        vec = []
        for j, owned in layout:
            form = row[j]
            vec.append(form.constant)
            coefs = dict(form.terms)
            vec.extend(coefs.get(ident, M.field.zero) for ident in owned)
        out.append(vec)
    return out


def rows_linearly_independent(M: AciMatrix, restrict_to=None) -> bool:
    if M.m == 0:
        return True
    return linalg.rank(M.field, row_coefficient_matrix(M, restrict_to)) == M.m


def column_space(M: AciMatrix, j: int):
    """``(c, V, ids)``: constant column, one coefficient column per owned id, and the ids."""
    owned = M.owned(j)
    c = [M.entries[i][j].constant for i in range(M.m)]
    V = [[M.entries[i][j].coefficient(ident) for i in range(M.m)] for ident in owned]
    return c, V, owned


# text ------------------------------------------------------------------------

def format_coefficient(field: FieldSpec, value) -> str:
    return field.format(value)


def format_form(form: AffineForm, M: Optional[AciMatrix] = None, names: Optional[Mapping[int, str]] = None) -> str:
    """Canonical text such as ``x-1``, ``-z+1``, ``3z-5`` or ``1/2*x``."""
    f = form.field
    if names is None:
        names = {ind.id: ind.name for ind in M.registry} if M is not None else {}
    parts: List[str] = []
    for ident, coef in form.terms:
        name = names.get(ident, f"x_{ident}")
        negative = f.p is None and coef < 0
        mag = -coef if negative else coef
        if mag == 1:
            body = name
        else:
            text = f.format(mag)
            body = f"{text}*{name}" if "/" in text else f"{text}{name}"
        parts.append(("-" if negative else "+") + body)
    const = form.constant
    if const or not parts:
        negative = f.p is None and const < 0
        parts.append(("-" if negative else "+") + f.format(-const if negative else const))
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text
