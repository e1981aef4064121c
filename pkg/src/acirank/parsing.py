"""Entry expressions and the ``.aci`` matrix file format.

Grammar of an entry (whitespace is ignored)::

    expression  := sign? term (('+' | '-') term)*
    term        := coefficient | coefficient? '*'? identifier
    coefficient := integer | integer '/' integer      (fractions: rationals only)
    identifier  := letter (letter | digit | '_')*
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, MutableMapping, Optional, Sequence, Tuple

from .aci import AciMatrix, AffineForm, Indeterminate, format_form, validate_aci
from .errors import ColumnSharing, DimensionMismatch, EntrySyntaxError, NonAffine
from .scalars import FieldSpec

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            bad = len(text) - len(text[pos:].lstrip())
            raise EntrySyntaxError(f"unexpected character {text[bad]!r} at {bad} in {text!r}", text, bad,
                                   ("integer", "identifier", "+", "-"))
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _EntryParser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise EntrySyntaxError(f"expected {' or '.join(expected)} at {pos} in {self.text!r}, found {found}",
                               self.text, pos, expected)

    def is_op(self, ch):
        kind, value, _ = self.peek()
        return kind == "op" and value == ch

    def parse(self):
        terms = []
        sign = 1
        if self.is_op("+") or self.is_op("-"):
            sign = -1 if self.take()[1] == "-" else 1
        terms.append(self.term(sign))
        while self.is_op("+") or self.is_op("-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append(self.term(sign))
        if self.peek()[0] != "end":
            kind, value, pos = self.peek()
            if kind == "ident" or value in ("^", "("):
                raise NonAffine(f"{self.text!r} is not affine (term of degree two or more at {pos})")
            self.fail(("'+'", "'-'", "end of input"))
        return terms

    def coefficient(self) -> Fraction:
        _, num, pos = self.take()
        value = Fraction(int(num))
        if self.is_op("/"):
            if self.field.is_finite:
                self.fail(("'+'", "'-'", "identifier", "end of input"))
            self.take()
            if self.peek()[0] != "int":
                self.fail(("integer",))
            den = int(self.take()[1])
            if den == 0:
                raise EntrySyntaxError(f"zero denominator at {pos} in {self.text!r}", self.text, pos, ("integer",))
            value /= den
        return value

    def term(self, sign: int):
        kind = self.peek()[0]
        coef = Fraction(1)
        has_coef = False
        if kind == "int":
            coef = self.coefficient()
            has_coef = True
            if self.is_op("*"):
                self.take()
                if self.peek()[0] != "ident":
                    self.fail(("identifier",))
            elif self.peek()[0] != "ident":
                return sign * coef, None
        if self.peek()[0] != "ident":
            self.fail(("integer", "identifier") if not has_coef else ("identifier",))
        name = self.take()[1]
        nxt = self.tokens[self.i + 1] if self.i + 1 < len(self.tokens) else ("end", "", 0)
        if (self.is_op("^") or self.peek()[0] == "ident" or self.is_op("(")
                or (self.is_op("*") and nxt[0] in ("ident", "op") and nxt[1] not in "+-")):
            raise NonAffine(f"{self.text!r} is not affine (product or power involving {name})")
        return sign * coef, name


def parse_terms(text: str, field: FieldSpec) -> Tuple[object, List[Tuple[str, object]]]:
    """Constant and ``(name, coefficient)`` pairs of an entry, as raw values."""
    constant = field.zero
    coefs: Dict[str, object] = {}
    for coef, name in _EntryParser(text, field).parse():
        value = field.canon(coef)
        if name is None:
            constant = field.add(constant, value)
        else:
            coefs[name] = field.add(coefs.get(name, field.zero), value)
    return constant, list(coefs.items())


def parse_entry(text: str, field: FieldSpec, names: Optional[MutableMapping[str, int]] = None) -> AffineForm:
    """Parse one entry; unseen identifiers are registered in ``names`` with fresh ids."""
    names = {} if names is None else names
    constant, pairs = parse_terms(text, field)
    terms = []
    for name, coef in pairs:
        if name not in names:
            names[name] = len(names)
        terms.append((names[name], coef))
    return AffineForm(field, constant, terms)


def print_entry(form: AffineForm, names: Dict[int, str]) -> str:
    return format_form(form, names=names)


def matrix_from_rows(rows: Sequence[Sequence], field: FieldSpec, m: Optional[int] = None, n: Optional[int] = None,
                     name: Optional[str] = None) -> AciMatrix:
    """Build an ACI-matrix from entry strings (or numbers), ids by first appearance."""
    names: Dict[str, int] = {}
    owner: Dict[str, int] = {}
    grid = []
    for i, row in enumerate(rows):
        out = []
        for j, text in enumerate(row):
            constant, pairs = parse_terms(str(text), field)
            terms = []
            for nm, coef in pairs:
                col = owner.setdefault(nm, j)
                if col != j:
                    raise ColumnSharing(f"{nm} appears in columns {col + 1} and {j + 1} (row {i + 1})")
                if nm not in names:
                    names[nm] = len(names)
                terms.append((names[nm], coef))
            out.append(AffineForm(field, constant, terms))
        grid.append(out)
    m = len(rows) if m is None else m
    if n is None:
        n = len(rows[0]) if rows else 0
    if not rows and n == 0:
        grid = [[] for _ in range(m)]
    lengths = {len(r) for r in rows}
    if len(lengths) > 1:
        raise DimensionMismatch(f"rows have different lengths {sorted(lengths)}")
    registry = [Indeterminate(names[nm], nm, owner[nm]) for nm in names]
    return validate_aci(field, grid, registry, m, n, name)


def matrix(rows: Sequence[Sequence], field: Optional[FieldSpec] = None, **kw) -> AciMatrix:
    """Shorthand for :func:`matrix_from_rows`, defaulting to the rationals."""
    return matrix_from_rows(rows, field or FieldSpec.rational(), **kw)


# documents -------------------------------------------------------------------

@dataclass
class MatrixDocument:
    field: FieldSpec
    rows: List[List[str]] = dc_field(default_factory=list)
    name: Optional[str] = None
    dims: Optional[Tuple[int, int]] = None

    def to_matrix(self, field: Optional[FieldSpec] = None) -> AciMatrix:
        f = field or self.field
        if self.dims is not None:
            m, n = self.dims
            if self.rows and (len(self.rows) != m or any(len(r) != n for r in self.rows)):
                raise DimensionMismatch(f"dims {m} x {n} disagree with the entry lines")
            return matrix_from_rows(self.rows, f, m=m, n=n, name=self.name)
        return matrix_from_rows(self.rows, f, name=self.name)


_DIMS = re.compile(r"^\s*(\d+)\s*x\s*(\d+)\s*$", re.IGNORECASE)


class DocumentError(EntrySyntaxError):
    """A malformed ``.aci`` file (line-level problem)."""


def parse_document(text: str) -> MatrixDocument:
    field = None
    name = None
    dims = None
    rows: List[List[str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if sep and key in ("field", "name", "dims"):
            if key == "field":
                if field is not None:
                    raise DocumentError(f"line {lineno}: field declared twice", raw, 0, ())
                field = FieldSpec.parse(rest)
            elif key == "name":
                name = rest.strip()
            else:
                match = _DIMS.match(rest)
                if not match:
                    raise DocumentError(f"line {lineno}: expected 'dims: m x n'", raw, 0, ("m x n",))
                dims = (int(match.group(1)), int(match.group(2)))
            continue
        if field is None:
            raise DocumentError(f"line {lineno}: the first line must be 'field: gf(p)' or 'field: rational'",
                                raw, 0, ("field:",))
        rows.append([cell.strip() for cell in line.split(",")])
    if field is None:
        raise DocumentError("missing 'field:' line", text, 0, ("field:",))
    if not rows and dims is None:
        dims = (0, 0)
    return MatrixDocument(field, rows, name, dims)


def load_matrix(path: str, field: Optional[FieldSpec] = None) -> AciMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read()).to_matrix(field)


def dump_document(M: AciMatrix, name: Optional[str] = None) -> str:
    lines = [f"field: {M.field}"]
    if name or M.name:
        lines.append(f"name: {name or M.name}")
    if M.m == 0 or M.n == 0:
        lines.append(f"dims: {M.m} x {M.n}")
    for row in M.to_strings():
        lines.append(", ".join(row))
    return "\n".join(lines) + "\n"
