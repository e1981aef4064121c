"""Sparse multivariate polynomials over a :class:`FieldSpec`.

A polynomial in ``k`` variables is a dict mapping exponent tuples of length
``k`` to nonzero raw coefficients.  Terms are ordered graded-lexicographically
(total degree first, then the exponent tuple), which is all the exact
division below needs.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

from .errors import DivisionByZero, InternalAssertionFailed
from .scalars import FieldSpec

Monomial = Tuple[int, ...]


def _grlex(mono: Monomial):
    return (sum(mono), mono)


class Poly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldSpec, nvars: int, terms: Dict[Monomial, object] = None):
        self.field = field
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, value) -> "Poly":
        value = field.canon(value)
        return cls(field, nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def affine(cls, field: FieldSpec, nvars: int, constant, linear: Iterable[Tuple[int, object]]) -> "Poly":
        """``constant + sum(coef * x_var)`` from raw values."""
        terms = {}
        if constant:
            terms[(0,) * nvars] = constant
        for var, coef in linear:
            if coef:
                mono = [0] * nvars
                mono[var] = 1
                terms[tuple(mono)] = coef
        return cls(field, nvars, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        out = set()
        for mono in self.terms:
            out.update(i for i, e in enumerate(mono) if e)
        return out

    def leading(self):
        mono = max(self.terms, key=_grlex)
        return mono, self.terms[mono]

    def __sub__(self, other: "Poly") -> "Poly":
        f = self.field
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = f.sub(out.get(mono, f.zero), c)
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Poly(f, self.nvars, out)

    def __add__(self, other: "Poly") -> "Poly":
        f = self.field
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = f.add(out.get(mono, f.zero), c)
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Poly(f, self.nvars, out)

    def __mul__(self, other: "Poly") -> "Poly":
        f = self.field
        out: Dict[Monomial, object] = {}
        p = f.p
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                out[mono] = out.get(mono, 0) + ca * cb
        if p is None:
            return Poly(f, self.nvars, {m: c for m, c in out.items() if c})
        return Poly(f, self.nvars, {m: c % p for m, c in out.items() if c % p})

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient of a division known to leave no remainder.

        Raises :class:`InternalAssertionFailed` if the division is not exact.
        """
        if not divisor:
            raise DivisionByZero("polynomial division by zero")
        f = self.field
        lm, lc = divisor.leading()
        lc_inv = f.inv(lc)
        rem = Poly(f, self.nvars, dict(self.terms))
        quot: Dict[Monomial, object] = {}
        while rem:
            rm, rc = rem.leading()
            qm = tuple(x - y for x, y in zip(rm, lm))
            if any(e < 0 for e in qm):
                raise InternalAssertionFailed("inexact polynomial division")
            qc = f.mul(rc, lc_inv)
            quot[qm] = qc
            step = Poly(f, self.nvars, {tuple(x + y for x, y in zip(m, qm)): f.mul(c, qc)
                                        for m, c in divisor.terms.items()})
            rem = rem - step
        return Poly(f, self.nvars, quot)

    def substitute(self, var: int, value) -> "Poly":
        """Set variable ``var`` to the raw value ``value``."""
        f = self.field
        out: Dict[Monomial, object] = {}
        for mono, c in self.terms.items():
            e = mono[var]
            if e:
                c = f.mul(c, pow(value, e) if f.p is None else pow(value, e, f.p))
                if not c:
                    continue
                mono = mono[:var] + (0,) + mono[var + 1:]
            out[mono] = f.add(out.get(mono, f.zero), c)
            if not out[mono]:
                del out[mono]
        return Poly(f, self.nvars, out)

    def evaluate(self, point) -> object:
        f = self.field
        total = f.zero
        for mono, c in self.terms.items():
            term = c
            for x, e in zip(point, mono):
                if e:
                    term = f.mul(term, x if e == 1 else (pow(x, e) if f.p is None else pow(x, e, f.p)))
            total = f.add(total, term)
        return total

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = []
        for mono in sorted(self.terms, key=_grlex, reverse=True):
            vars_ = "*".join(f"v{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e)
            coef = self.field.format(self.terms[mono])
            parts.append(f"{coef}*{vars_}" if vars_ else coef)
        return "Poly(" + " + ".join(parts) + ")"
