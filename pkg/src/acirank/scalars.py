"""Ground fields: small prime fields GF(p) and the rationals.

Internally every container (affine forms, constant matrices, polynomials)
stores *raw* canonical values: an ``int`` in ``[0, p)`` for GF(p) and a
``fractions.Fraction`` for the rationals.  :class:`Scalar` is the typed
wrapper handed out by the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import DivisionByZero, InfiniteField, MixedFields, UnknownField

MAX_PRIME = 1 << 16

_FIELD_RE = re.compile(r"^\s*gf\s*\(\s*(\d+)\s*\)\s*$", re.IGNORECASE)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field ``GF(p)`` (``p`` set) or the rationals (``p is None``)."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not _is_prime(self.p) or self.p > MAX_PRIME:
                raise UnknownField(f"gf({self.p}): modulus must be a prime <= {MAX_PRIME}")

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the spellings ``gf(p)`` and ``rational``."""
        if text.strip().lower() == "rational":
            return cls(None)
        match = _FIELD_RE.match(text)
        if not match:
            raise UnknownField(f"unknown field {text!r}; expected gf(p) or rational")
        return cls(int(match.group(1)))

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def size(self) -> Optional[int]:
        """Number of elements, ``None`` for the rationals."""
        return self.p

    def __str__(self):
        return "rational" if self.p is None else f"gf({self.p})"

    # raw-value arithmetic -------------------------------------------------

    def canon(self, value) -> Union[int, Fraction]:
        """Canonical raw representative of ``value``."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise MixedFields(f"{value.field} value used in {self}")
            return value.value
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return value.numerator % self.p
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes in {self}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator[int]:
        """Raw elements ``0, 1, ..., p-1``."""
        if self.p is None:
            raise InfiniteField("the rationals cannot be enumerated")
        return iter(range(self.p))

    def small_sequence(self) -> Iterator:
        """Deterministic sequence 0, 1, -1, 2, -2, ... of distinct raw values."""
        yield self.zero
        seen = 1
        k = 1
        while self.p is None or seen < self.p:
            yield self.canon(k)
            seen += 1
            if self.p is None or seen < self.p:
                yield self.canon(-k)
                seen += 1
            k += 1

    def format(self, value) -> str:
        """Canonical string of a raw value: residue or ``p/q``."""
        if self.p is None:
            value = Fraction(value)
            return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
        return str(int(value))

    def parse_value(self, text: str):
        text = text.strip()
        if self.p is None:
            return Fraction(text)
        return self.canon(Fraction(text))

    def scalar(self, value) -> "Scalar":
        return Scalar(self, value)


class Scalar:
    """An element of a :class:`FieldSpec` in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.canon(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MixedFields(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.canon(other)
        return NotImplemented

    def _wrap(self, raw):
        return Scalar(self.field, raw)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.canon(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply ``op`` in ``{"add", "sub", "mul", "div"}`` to two scalars."""
    if a.field != b.field:
        raise MixedFields(f"cannot combine {a.field} and {b.field}")
    fn = {"add": a.field.add, "sub": a.field.sub, "mul": a.field.mul, "div": a.field.div}[op]
    return Scalar(a.field, fn(a.value, b.value))


def enumerate_elements(field: FieldSpec) -> tuple:
    """All elements of a prime field in the order 0, 1, ..., p-1."""
    return tuple(Scalar(field, v) for v in field.elements())
