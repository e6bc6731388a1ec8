"""Exact scalar arithmetic over the rationals and prime fields GF(p).

A :class:`Field` operates on *raw* values: :class:`fractions.Fraction` for
``QQ`` and plain ``int`` residues in ``[0, p)`` for ``GF(p)``.  Matrices store
raw values and delegate to their field.  :class:`Scalar` wraps a raw value
together with its field for standalone use; mixing fields raises
:class:`FieldMismatch`.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, FieldMismatch, InfiniteField, ParseError

MAX_PRIME = 1 << 16

_INT_RE = re.compile(r"[+-]?\d+\Z")
_RAT_RE = re.compile(r"([+-]?\d+)/(\d+)\Z")


class Field:
    """Common interface; see :class:`RationalField` and :class:`PrimeField`."""

    characteristic: int
    is_finite: bool

    def convert(self, x):
        raise NotImplementedError

    # Row helpers used by elimination and products.  ``combine`` returns
    # ``xs - c * ys`` elementwise.
    def combine(self, xs, c, ys):
        raise NotImplementedError

    def scale(self, c, xs):
        raise NotImplementedError

    def dot(self, xs, ys):
        raise NotImplementedError

    def elements(self) -> tuple:
        raise InfiniteField(f"{self} has infinitely many elements")

    def __call__(self, x) -> Scalar:
        return Scalar(self, self.convert(x))


class RationalField(Field):
    characteristic = 0
    is_finite = False
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x):
        if isinstance(x, Scalar):
            if x.field is not self:
                raise FieldMismatch(f"cannot read {x.field} element as {self}")
            return x.value
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to a rational")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero")
        return a / b

    def combine(self, xs, c, ys):
        return [x - c * y for x, y in zip(xs, ys)]

    def scale(self, c, xs):
        return [c * x for x in xs]

    def dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys), Fraction(0))

    def parse(self, text: str):
        if _INT_RE.match(text):
            return Fraction(int(text))
        m = _RAT_RE.match(text)
        if m:
            den = int(m.group(2))
            if den == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return Fraction(int(m.group(1)), den)
        raise ParseError(f"not a rational literal: {text!r}")

    def format(self, a) -> str:
        return str(a)

    def header(self) -> str:
        return "field Q"

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


class PrimeField(Field):
    """GF(p) for a prime ``p < 2**16``; construct through :func:`GF`."""

    is_finite = True
    zero = 0
    one = 1

    def __init__(self, p: int):
        self.p = p
        self.characteristic = p

    def convert(self, x):
        if isinstance(x, Scalar):
            if x.field is not self:
                raise FieldMismatch(f"cannot read {x.field} element as {self}")
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def combine(self, xs, c, ys):
        p = self.p
        return [(x - c * y) % p for x, y in zip(xs, ys)]

    def scale(self, c, xs):
        p = self.p
        return [c * x % p for x in xs]

    def dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys)) % self.p

    def elements(self) -> tuple:
        return tuple(range(self.p))

    def parse(self, text: str):
        # Residues are reduced on read; a/b is accepted as a * b^-1.
        if _INT_RE.match(text):
            return int(text) % self.p
        m = _RAT_RE.match(text)
        if m:
            den = int(m.group(2)) % self.p
            if den == 0:
                raise ParseError(f"denominator of {text!r} vanishes mod {self.p}")
            return self.div(int(m.group(1)) % self.p, den)
        raise ParseError(f"not a GF({self.p}) literal: {text!r}")

    def format(self, a) -> str:
        return str(a)

    def header(self) -> str:
        return f"field GF {self.p}"

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Return the (cached, hence identity-comparable) prime field GF(p)."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"GF(p) requires a prime modulus, got {p!r}")
    if p >= MAX_PRIME:
        raise ValueError(f"modulus {p} exceeds the supported bound 2**16")
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``GF 7``, ``GF7`` or ``GF:7``."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\s*[:(]?\s*(\d+)\s*\)?", t)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown field {text!r}")


@dataclass(frozen=True)
class Scalar:
    """An element of a specific field; arithmetic across fields is rejected."""

    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.convert(other)
        return NotImplemented

    def _wrap(self, v):
        return Scalar(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> Scalar:
        return self._wrap(self.field.inv(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.convert(other)
        return NotImplemented

    def __hash__(self):
        return hash((repr(self.field), self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field!r}({self})"


_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply ``op`` (one of add, sub, mul, div) to two scalars of one field."""
    if a.field is not b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return _OPS[op](a, b)


def field_elements(field: Field) -> tuple[Scalar, ...]:
    """All elements 0, 1, ..., p-1 of a prime field, in that order."""
    return tuple(Scalar(field, v) for v in field.elements())

