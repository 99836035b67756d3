"""Exact scalar fields: the rationals and prime fields F_p.

A :class:`FieldSpec` names the field and knows how to do arithmetic on *raw*
scalars.  Raw scalars are what the matrix and polynomial containers store:

* over Q, a ``gmpy2.mpq`` (always reduced, denominator positive);
* over F_p, a Python ``int`` in ``range(p)``.

Both forms are canonical, so equality of raw scalars is equality of field
elements.  :class:`FieldElement` pairs a raw scalar with its field for use at
API boundaries.

    >>> F5 = FieldSpec.prime_field(5)
    >>> fe_canonicalize(3, 2, F5)
    FieldElement(F_5, 4)
    >>> fe_inverse(fe_canonicalize(1, 2, QQ))
    FieldElement(Q, 2)
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from gmpy2 import mpq, mpz

from .errors import (DivisionByZero, FieldMismatch, InputError,
                     NonInvertibleModP, ZeroDenominator)

__all__ = ["FieldKind", "FieldSpec", "FieldElement", "QQ", "GF",
           "fe_canonicalize", "fe_inverse", "is_prime"]

MAX_PRIME = 2 ** 31

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def is_prime(n: int) -> bool:
    """Trial division; fine for the word-sized moduli used here."""
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


class FieldKind(enum.Enum):
    RATIONALS = "Rationals"
    PRIME_FIELD = "PrimeField"


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.p is not None:
                raise InputError("the rational field takes no modulus")
        else:
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise InputError(f"modulus {self.p!r} is not a prime")
            if self.p >= MAX_PRIME:
                raise InputError(f"modulus {self.p} is not below 2^31")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME_FIELD, p)

    @property
    def is_rational(self) -> bool:
        return self.kind is FieldKind.RATIONALS

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return "Q" if self.is_rational else f"F_{self.p}"

    def __repr__(self):
        return f"FieldSpec({self})"

    def to_json(self) -> dict:
        if self.is_rational:
            return {"kind": self.kind.value}
        return {"kind": self.kind.value, "p": self.p}

    # -- raw scalar arithmetic ------------------------------------------

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    def canonical(self, num: int, den: int = 1):
        """Raw scalar equal to ``num/den``."""
        if den == 0:
            raise ZeroDenominator("zero denominator")
        if self.p is None:
            return mpq(int(num), int(den))
        p = self.p
        den %= p
        if den == 0:
            raise NonInvertibleModP(f"denominator is divisible by {p}")
        return int(num) * pow(int(den), -1, p) % p

    def convert(self, x: Any):
        """Coerce ints, fractions, strings or field elements to a raw scalar."""
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise FieldMismatch(f"element of {x.spec} used over {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise InputError("booleans are not field scalars")
        if isinstance(x, (int, type(mpz(0)))):
            return self.canonical(int(x))
        if isinstance(x, (Fraction, type(mpq(0)))):
            return self.canonical(int(x.numerator), int(x.denominator))
        raise InputError(f"cannot interpret {x!r} as a scalar of {self}")

    def reduce(self, x):
        """Bring the result of native ``+ - *`` back to canonical form."""
        return x % self.p if self.p is not None else x

    def add(self, x, y):
        return x + y if self.p is None else (x + y) % self.p

    def sub(self, x, y):
        return x - y if self.p is None else (x - y) % self.p

    def mul(self, x, y):
        return x * y if self.p is None else (x * y) % self.p

    def neg(self, x):
        return -x if self.p is None else (-x) % self.p

    def inv(self, x):
        if not x:
            raise DivisionByZero("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def parse(self, s: str):
        m = _RATIONAL_RE.match(s)
        if not m:
            raise InputError(f"malformed scalar {s!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        return self.canonical(num, den)

    def to_str(self, x) -> str:
        if self.p is not None:
            return str(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def element(self, x) -> "FieldElement":
        return FieldElement(self, self.convert(x))


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime_field(p)


@dataclass(frozen=True)
class FieldElement:
    """A scalar tagged with its field; immutable, compared structurally."""

    spec: FieldSpec
    value: Any

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other.value
        return self.spec.convert(other)

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __bool__(self):
        return bool(self.value)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __str__(self):
        return self.spec.to_str(self.value)

    def __repr__(self):
        return f"FieldElement({self.spec}, {self})"


def fe_canonicalize(raw_numerator: int, raw_denominator: int,
                    spec: FieldSpec) -> FieldElement:
    return FieldElement(spec, spec.canonical(raw_numerator, raw_denominator))


def fe_inverse(x: FieldElement) -> FieldElement:
    return x.inverse()
