"""Truncated power series in a prime polynomial ``p``.

An element of ``F[t]/(p^N)`` is written uniquely as ``sum_{j<N} f_j p^j``
with every digit ``f_j`` of degree below ``deg p``.  Digits come from
repeated Euclidean division by ``p``.
"""
from __future__ import annotations

from typing import Sequence, Tuple

from .errors import (InputError, LevelTooHigh, NotInRp, NotSquare, PrimeMismatch,
                     SizeMismatch, TruncationTooShort)
from .factor import poly_factor
from .field import FieldSpec
from .matrix import Mat
from .modstruct import primary_exponent
from .poly import Poly, poly_eval_matrix, poly_ext_gcd

__all__ = ["TruncatedPAdic", "padic_arith", "embed_rational", "project", "act_on_module"]


def _check_prime(p: Poly):
    if p.degree is None or p.degree < 1 or not p.is_monic():
        raise InputError(f"{p} is not a monic polynomial of positive degree")
    fac = poly_factor(p)
    if len(fac.factors) != 1 or fac.factors[0][1] != 1:
        raise InputError(f"{p} is not irreducible")


class TruncatedPAdic:
    """``sum_{j<N} digits[j] * p^j`` modulo ``p^N``."""

    __slots__ = ("p", "digits")

    def __init__(self, p: Poly, digits: Sequence[Poly], check: bool = True):
        digits = tuple(digits)
        if check:
            _check_prime(p)
            if not digits:
                raise InputError("truncation level must be at least 1")
            for d in digits:
                if d.spec != p.spec:
                    raise InputError("digit over a different field")
                if not d.is_zero() and d.degree >= p.degree:
                    raise InputError(f"digit {d} has degree >= deg p")
        self.p = p
        self.digits: Tuple[Poly, ...] = digits

    @classmethod
    def from_poly(cls, f: Poly, p: Poly, N: int) -> "TruncatedPAdic":
        """Digits of ``f mod p^N``."""
        _check_prime(p)
        if N < 1:
            raise InputError("truncation level must be at least 1")
        digits = []
        for _ in range(N):
            f, r = divmod(f, p)
            digits.append(r)
        return cls(p, digits, check=False)

    @property
    def N(self) -> int:
        return len(self.digits)

    @property
    def spec(self) -> FieldSpec:
        return self.p.spec

    def to_poly(self, level: int = None) -> Poly:
        """``F_level = sum_{j<level} f_j p^j`` (all digits by default)."""
        if level is None:
            level = self.N
        if level > self.N:
            raise LevelTooHigh(f"level {level} exceeds truncation {self.N}")
        acc = Poly.zero(self.spec)
        for d in reversed(self.digits[:level]):
            acc = acc * self.p + d
        return acc

    def __eq__(self, other):
        return (isinstance(other, TruncatedPAdic) and self.p == other.p
                and self.digits == other.digits)

    def __hash__(self):
        return hash((self.p, self.digits))

    def __repr__(self):
        return f"TruncatedPAdic(p={self.p}, digits={[str(d) for d in self.digits]})"

    def __add__(self, other):
        return padic_arith(self, other, "add")

    def __mul__(self, other):
        return padic_arith(self, other, "mul")

    def __neg__(self):
        return TruncatedPAdic(self.p, [-d for d in self.digits], check=False)

    def __sub__(self, other):
        return padic_arith(self, -other, "add")

    def to_json(self) -> dict:
        return {"p": self.p.to_str(), "N": self.N, "digits": [d.to_str() for d in self.digits]}

    @classmethod
    def from_json(cls, obj, spec: FieldSpec) -> "TruncatedPAdic":
        try:
            p = Poly.parse(obj["p"], spec)
            digits = [Poly.parse(d, spec) for d in obj["digits"]]
            n = obj.get("N", len(digits))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed series object: {exc}") from None
        if n != len(digits):
            raise SizeMismatch(f"N = {n} but {len(digits)} digits given")
        return cls(p, digits)


def padic_arith(x: TruncatedPAdic, y: TruncatedPAdic, op: str) -> TruncatedPAdic:
    """Sum or product in ``F[t]/(p^N)``, ``N`` the smaller truncation."""
    if x.p != y.p:
        raise PrimeMismatch(f"primes {x.p} and {y.p} differ")
    n = min(x.N, y.N)
    fx, fy = x.to_poly(n), y.to_poly(n)
    if op == "add":
        r = fx + fy
    elif op == "mul":
        r = fx * fy
    else:
        raise InputError(f"unknown operation {op!r}")
    return TruncatedPAdic.from_poly(r, x.p, n)


def embed_rational(u: Poly, v: Poly, p: Poly, N: int) -> TruncatedPAdic:
    """``u / v`` in ``F[t]/(p^N)``; ``v`` must be prime to ``p``."""
    _check_prime(p)
    if N < 1:
        raise InputError("truncation level must be at least 1")
    if v.is_zero() or (v % p).is_zero():
        raise NotInRp(f"{p} divides the denominator {v}")
    pn = p ** N
    g, s, _ = poly_ext_gcd(v, pn)
    assert g.is_one()
    return TruncatedPAdic.from_poly(u * s % pn, p, N)


def project(x: TruncatedPAdic, n: int) -> TruncatedPAdic:
    """Reduction modulo ``p^n``."""
    if n > x.N:
        raise LevelTooHigh(f"cannot project level {x.N} to {n}")
    if n < 1:
        raise InputError("truncation level must be at least 1")
    return TruncatedPAdic(x.p, x.digits[:n], check=False)


def act_on_module(f: TruncatedPAdic, a: Mat, xi: Mat) -> Mat:
    """``F_m(a) xi`` where ``minpoly(a) = p^m``; later digits do not matter."""
    if not a.is_square:
        raise NotSquare(f"operator is {a.rows}x{a.cols}")
    if xi.rows != a.rows:
        raise SizeMismatch(f"vector has {xi.rows} rows, operator is {a.rows}x{a.rows}")
    if f.spec != a.spec:
        raise InputError("series and operator over different fields")
    m = primary_exponent(a, f.p)
    if f.N < m:
        raise TruncationTooShort(f"series needs at least {m} digits, has {f.N}", required=m)
    return poly_eval_matrix(f.to_poly(m), a) @ xi
