"""Dense univariate polynomials over an exact field.

Coefficients are raw field scalars stored lowest degree first with no
trailing zeros; the zero polynomial has an empty coefficient tuple and
degree ``None``.

String form is ascending: ``"4 + t"``, ``"-2 + 1/2*t^3"``.  The parser also
accepts descending order, ``**`` for powers and ``x`` for the variable.
"""
from __future__ import annotations

import re
from typing import Iterable, List, Tuple

from .errors import BothZero, DivisionByZero, FieldMismatch, InputError, NotSquare, ZeroInput
from .field import FieldSpec
from .matrix import Mat

__all__ = ["Poly", "poly_ext_gcd", "poly_gcd", "poly_lcm", "poly_squarefree",
           "poly_eval_matrix", "companion", "poly_product"]


def _strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


class Poly:
    __slots__ = ("spec", "coeffs")

    def __init__(self, coeffs: Iterable, spec: FieldSpec):
        conv = spec.convert
        self.spec = spec
        self.coeffs = tuple(_strip([conv(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs: list, spec: FieldSpec) -> "Poly":
        f = cls.__new__(cls)
        f.spec = spec
        f.coeffs = tuple(_strip(coeffs))
        return f

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls._raw([], spec)

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls._raw([spec.one], spec)

    @classmethod
    def t(cls, spec: FieldSpec) -> "Poly":
        return cls._raw([spec.zero, spec.one], spec)

    @classmethod
    def constant(cls, c, spec: FieldSpec) -> "Poly":
        return cls._raw([spec.convert(c)], spec)

    @classmethod
    def monomial(cls, k: int, spec: FieldSpec, c=1) -> "Poly":
        return cls._raw([spec.zero] * k + [spec.convert(c)], spec)

    # -- queries -----------------------------------------------------------

    @property
    def degree(self):
        """Degree, or ``None`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.spec.one,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.spec.one

    def coeff(self, k: int):
        return self.coeffs[k] if k < len(self.coeffs) else self.spec.zero

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.spec == other.spec and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __repr__(self):
        return f"Poly({self}, {self.spec})"

    def __str__(self):
        return self.to_str()

    def sort_key(self):
        """Ordering used for deterministic output: degree, then coefficient strings."""
        return (len(self.coeffs), tuple(self.spec.to_str(c) for c in self.coeffs))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        return Poly.constant(other, self.spec)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        red = self.spec.reduce
        c = [red(x + y) for x, y in zip(a, b)] + list(a[len(b):])
        return Poly._raw(c, self.spec)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        neg = self.spec.neg
        return Poly._raw([neg(x) for x in self.coeffs], self.spec)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.spec)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        red = self.spec.reduce
        if self.spec.p is None:
            z = self.spec.zero
            return Poly._raw([z + c for c in out], self.spec)
        return Poly._raw([red(c) for c in out], self.spec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.spec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        c = self.spec.convert(c)
        red = self.spec.reduce
        return Poly._raw([red(c * x) for x in self.coeffs], self.spec)

    def __divmod__(self, other) -> Tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        spec = self.spec
        p = spec.p
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv = spec.inv(b[-1])
        if len(r) <= db:
            return Poly.zero(spec), self
        q = [spec.zero] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if not c:
                continue
            c = c * inv if p is None else c * inv % p
            q[k] = c
            for j in range(db + 1):
                if p is None:
                    r[k + j] -= c * b[j]
                else:
                    r[k + j] = (r[k + j] - c * b[j]) % p
        return Poly._raw(q, spec), Poly._raw(r[:db], spec)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exquo(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InputError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        """True iff ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.spec.inv(self.lc))

    def derivative(self) -> "Poly":
        red = self.spec.reduce
        return Poly._raw([red(k * c) for k, c in enumerate(self.coeffs) if k], self.spec)

    def __call__(self, x):
        """Evaluate at a raw scalar (or anything the field converts)."""
        x = self.spec.convert(x)
        acc = self.spec.zero
        red = self.spec.reduce
        for c in reversed(self.coeffs):
            acc = red(acc * x + c)
        return acc

    def compose(self, g: "Poly") -> "Poly":
        acc = Poly.zero(self.spec)
        for c in reversed(self.coeffs):
            acc = acc * g + Poly._raw([c], self.spec)
        return acc

    # -- string form -------------------------------------------------------

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        spec = self.spec
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = spec.to_str(c)
            if k == 0:
                terms.append(cs)
                continue
            mono = "t" if k == 1 else f"t^{k}"
            if cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append("-" + mono)
            else:
                terms.append(f"{cs}*{mono}")
        out = terms[0]
        for term in terms[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    _TERM = re.compile(r"^(?:(\d+)(?:/(\d+))?)?(\*)?(?:([tx])(?:\^(\d+))?)?$")

    @classmethod
    def parse(cls, s: str, spec: FieldSpec) -> "Poly":
        if not isinstance(s, str):
            raise InputError(f"polynomial must be a string, got {s!r}")
        text = s.replace(" ", "").replace("**", "^")
        if not text:
            raise InputError("empty polynomial string")
        acc = {}
        for m in re.finditer(r"([+-]*)([^+-]+)|([+-]+)$", text):
            if m.group(3) is not None:
                raise InputError(f"dangling sign in {s!r}")
            signs, body = m.group(1), m.group(2)
            t = cls._TERM.match(body)
            if not t or (t.group(1) is None and t.group(4) is None):
                raise InputError(f"malformed term {body!r} in {s!r}")
            num, den, star, var, exp = t.groups()
            if star and (num is None or var is None):
                raise InputError(f"malformed term {body!r} in {s!r}")
            num = int(num) if num is not None else 1
            den = int(den) if den is not None else 1
            if signs.count("-") % 2:
                num = -num
            k = 0 if var is None else (int(exp) if exp is not None else 1)
            acc[k] = spec.add(acc.get(k, spec.zero), spec.canonical(num, den))
        # re.finditer silently skips unmatched text; make sure we consumed everything
        rebuilt = "".join(m.group(0) for m in re.finditer(r"([+-]*)([^+-]+)", text))
        if rebuilt != text:
            raise InputError(f"malformed polynomial {s!r}")
        deg = max(acc) if acc else 0
        coeffs = [acc.get(k, spec.zero) for k in range(deg + 1)]
        return cls._raw(coeffs, spec)


def poly_product(polys: Iterable[Poly], spec: FieldSpec) -> Poly:
    acc = Poly.one(spec)
    for f in polys:
        acc = acc * f
    return acc


def poly_ext_gcd(f: Poly, g: Poly) -> Tuple[Poly, Poly, Poly]:
    """Monic gcd with Bezout cofactors: ``s*f + t*g == gcd``."""
    if f.spec != g.spec:
        raise FieldMismatch(f"{f.spec} vs {g.spec}")
    spec = f.spec
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd of two zero polynomials")
    r0, r1 = f, g
    s0, s1 = Poly.one(spec), Poly.zero(spec)
    t0, t1 = Poly.zero(spec), Poly.one(spec)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = spec.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    if f.is_zero() and g.is_zero():
        return f
    return poly_ext_gcd(f, g)[0]


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        return Poly.zero(f.spec)
    return (f * g // poly_gcd(f, g)).monic()


def _pth_root(f: Poly) -> Poly:
    p = f.spec.p
    return Poly._raw(list(f.coeffs[::p]), f.spec)


def poly_squarefree(f: Poly) -> List[Tuple[Poly, int]]:
    """Squarefree decomposition ``f = lc(f) * prod(g_i ** m_i)``.

    Parts are monic, squarefree and pairwise coprime, sorted by multiplicity.
    In characteristic p the factors whose multiplicity is divisible by p are
    found by taking p-th roots.
    """
    if f.is_zero():
        raise ZeroInput("squarefree decomposition of zero")
    parts = {}
    _sqf(f.monic(), 1, parts)
    return sorted(((g, m) for m, g in parts.items()), key=lambda gm: gm[1])


def _sqf(f: Poly, scale: int, parts: dict):
    if f.is_constant():
        return
    c = poly_gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_constant():
        y = poly_gcd(w, c)
        fac = w // y
        if not fac.is_constant():
            m = i * scale
            parts[m] = parts[m] * fac if m in parts else fac.monic()
        w, c = y, c // y
        i += 1
    if not c.is_constant():
        # only reachable in positive characteristic: c is a p-th power
        _sqf(_pth_root(c.monic()), scale * f.spec.p, parts)


def poly_eval_matrix(f: Poly, a: Mat) -> Mat:
    """Horner evaluation of ``f`` at the square matrix ``a``."""
    if not a.is_square:
        raise NotSquare(f"cannot evaluate a polynomial at a {a.rows}x{a.cols} matrix")
    if f.spec != a.spec:
        raise FieldMismatch(f"{f.spec} polynomial at {a.spec} matrix")
    n = a.rows
    spec = a.spec
    if f.is_zero():
        return Mat.zeros(n, n, spec)
    red = spec.reduce
    acc = Mat.identity(n, spec).scale(f.lc)
    for c in reversed(f.coeffs[:-1]):
        acc = acc @ a
        if c:
            data = [list(r) for r in acc.data]
            for i in range(n):
                data[i][i] = red(data[i][i] + c)
            acc = Mat._raw(spec, n, n, data)
    return acc


def companion(f: Poly) -> Mat:
    """Companion matrix of monic ``f``: ones on the subdiagonal, last column ``-coeffs``."""
    if f.is_zero() or f.degree < 1:
        raise InputError("companion matrix needs a polynomial of degree >= 1")
    f = f.monic()
    spec = f.spec
    d = f.degree
    z, o = spec.zero, spec.one
    data = [[z] * d for _ in range(d)]
    for i in range(1, d):
        data[i][i - 1] = o
    for i in range(d):
        data[i][d - 1] = spec.neg(f.coeffs[i])
    return Mat._raw(spec, d, d, data)
