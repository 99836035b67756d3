"""Irreducible factorization of univariate polynomials.

Over F_p: squarefree split, distinct-degree factorization, then
equal-degree splitting (Cantor-Zassenhaus) driven by a seeded generator so
runs are reproducible.

Over Q: each squarefree part is made a primitive integer polynomial,
factored modulo a small auxiliary prime, Hensel-lifted to a modulus beyond
the Mignotte coefficient bound, and the lifted factors are recombined by
trial over subsets.  Recombination is exponential in the number of modular
factors, so inputs are limited to degree ``MAX_RATIONAL_DEGREE``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import gcd, isqrt
from typing import List, Tuple

from .errors import DegreeTooLarge, ZeroInput
from .field import FieldSpec, GF, is_prime
from .poly import Poly, poly_ext_gcd, poly_gcd, poly_squarefree

__all__ = ["Factorization", "poly_factor", "MAX_RATIONAL_DEGREE"]

MAX_RATIONAL_DEGREE = 24
SPLIT_SEED = 0


@dataclass(frozen=True)
class Factorization:
    spec: FieldSpec
    unit: object
    factors: Tuple[Tuple[Poly, int], ...]

    def expand(self) -> Poly:
        acc = Poly.constant(self.unit, self.spec)
        for g, m in self.factors:
            acc = acc * g ** m
        return acc

    @property
    def primes(self) -> List[Poly]:
        return [g for g, _ in self.factors]

    def __str__(self):
        parts = [self.spec.to_str(self.unit)] if self.unit != self.spec.one or not self.factors else []
        for g, m in self.factors:
            s = f"({g})"
            parts.append(s if m == 1 else f"{s}^{m}")
        return " * ".join(parts)


def poly_factor(f: Poly) -> Factorization:
    if f.is_zero():
        raise ZeroInput("cannot factor the zero polynomial")
    spec = f.spec
    if spec.is_rational and f.degree > MAX_RATIONAL_DEGREE:
        raise DegreeTooLarge(f"degree {f.degree} exceeds the supported bound "
                             f"{MAX_RATIONAL_DEGREE} for factoring over Q")
    found = []
    for part, mult in poly_squarefree(f):
        if spec.is_rational:
            primes = _factor_squarefree_q(part)
        else:
            primes = factor_squarefree_fp(part, random.Random(SPLIT_SEED))
        found.extend((g, mult) for g in primes)
    found.sort(key=lambda gm: gm[0].sort_key())
    return Factorization(spec, f.lc, tuple(found))


# -- finite fields -----------------------------------------------------------

def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.spec)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        e >>= 1
        if e:
            base = base * base % mod
    return result


def _distinct_degree(f: Poly) -> List[Tuple[Poly, int]]:
    """Split monic squarefree ``f`` into products of equal-degree irreducibles."""
    spec = f.spec
    p = spec.p
    t = Poly.t(spec)
    out = []
    h = t
    d = 1
    rest = f
    while rest.degree >= 2 * d:
        h = _powmod(h, p, rest)
        g = poly_gcd(h - t, rest)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            h = h % rest
        d += 1
    if not rest.is_constant():
        out.append((rest, rest.degree))
    return out


def _random_poly(spec: FieldSpec, deg_below: int, rng: random.Random) -> Poly:
    return Poly._raw([rng.randrange(spec.p) for _ in range(deg_below)], spec)


def _equal_degree(g: Poly, d: int, rng: random.Random) -> List[Poly]:
    if g.degree == d:
        return [g]
    spec = g.spec
    p = spec.p
    while True:
        a = _random_poly(spec, g.degree, rng)
        if a.is_constant():
            continue
        if p == 2:
            # absolute trace from F_{2^d} down to F_2
            b = a % g
            acc = b
            for _ in range(d - 1):
                b = b * b % g
                acc = acc + b
        else:
            acc = _powmod(a, (p ** d - 1) // 2, g) - Poly.one(spec)
        h = poly_gcd(acc, g)
        if 0 < h.degree < g.degree:
            return _equal_degree(h, d, rng) + _equal_degree(g // h, d, rng)


def factor_squarefree_fp(f: Poly, rng: random.Random) -> List[Poly]:
    """Monic irreducible factors of a monic squarefree polynomial over F_p."""
    out = []
    for g, d in _distinct_degree(f.monic()):
        out.extend(_equal_degree(g, d, rng))
    return out


# -- integers --------------------------------------------------------------

def _zmul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zmod(a: List[int], m: int, symmetric: bool = False) -> List[int]:
    out = [x % m for x in a]
    if symmetric:
        half = m // 2
        out = [x - m if x > half else x for x in out]
    while out and not out[-1]:
        out.pop()
    return out


def _primitive(a: List[int]) -> List[int]:
    c = 0
    for x in a:
        c = gcd(c, x)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def _to_fp(a: List[int], spec: FieldSpec) -> Poly:
    return Poly._raw([x % spec.p for x in a], spec)


def _hensel_two(f, g, h, p, pl):
    """Lift ``f = g*h (mod p)`` to ``mod pl``; ``g`` monic, ``lc(h) = lc(f)``."""
    spec = GF(p)
    gp, hp = _to_fp(g, spec), _to_fp(h, spec)
    one, A, B = poly_ext_gcd(gp, hp)
    assert one.is_one(), "modular factors must be coprime"
    G, H = list(g), list(h)
    H[-1] = f[-1] % pl
    m = p
    while m < pl:
        diff = _zmod([a - b for a, b in _pad(f, _zmul(G, H))], pl)
        if any(x % m for x in diff):
            raise AssertionError("Hensel invariant broken")
        e = _to_fp([x // m for x in diff], spec)
        q, dG = divmod(e * B, gp)
        dH = e * A + q * hp
        G = [x + m * int(y) for x, y in _pad(G, list(dG.coeffs))]
        H = [x + m * int(y) for x, y in _pad(H, list(dH.coeffs))]
        m *= p
        G, H = _zmod(G, pl), _zmod(H, pl)
    return G, H


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def _hensel_multi(f, factors, p, pl):
    if len(factors) == 1:
        inv = pow(f[-1], -1, pl)
        return [_zmod([x * inv for x in f], pl)]
    k = len(factors) // 2
    spec = GF(p)
    left = Poly.one(spec)
    for g in factors[:k]:
        left = left * _to_fp(g, spec)
    right = Poly.constant(f[-1] % p, spec)
    for g in factors[k:]:
        right = right * _to_fp(g, spec)
    G, H = _hensel_two(f, [int(c) for c in left.coeffs], [int(c) for c in right.coeffs], p, pl)
    return _hensel_multi(G, factors[:k], p, pl) + _hensel_multi(H, factors[k:], p, pl)


def _candidate_primes():
    q = 3
    while True:
        if is_prime(q):
            yield q
        q += 2


def _zz_factor_squarefree(f: List[int]) -> List[List[int]]:
    """Irreducible factors in Z[t] of a primitive squarefree ``f`` with ``lc > 0``."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    b = f[-1]
    best = None
    tried = 0
    for p in _candidate_primes():
        if b % p == 0:
            continue
        spec = GF(p)
        fp = _to_fp(f, spec)
        if not poly_gcd(fp, fp.derivative()).is_one():
            continue
        mods = factor_squarefree_fp(fp.monic(), random.Random(SPLIT_SEED))
        if len(mods) == 1:
            return [f]
        if best is None or len(mods) < len(best[1]):
            best = (p, mods)
        tried += 1
        if tried >= 5:
            break
    p, mods = best
    bound = b * 2 ** n * (isqrt(sum(c * c for c in f)) + 1)
    pl = p
    while pl <= 2 * bound:
        pl *= p
    lifted = _hensel_multi(f, [[int(c) for c in g.coeffs] for g in mods], p, pl)

    found = []
    remaining = list(range(len(lifted)))
    cur = f
    s = 1
    while 2 * s <= len(remaining):
        for subset in combinations(remaining, s):
            lc = cur[-1]
            G = [lc]
            for i in subset:
                G = _zmod(_zmul(G, lifted[i]), pl, symmetric=True)
            H = [lc]
            for i in remaining:
                if i not in subset:
                    H = _zmod(_zmul(H, lifted[i]), pl, symmetric=True)
            if _zmul(G, H) == [lc * c for c in cur]:
                found.append(_primitive(G))
                cur = _primitive(H)
                remaining = [i for i in remaining if i not in subset]
                break
        else:
            s += 1
    found.append(cur)
    return found


def _factor_squarefree_q(f: Poly) -> List[Poly]:
    """Monic irreducible factors over Q of a monic squarefree polynomial."""
    spec = f.spec
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // gcd(den, int(c.denominator))
    ints = _primitive([int(c * den) for c in f.coeffs])
    return [Poly(g, spec).monic() for g in _zz_factor_squarefree(ints)]
