"""Seeded generators of test matrices, polynomials and module operators.

Every function takes an explicit ``random.Random`` so suites are
reproducible from a single seed.
"""
from __future__ import annotations

import random
from typing import List, Tuple

from .factor import poly_factor
from .field import FieldSpec
from .matrix import Mat, block_diag, mat_inverse
from .poly import Poly, companion

__all__ = ["random_scalar", "random_matrix", "random_poly", "random_unimodular",
           "random_irreducible", "primary_operator", "random_commuting", "conjugate"]


def random_scalar(rng: random.Random, spec: FieldSpec, lo: int = -3, hi: int = 3):
    if spec.is_rational:
        return spec.convert(rng.randint(lo, hi))
    return rng.randrange(spec.p)


def _dense(rng, n, spec, density=1.0):
    z = spec.zero
    return [[random_scalar(rng, spec) if rng.random() < density else z
             for _ in range(n)] for _ in range(n)]


def random_matrix(rng: random.Random, n: int, spec: FieldSpec) -> Mat:
    """Square matrix with small entries, mixing dense and structured shapes.

    Dense random matrices are almost always cyclic, so a share of the output
    has repeated eigenvalues or nilpotent parts to exercise richer module
    structure.  Over Q every entry stays in [-3, 3].
    """
    mode = rng.choice(("dense", "dense", "sparse", "diagonal", "triangular", "blocks"))
    if mode == "dense":
        rows = _dense(rng, n, spec)
    elif mode == "sparse":
        rows = _dense(rng, n, spec, density=0.3)
    elif mode == "diagonal":
        vals = [random_scalar(rng, spec, -1, 1) for _ in range(n)]
        rows = Mat.diag(vals, spec).data
    elif mode == "triangular":
        lam = [random_scalar(rng, spec, -1, 1) for _ in range(rng.randint(1, 2))]
        rows = [list(r) for r in Mat.zeros(n, n, spec).data]
        for i in range(n):
            rows[i][i] = rng.choice(lam)
            for j in range(i + 1, n):
                if rng.random() < 0.4:
                    rows[i][j] = random_scalar(rng, spec, -1, 1)
    else:
        sizes = []
        while sum(sizes) < n:
            sizes.append(rng.randint(1, min(3, n - sum(sizes))))
        pool = [Mat(_dense(rng, s, spec), spec) for s in set(sizes)]
        blocks = []
        for s in sizes:
            same = [b for b in pool if b.rows == s]
            blocks.append(rng.choice(same))
        rows = block_diag(*blocks).data
    return Mat(rows, spec)


def random_poly(rng: random.Random, deg: int, spec: FieldSpec, monic: bool = False) -> Poly:
    coeffs = [random_scalar(rng, spec) for _ in range(deg + 1)]
    if monic:
        coeffs[-1] = spec.one
    elif coeffs[-1] == spec.zero and deg >= 0:
        coeffs[-1] = spec.one
    return Poly(coeffs, spec)


def random_unimodular(rng: random.Random, n: int, spec: FieldSpec, steps: int = None) -> Mat:
    """Product of a few elementary row operations with entries in {-1, 0, 1}."""
    m = [list(r) for r in Mat.identity(n, spec).data]
    steps = 2 * n if steps is None else steps
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = spec.convert(rng.choice((-1, 1)))
        m[i] = [spec.add(x, spec.mul(c, y)) for x, y in zip(m[i], m[j])]
    return Mat(m, spec)


def conjugate(a: Mat, p: Mat) -> Mat:
    return p @ a @ mat_inverse(p)


def random_irreducible(rng: random.Random, spec: FieldSpec, max_deg: int = 2) -> Poly:
    """A monic irreducible polynomial of degree at most ``max_deg``."""
    while True:
        d = rng.randint(1, max_deg)
        f = random_poly(rng, d, spec, monic=True)
        fac = poly_factor(f)
        if len(fac.factors) == 1 and fac.factors[0][1] == 1:
            return f


def primary_operator(rng: random.Random, spec: FieldSpec, max_dim: int = 12,
                     max_chain: int = 4, conj: bool = True) -> Tuple[Mat, Poly]:
    """A ``p``-primary operator: a sum of companion blocks of ``p^k``, ``k <= max_chain``.

    Returns ``(a, p)``.  With ``conj`` the block sum is conjugated by a small
    unimodular matrix so bases are not aligned with the blocks.
    """
    p = random_irreducible(rng, spec, max_deg=2)
    d = p.degree
    exps: List[int] = []
    while True:
        room = (max_dim - d * sum(exps)) // d
        if room < 1:
            break
        exps.append(rng.randint(1, min(max_chain, room)))
        if rng.random() < 0.35:
            break
    blocks = [companion(p ** k) for k in exps]
    a = block_diag(*blocks)
    if conj:
        a = conjugate(a, random_unimodular(rng, a.rows, spec))
    return a, p


def random_commuting(rng: random.Random, basis: List[Mat], spec: FieldSpec, n: int) -> Mat:
    """Random linear combination of ``basis`` (e.g. a commutant basis)."""
    out = Mat.zeros(n, n, spec)
    for b in basis:
        c = random_scalar(rng, spec, -2, 2)
        if c:
            out = out + b.scale(c)
    return out
