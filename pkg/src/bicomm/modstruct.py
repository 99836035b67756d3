"""F[t]-module structure of a square matrix ``a`` (``t`` acting as ``a``).

Invariant factors come from the Smith normal form of ``tI - a``; the
primary decomposition comes from factoring the minimal polynomial and
building commuting idempotents ``e_i(a)`` from Bezout identities.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import FieldMismatch, InputError, NotPrimary, NotSquare, SizeMismatch
from .factor import poly_factor
from .field import FieldSpec
from .matrix import Mat, Subspace, mat_nullspace, mat_rref
from .poly import Poly, poly_ext_gcd, poly_eval_matrix, poly_lcm, poly_product

__all__ = ["PolyMat", "ModuleStructure", "PrimaryComponent", "minimal_polynomial",
           "vector_annihilator", "characteristic_polynomial", "smith_normal_form",
           "invariant_factors", "primary_decomposition", "structure_violations",
           "primary_exponent"]


class PolyMat:
    """Matrix with entries in F[t]."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Poly]], spec: FieldSpec, cols: int = None):
        ent = tuple(tuple(e) for e in entries)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        for row in ent:
            if len(row) != cols:
                raise InputError("ragged polynomial matrix")
            for e in row:
                if e.spec != spec:
                    raise FieldMismatch(f"entry over {e.spec} in a {spec} matrix")
        self.spec = spec
        self.rows = len(ent)
        self.cols = cols
        self.entries = ent

    @classmethod
    def identity(cls, n: int, spec: FieldSpec) -> "PolyMat":
        z, o = Poly.zero(spec), Poly.one(spec)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], spec, cols=n)

    @classmethod
    def characteristic(cls, a: Mat) -> "PolyMat":
        """The characteristic matrix ``tI - a``."""
        if not a.is_square:
            raise NotSquare(f"characteristic matrix of a {a.rows}x{a.cols} matrix")
        spec = a.spec
        n = a.rows
        neg = spec.neg
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                c = neg(a[i, j])
                row.append(Poly._raw([c, spec.one] if i == j else [c], spec))
            rows.append(row)
        return cls(rows, spec, cols=n)

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMat):
            return NotImplemented
        return (self.spec == other.spec and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.spec, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"PolyMat({[[str(e) for e in r] for r in self.entries]}, {self.spec})"

    def __matmul__(self, other: "PolyMat") -> "PolyMat":
        if self.spec != other.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        if self.cols != other.rows:
            raise SizeMismatch(f"({self.rows}x{self.cols}) @ ({other.rows}x{other.cols})")
        zero = Poly.zero(self.spec)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    x, y = self.entries[i][k], other.entries[k][j]
                    if x.coeffs and y.coeffs:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return PolyMat(out, self.spec, cols=other.cols)

    def is_diagonal(self) -> bool:
        return all(e.is_zero() for i, r in enumerate(self.entries)
                   for j, e in enumerate(r) if i != j)

    def diagonal(self) -> List[Poly]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def det(self) -> Poly:
        """Determinant by fraction-free (Bareiss) elimination in F[t]."""
        if self.rows != self.cols:
            raise NotSquare("determinant of a non-square polynomial matrix")
        n = self.rows
        spec = self.spec
        if n == 0:
            return Poly.one(spec)
        m = [list(r) for r in self.entries]
        sign = 1
        prev = Poly.one(spec)
        for k in range(n - 1):
            if m[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
                if swap is None:
                    return Poly.zero(spec)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exquo(prev)
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return d if sign == 1 else -d

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[str(e) for e in r] for r in self.entries]}


# -- minimal and characteristic polynomials -----------------------------------

def vector_annihilator(a: Mat, v: Sequence) -> Poly:
    """Monic generator of ``{f : f(a) v = 0}`` from the Krylov sequence of ``v``."""
    spec = a.spec
    n = a.rows
    cols = [list(v)]
    for _ in range(n):
        prev = cols[-1]
        cols.append([spec.reduce(sum((x * y for x, y in zip(row, prev)), spec.zero))
                     for row in a.data])
    krylov = Mat.from_columns(cols, spec, rows=n)
    rref, rank, pivots = mat_rref(krylov)
    # pivots are 0..k-1 and column k is the first dependent one
    k = rank
    neg = spec.neg
    coeffs = [neg(rref[i, k]) for i in range(k)] + [spec.one]
    return Poly._raw(coeffs, spec)


def minimal_polynomial(a: Mat) -> Poly:
    """lcm of the Krylov annihilators of the standard basis vectors."""
    if not a.is_square:
        raise NotSquare(f"minimal polynomial of a {a.rows}x{a.cols} matrix")
    spec = a.spec
    n = a.rows
    result = Poly.one(spec)
    z, o = spec.zero, spec.one
    for i in range(n):
        e = [o if j == i else z for j in range(n)]
        result = poly_lcm(result, vector_annihilator(a, e))
        if result.degree == n:
            break
    return result


def characteristic_polynomial(a: Mat) -> Poly:
    """det(tI - a) via reduction to upper Hessenberg form."""
    if not a.is_square:
        raise NotSquare(f"characteristic polynomial of a {a.rows}x{a.cols} matrix")
    spec = a.spec
    n = a.rows
    h = [list(r) for r in a.data]
    red = spec.reduce
    for m in range(1, n - 1):
        if not h[m][m - 1]:
            i = next((i for i in range(m + 1, n) if h[i][m - 1]), None)
            if i is None:
                continue
            h[i], h[m] = h[m], h[i]
            for r in h:
                r[i], r[m] = r[m], r[i]
        inv = spec.inv(h[m][m - 1])
        for i in range(m + 1, n):
            u = red(h[i][m - 1] * inv)
            if not u:
                continue
            h[i] = [red(x - u * y) for x, y in zip(h[i], h[m])]
            for r in h:
                r[m] = red(r[m] + u * r[i])
    t = Poly.t(spec)
    polys = [Poly.one(spec)]
    for m in range(n):
        pm = (t - Poly._raw([h[m][m]], spec)) * polys[m]
        prod = spec.one
        for i in range(1, m + 1):
            prod = red(prod * h[m - i + 1][m - i])
            pm = pm - polys[m - i].scale(red(prod * h[m - i][m]))
        polys.append(pm)
    return polys[n]


# -- Smith normal form ------------------------------------------------------

def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for r in m:
        r[i], r[j] = r[j], r[i]


def _add_row(m, src, dst, q: Poly):
    """row[dst] -= q * row[src]"""
    m[dst] = [d - q * s if s.coeffs else d for d, s in zip(m[dst], m[src])]


def _add_col(m, src, dst, q: Poly):
    """col[dst] -= q * col[src]"""
    for r in m:
        if r[src].coeffs:
            r[dst] = r[dst] - q * r[src]


def _mix_rows(m, i, j, a, b, c, d):
    """(row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)"""
    ri, rj = m[i], m[j]
    m[i] = [a * x + b * y for x, y in zip(ri, rj)]
    m[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _mix_cols(m, i, j, a, b, c, d):
    """(col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)"""
    for r in m:
        x, y = r[i], r[j]
        r[i] = a * x + b * y
        r[j] = c * x + d * y


def smith_normal_form(m: PolyMat) -> Tuple[PolyMat, PolyMat, PolyMat]:
    """Return ``(U, D, W)`` with ``U @ m @ W == D`` in Smith normal form.

    ``U`` and ``W`` are unimodular; the nonzero diagonal entries of ``D`` are
    monic and each divides the next, zeros (if any) come last.
    """
    if m.rows != m.cols:
        raise NotSquare(f"Smith normal form of a {m.rows}x{m.cols} polynomial matrix")
    spec = m.spec
    n = m.rows
    A = [list(r) for r in m.entries]
    U = [list(r) for r in PolyMat.identity(n, spec).entries]
    W = [list(r) for r in PolyMat.identity(n, spec).entries]

    for k in range(n):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    e = A[i][j]
                    if e.coeffs and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, i, j = best
            if i != k:
                _swap_rows(A, i, k)
                _swap_rows(U, i, k)
            if j != k:
                _swap_cols(A, j, k)
                _swap_cols(W, j, k)
            piv = A[k][k]
            clean = True
            for i in range(k + 1, n):
                if A[i][k].coeffs:
                    q, r = divmod(A[i][k], piv)
                    _add_row(A, k, i, q)
                    _add_row(U, k, i, q)
                    clean = clean and r.is_zero()
            for j in range(k + 1, n):
                if A[k][j].coeffs:
                    q, r = divmod(A[k][j], piv)
                    _add_col(A, k, j, q)
                    _add_col(W, k, j, q)
                    clean = clean and r.is_zero()
            if clean:
                break
        if best is None:
            break

    # nonzero diagonal entries first
    nz = [i for i in range(n) if A[i][i].coeffs]
    order = nz + [i for i in range(n) if not A[i][i].coeffs]
    A = [[A[i][j] for j in order] for i in order]
    U = [U[i] for i in order]
    W = [[r[j] for j in order] for r in W]

    # enforce the divisibility chain with gcd/lcm passes
    count = len(nz)
    for i in range(count):
        for j in range(i + 1, count):
            a, b = A[i][i], A[j][j]
            if a.divides(b):
                continue
            g, s, t = poly_ext_gcd(a, b)
            a1, b1 = a // g, b // g
            one = Poly.one(spec)
            _mix_rows(A, i, j, s, t, -b1, a1)
            _mix_rows(U, i, j, s, t, -b1, a1)
            _mix_cols(A, i, j, one, one, -(t * b1), s * a1)
            _mix_cols(W, i, j, one, one, -(t * b1), s * a1)

    for i in range(count):
        lc = A[i][i].lc
        if lc != spec.one:
            inv = spec.inv(lc)
            A[i] = [e.scale(inv) for e in A[i]]
            U[i] = [e.scale(inv) for e in U[i]]
    return PolyMat(U, spec, cols=n), PolyMat(A, spec, cols=n), PolyMat(W, spec, cols=n)


def invariant_factors(a: Mat) -> List[Poly]:
    """Nonconstant diagonal entries of the Smith form of ``tI - a``."""
    if not a.is_square:
        raise NotSquare(f"invariant factors of a {a.rows}x{a.cols} matrix")
    _, d, _ = smith_normal_form(PolyMat.characteristic(a))
    return [e for e in d.diagonal() if not e.is_constant()]


# -- primary decomposition ----------------------------------------------------

@dataclass(frozen=True)
class PrimaryComponent:
    prime: Poly
    multiplicity: int
    projection: Mat
    basis: Subspace

    @property
    def dimension(self) -> int:
        return self.basis.dim


@dataclass(frozen=True)
class ModuleStructure:
    a: Mat
    min_poly: Poly
    char_poly: Poly
    invariant_factors: Tuple[Poly, ...]
    primary_components: Tuple[PrimaryComponent, ...]

    @property
    def primes(self) -> List[Poly]:
        return [c.prime for c in self.primary_components]


def primary_decomposition(a: Mat) -> ModuleStructure:
    if not a.is_square:
        raise NotSquare(f"primary decomposition of a {a.rows}x{a.cols} matrix")
    mp = minimal_polynomial(a)
    cp = characteristic_polynomial(a)
    invf = tuple(invariant_factors(a))
    comps = []
    if a.rows:
        fac = poly_factor(mp)
        for prime, k in fac.factors:
            power = prime ** k
            cofactor = mp // power
            _, s, _ = poly_ext_gcd(cofactor, power)
            idem = (s * cofactor) % mp
            comps.append(PrimaryComponent(
                prime=prime,
                multiplicity=k,
                projection=poly_eval_matrix(idem, a),
                basis=mat_nullspace(poly_eval_matrix(power, a)),
            ))
    return ModuleStructure(a, mp, cp, invf, tuple(comps))


def _valuation(f: Poly, p: Poly) -> int:
    v = 0
    while True:
        q, r = divmod(f, p)
        if not r.is_zero():
            return v
        f = q
        v += 1


def structure_violations(ms: ModuleStructure) -> List[str]:
    """Re-check the claims of a :class:`ModuleStructure`; empty list if all hold."""
    bad = []
    a = ms.a
    spec = a.spec
    n = a.rows
    if poly_product(ms.invariant_factors, spec) != ms.char_poly:
        bad.append("product of invariant factors differs from the characteristic polynomial")
    last = ms.invariant_factors[-1] if ms.invariant_factors else Poly.one(spec)
    if last != ms.min_poly:
        bad.append("last invariant factor differs from the minimal polynomial")
    for f, g in zip(ms.invariant_factors, ms.invariant_factors[1:]):
        if not f.divides(g):
            bad.append(f"invariant factor {f} does not divide {g}")
    if not poly_eval_matrix(ms.min_poly, a).is_zero():
        bad.append("minimal polynomial does not annihilate a")
    projs = [c.projection for c in ms.primary_components]
    total = Mat.zeros(n, n, spec)
    for i, p in enumerate(projs):
        total = total + p
        if p @ p != p:
            bad.append(f"projection {i} is not idempotent")
        if p @ a != a @ p:
            bad.append(f"projection {i} does not commute with a")
        for j, q in enumerate(projs):
            if i != j and not (p @ q).is_zero():
                bad.append(f"projections {i} and {j} are not orthogonal")
    if n and total != Mat.identity(n, spec):
        bad.append("projections do not sum to the identity")
    dims = 0
    for c in ms.primary_components:
        expected = c.prime.degree * sum(_valuation(f, c.prime) for f in ms.invariant_factors)
        if c.dimension != expected:
            bad.append(f"component {c.prime} has dimension {c.dimension}, invariant factors predict {expected}")
        if Subspace.span(c.projection) != c.basis:
            bad.append(f"component {c.prime}: projection image differs from the kernel basis")
        dims += c.dimension
    if dims != n:
        bad.append("component dimensions do not add up to n")
    return bad


def primary_exponent(a: Mat, p: Poly) -> int:
    """``m`` with ``minpoly(a) = p^m``; raises :class:`NotPrimary` otherwise."""
    mp = minimal_polynomial(a)
    rest, m = mp, 0
    while not rest.is_constant():
        rest, r = divmod(rest, p)
        if not r.is_zero():
            raise NotPrimary(f"minimal polynomial {mp} is not a power of {p}")
        m += 1
    return m
