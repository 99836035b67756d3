"""Inner derivations and derivative maps of polynomial functional calculus.

For a polynomial ``p = sum_j alpha_j t^j`` and square ``a`` the derivative map

    p_dot(p, a, x) = sum_j alpha_j sum_{i<j} a^(j-i-1) x a^i

satisfies ``d_a(p_dot(p, a, x)) = d_{p(a)}(x)`` where ``d_a(x) = ax - xa``.
The two-sided version ``f_dot_mixed`` with different operators on the left
and right drives an explicit solver for ``cx - xe = y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (DenominatorSingular, InputError, NotCoprime, NotInBicommutant,
                     NotInPolynomialAlgebra, NotSquare, Singular,
                     SizeMismatch, TruncationTooShort, ZeroInput)
from .commalg import express_as_polynomial
from .matrix import (Mat, column_space, mat_inverse, mat_nullspace, subspace_contains,
                     sylvester_operator)
from .modstruct import minimal_polynomial, primary_exponent
from .poly import Poly, poly_eval_matrix, poly_gcd

__all__ = ["DerivationOp", "derivation_matrix", "RationalFn", "p_dot", "r_dot",
           "f_dot_series", "f_dot_mixed", "SylvesterSolution", "sylvester_solution",
           "sylvester_solve", "sylvester_unique", "RangeKernelReport",
           "range_kernel_report", "preimage_witness"]


@dataclass(frozen=True)
class DerivationOp:
    """``x -> ax - xa`` together with its matrix on column-stacked ``vec(x)``."""

    a: Mat
    matrix: Mat

    def __call__(self, x: Mat) -> Mat:
        return self.a @ x - x @ self.a

    @property
    def rank(self) -> int:
        n2 = self.matrix.cols
        return n2 - mat_nullspace(self.matrix).dim


def derivation_matrix(a: Mat) -> DerivationOp:
    if not a.is_square:
        raise NotSquare(f"derivation of a {a.rows}x{a.cols} matrix")
    return DerivationOp(a, sylvester_operator(a, a))


class RationalFn:
    """``num / den`` in lowest terms with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None):
        if den is None:
            den = Poly.one(num.spec)
        if num.spec != den.spec:
            raise InputError("numerator and denominator over different fields")
        if den.is_zero():
            raise ZeroInput("zero denominator")
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        lc = den.lc
        self.num = num.scale(num.spec.inv(lc))
        self.den = den.monic()

    @property
    def spec(self):
        return self.num.spec

    def __eq__(self, other):
        return isinstance(other, RationalFn) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFn({self.num}, {self.den})"

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def __call__(self, a: Mat) -> Mat:
        """``num(a) @ den(a)^-1``."""
        return poly_eval_matrix(self.num, a) @ _den_inverse(self.den, a)


def _den_inverse(den: Poly, a: Mat) -> Mat:
    try:
        return mat_inverse(poly_eval_matrix(den, a))
    except Singular:
        raise DenominatorSingular(f"{den} evaluated at a is not invertible") from None


def _same_square(a: Mat, x: Mat):
    if not a.is_square:
        raise NotSquare(f"operator is {a.rows}x{a.cols}")
    if x.shape != a.shape:
        raise SizeMismatch(f"x is {x.rows}x{x.cols}, a is {a.rows}x{a.cols}")
    a._check(x)


def f_dot_mixed(f: Poly, c: Mat, e: Mat, y: Mat) -> Mat:
    """``sum_j alpha_j sum_{i<j} c^(j-i-1) y e^i`` for ``f = sum_j alpha_j t^j``.

    Whenever ``y = cx - xe`` this equals ``f(c) x - x f(e)``.
    """
    if not c.is_square or not e.is_square:
        raise NotSquare("c and e must be square")
    if y.shape != (c.rows, e.rows):
        raise SizeMismatch(f"y must be {c.rows}x{e.rows}, got {y.rows}x{y.cols}")
    c._check(y)
    e._check(y)
    spec = c.spec
    # result = sum_k G_k y e^k with G_k = sum_{j>k} alpha_j c^(j-k-1)
    deg = f.degree
    out = Mat.zeros(c.rows, e.rows, spec)
    if deg is None or deg < 1:
        return out
    ident = Mat.identity(c.rows, spec)
    g = Mat.zeros(c.rows, c.rows, spec)
    terms = []
    for k in range(deg - 1, -1, -1):
        g = c @ g + ident.scale(f.coeffs[k + 1])
        terms.append(g)
    terms.reverse()
    ek = Mat.identity(e.rows, spec)
    for k, gk in enumerate(terms):
        if k:
            ek = ek @ e
        out = out + gk @ y @ ek
    return out


def p_dot(p: Poly, a: Mat, x: Mat) -> Mat:
    _same_square(a, x)
    return f_dot_mixed(p, a, a, x)


def r_dot(r: RationalFn, a: Mat, x: Mat) -> Mat:
    """Derivative of ``a -> r(a)`` for ``r = p/q``: ``q(a)^-1 (p_dot(x) - q_dot(x) r(a))``."""
    _same_square(a, x)
    qinv = _den_inverse(r.den, a)
    ra = poly_eval_matrix(r.num, a) @ qinv
    return qinv @ (p_dot(r.num, a, x) - p_dot(r.den, a, x) @ ra)


def f_dot_series(f, a: Mat, x: Mat) -> Mat:
    """Derivative of a truncated series ``f = sum f_j p^j`` at a ``p``-primary ``a``.

    With ``minpoly(a) = p^m`` and ``k`` least such that ``p(a)^k`` kills
    ``p_dot(p, a, x)``, any truncation ``F_n`` with ``n >= m + k`` gives the
    same value; ``f`` must carry at least that many digits.
    """
    _same_square(a, x)
    p = f.p
    if p.spec != a.spec:
        raise InputError("series and operator over different fields")
    m = primary_exponent(a, p)
    pa = poly_eval_matrix(p, a)
    w = p_dot(p, a, x)
    k = 0
    while not w.is_zero():
        w = pa @ w
        k += 1
    need = m + k
    if f.N < need:
        raise TruncationTooShort(f"series needs at least {need} digits, has {f.N}", required=need)
    return p_dot(f.to_poly(need), a, x)


# -- Sylvester equations ---------------------------------------------------

@dataclass(frozen=True)
class SylvesterSolution:
    x: Mat
    v: Poly
    route: str


def sylvester_solution(c: Mat, e: Mat, y: Mat, route: str = "auto") -> SylvesterSolution:
    """Solve ``cx - xe = y`` as ``x = v(c)^-1 f_dot_mixed(v, c, e, y)``, ``v = minpoly(e)``.

    ``route="transpose"`` solves ``e^T x^T - x^T c^T = -y^T`` instead, using
    ``v = minpoly(c)``; ``"auto"`` takes whichever ``v`` has smaller degree.
    """
    if not c.is_square or not e.is_square:
        raise NotSquare("c and e must be square")
    if y.shape != (c.rows, e.rows):
        raise SizeMismatch(f"y must be {c.rows}x{e.rows}, got {y.rows}x{y.cols}")
    c._check(e)
    c._check(y)
    mc, me = minimal_polynomial(c), minimal_polynomial(e)
    g = poly_gcd(mc, me)
    if not g.is_one():
        raise NotCoprime(f"minimal polynomials share the factor {g}", gcd=g)
    if route == "auto":
        route = "transpose" if mc.degree < me.degree else "direct"
    if route == "direct":
        return SylvesterSolution(_annihilator_solve(c, e, y, me), me, route)
    if route == "transpose":
        xt = _annihilator_solve(e.T, c.T, -y.T, mc)
        return SylvesterSolution(xt.T, mc, route)
    raise InputError(f"unknown route {route!r}")


def _annihilator_solve(c, e, y, v):
    vc = poly_eval_matrix(v, c)
    return mat_inverse(vc) @ f_dot_mixed(v, c, e, y)


def sylvester_solve(c: Mat, e: Mat, y: Mat, route: str = "auto") -> Mat:
    return sylvester_solution(c, e, y, route).x


def sylvester_unique(c: Mat, e: Mat) -> bool:
    """Is ``x -> cx - xe`` injective (trivial null space)?"""
    return mat_nullspace(sylvester_operator(c, e)).dim == 0


# -- range and kernel inclusions ------------------------------------------

@dataclass(frozen=True)
class RangeKernelReport:
    b_in_bicommutant: bool
    kernel_included: bool
    range_included: bool
    transpose_range_included: bool
    witness: Optional[Poly] = None

    @property
    def agree(self) -> bool:
        return len({self.b_in_bicommutant, self.kernel_included,
                    self.range_included, self.transpose_range_included}) == 1

    def to_json(self) -> dict:
        return {
            "b_in_bicommutant": self.b_in_bicommutant,
            "kernel_included": self.kernel_included,
            "range_included": self.range_included,
            "transpose_range_included": self.transpose_range_included,
            "witness": None if self.witness is None else self.witness.to_str(),
        }


def range_kernel_report(a: Mat, b: Mat) -> RangeKernelReport:
    """Four independently computed tests of ``b`` lying in the bicommutant of ``a``.

    ``ker d_a`` inside ``ker d_b``, ``d_b(L)`` inside ``d_a(L)``, the same
    range inclusion for the transposes, and direct polynomial membership.
    """
    _same_square(a, b)
    try:
        witness = express_as_polynomial(b, a)
    except NotInPolynomialAlgebra:
        witness = None
    da, db = derivation_matrix(a).matrix, derivation_matrix(b).matrix
    kernel = subspace_contains(mat_nullspace(db), mat_nullspace(da))
    rng = subspace_contains(column_space(da), column_space(db))
    dat, dbt = derivation_matrix(a.T).matrix, derivation_matrix(b.T).matrix
    rng_t = subspace_contains(column_space(dat), column_space(dbt))
    return RangeKernelReport(witness is not None, kernel, rng, rng_t, witness)


def preimage_witness(a: Mat, b: Mat, z: Mat) -> Mat:
    """An ``x`` with ``d_a(x) = d_b(z)``, namely ``p_dot(f, a, z)`` where ``b = f(a)``."""
    _same_square(a, b)
    _same_square(a, z)
    try:
        f = express_as_polynomial(b, a)
    except NotInPolynomialAlgebra:
        raise NotInBicommutant("b is not in the bicommutant of a") from None
    return p_dot(f, a, z)
