"""Commutants, bicommutants and centers of matrix algebras.

An :class:`AlgebraBasis` is a linear subspace of ``n x n`` matrices kept as a
canonical :class:`~bicomm.matrix.Subspace` of ``F^(n*n)`` (column-stacked
vectors), so two algebras are equal exactly when their bases are equal.

The bicommutant is computed from its defining equations ``yc = cy`` for a
basis of the commutant.  Its agreement with the polynomials in ``a`` is a
checked property, never assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List

from .errors import (Inconsistent, Infeasible, InputError, NotEndomorphism,
                     NotInPolynomialAlgebra, NotSquare, SizeMismatch)
from .factor import poly_factor
from .matrix import (Mat, Subspace, _nullspace_from_rref, kron, mat_nullspace, mat_solve,
                     nullspace_of_blocks, reduced_rows, sylvester_operator)
from .modstruct import minimal_polynomial
from .poly import Poly, poly_eval_matrix

__all__ = ["AlgebraBasis", "commutant_basis", "bicommutant_basis", "algebra_center",
           "polynomial_algebra", "express_as_polynomial", "transpose_bicommutant_check",
           "kernel_power", "restrict", "extend_endomorphism"]


@dataclass(frozen=True)
class AlgebraBasis:
    n: int
    space: Subspace

    @classmethod
    def span(cls, mats: Iterable[Mat], n: int, spec) -> "AlgebraBasis":
        vecs = [m.vec() for m in mats]
        if any(len(v) != n * n for v in vecs):
            raise SizeMismatch(f"expected {n}x{n} matrices")
        cols = Mat.from_columns(vecs, spec, rows=n * n)
        return cls(n, Subspace.span(cols))

    @property
    def spec(self):
        return self.space.spec

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> List[Mat]:
        n = self.n
        return [Mat.unvec(v, n, n, self.spec) for v in self.space.vectors()]

    def contains(self, m: Mat) -> bool:
        return self.space.contains_vector(m.vec())

    def transpose(self) -> "AlgebraBasis":
        return AlgebraBasis.span((m.T for m in self.basis), self.n, self.spec)

    def to_json(self) -> list:
        return [m.to_json() for m in self.basis]

    def __repr__(self):
        return f"AlgebraBasis(n={self.n}, dim={self.dim}, {self.spec})"


def _square(a: Mat, what: str):
    if not a.is_square:
        raise NotSquare(f"{what} of a {a.rows}x{a.cols} matrix")


def commutant_basis(a: Mat) -> AlgebraBasis:
    """Basis of ``{x : ax = xa}``, the kernel of ``x -> ax - xa``."""
    _square(a, "commutant")
    return AlgebraBasis(a.rows, mat_nullspace(sylvester_operator(a, a)))


def bicommutant_basis(a: Mat) -> AlgebraBasis:
    """Basis of the matrices commuting with every element of the commutant of ``a``.

    The equations ``yc = cy`` are stacked for ``c = a`` (itself in the
    commutant; its reduced system also yields the commutant) followed by a
    commutant basis.  The
    ``d`` independent powers of ``a`` satisfy every equation, so the rank is
    at most ``n^2 - d`` and elimination stops once that bound is reached.
    """
    _square(a, "bicommutant")
    n, spec = a.rows, a.spec
    eqs = reduced_rows(sylvester_operator(a, a))
    comm = AlgebraBasis(n, _nullspace_from_rref(eqs, n * n, spec))
    d = minimal_polynomial(a).degree
    blocks = (sylvester_operator(c, c) for c in comm.basis)
    space = nullspace_of_blocks(blocks, n * n, spec, max_rank=n * n - d, reduced=eqs)
    return AlgebraBasis(n, space)


def algebra_center(algebra: AlgebraBasis) -> AlgebraBasis:
    """Elements of the span that commute with every basis element."""
    n, spec = algebra.n, algebra.spec
    mats = algebra.basis
    m = len(mats)
    if m == 0:
        return algebra

    def blocks():
        for bj in mats:
            cols = [(bk @ bj - bj @ bk).vec() for bk in mats]
            yield Mat.from_columns(cols, spec, rows=n * n)

    coeffs = nullspace_of_blocks(blocks(), m, spec)
    central = []
    for lam in coeffs.vectors():
        z = Mat.zeros(n, n, spec)
        for c, bk in zip(lam, mats):
            if c:
                z = z + bk.scale(c)
        central.append(z)
    return AlgebraBasis.span(central, n, spec)


def polynomial_algebra(a: Mat) -> AlgebraBasis:
    """span{I, a, ..., a^(d-1)} with d the degree of the minimal polynomial."""
    _square(a, "polynomial algebra")
    d = minimal_polynomial(a).degree
    powers = [Mat.identity(a.rows, a.spec)]
    for _ in range(1, d):
        powers.append(powers[-1] @ a)
    return AlgebraBasis.span(powers, a.rows, a.spec)


def express_as_polynomial(b: Mat, a: Mat) -> Poly:
    """The unique ``f`` of degree below ``deg minpoly(a)`` with ``f(a) = b``."""
    _square(a, "polynomial expression")
    if b.shape != a.shape:
        raise SizeMismatch(f"b is {b.rows}x{b.cols}, a is {a.rows}x{a.cols}")
    a._check(b)
    n, spec = a.rows, a.spec
    d = minimal_polynomial(a).degree
    powers = [Mat.identity(n, spec)]
    for _ in range(1, d):
        powers.append(powers[-1] @ a)
    system = Mat.from_columns([p.vec() for p in powers], spec, rows=n * n)
    try:
        sol = mat_solve(system, Mat.column(b.vec(), spec))
    except Inconsistent:
        raise NotInPolynomialAlgebra("b is not a polynomial in a") from None
    return Poly._raw(sol.column_list(0), spec)


def transpose_bicommutant_check(a: Mat) -> bool:
    """Do the transposes of the bicommutant of ``a`` span the bicommutant of ``a.T``?"""
    _square(a, "transpose bicommutant check")
    return bicommutant_basis(a).transpose() == bicommutant_basis(a.T)


# -- extension of endomorphisms along ker p(a)^n ---------------------------

def kernel_power(a: Mat, p: Poly, n: int) -> Subspace:
    """Canonical basis of ``U_n = ker p(a)^n``."""
    _square(a, "kernel")
    return mat_nullspace(poly_eval_matrix(p ** n, a))


def restrict(a: Mat, sub: Subspace) -> Mat:
    """Matrix of ``a`` on an invariant subspace, in the subspace's canonical basis."""
    try:
        return mat_solve(sub.basis, a @ sub.basis)
    except Inconsistent:
        raise InputError("subspace is not invariant under the operator") from None


def extend_endomorphism(a: Mat, p: Poly, n: int, b_n: Mat) -> Mat:
    """Extend an endomorphism of ``U_n = ker p(a)^n`` to ``U_(n+1)``.

    ``b_n`` is given in coordinates of the canonical basis of ``U_n`` (see
    :func:`kernel_power`) and must commute with ``a`` restricted there.  The
    result is in coordinates of the canonical basis of ``U_(n+1)``; it
    commutes with ``a`` there and agrees with ``b_n`` on ``U_n``.  Among all
    extensions the one with free variables zero is returned.

    Raises :class:`Infeasible` when no extension exists.
    """
    _square(a, "extension")
    if p.spec != a.spec:
        raise InputError("prime and operator over different fields")
    if p.degree is None or p.degree < 1 or not p.is_monic():
        raise InputError("p must be a monic polynomial of positive degree")
    fac = poly_factor(p)
    if len(fac.factors) != 1 or fac.factors[0][1] != 1:
        raise InputError(f"{p} is not irreducible")
    if n < 1:
        raise InputError("level n must be at least 1")
    spec = a.spec
    u_n = kernel_power(a, p, n)
    u_next = kernel_power(a, p, n + 1)
    d0, d1 = u_n.dim, u_next.dim
    if b_n.shape != (d0, d0):
        raise NotEndomorphism(f"b_n must be {d0}x{d0} on U_{n}, got {b_n.rows}x{b_n.cols}")
    a0 = restrict(a, u_n)
    if b_n @ a0 != a0 @ b_n:
        raise NotEndomorphism("b_n does not commute with a on U_n")
    a1 = restrict(a, u_next)
    incl = mat_solve(u_next.basis, u_n.basis)  # U_n -> U_(n+1) in coordinates

    # unknown X (d1 x d1): a1 X - X a1 = 0 and X incl = incl b_n
    commute = sylvester_operator(a1, a1)
    restrict_eq = kron(incl.T, Mat.identity(d1, spec))
    system = commute.vstack(restrict_eq)
    rhs = [spec.zero] * (d1 * d1) + (incl @ b_n).vec()
    try:
        sol = mat_solve(system, Mat.column(rhs, spec))
    except Inconsistent:
        raise Infeasible(f"b_{n} has no extension to ker p(a)^{n + 1} commuting with a") from None
    return Mat.unvec(sol.column_list(0), d1, d1, spec)
