import random

import pytest
from hypothesis import given, settings

from bicomm import (GF, QQ, AlgebraBasis, Infeasible, Mat, NotEndomorphism,
                    NotInPolynomialAlgebra, NotSquare, Poly, algebra_center,
                    bicommutant_basis, block_diag, commutant_basis, companion,
                    express_as_polynomial, extend_endomorphism, invariant_factors,
                    jordan_block, kernel_power, mat_solve, poly_eval_matrix, polynomial_algebra,
                    restrict, transpose_bicommutant_check)
from bicomm.randgen import primary_operator, random_commuting

import oracles
from strategies import square

F2 = GF(2)
t = Poly.t(QQ)


def E(i, j, n=2, spec=QQ):
    return Mat.unit(i, j, n, spec)


def span(mats, n, spec=QQ):
    return AlgebraBasis.span(mats, n, spec)


def test_commutant_examples():
    c = commutant_basis(Mat.diag([1, 2], QQ))
    assert c.dim == 2 and c == span([E(0, 0), E(1, 1)], 2)
    assert commutant_basis(Mat.identity(3, QQ)).dim == 9
    j2 = jordan_block(0, 2, QQ)
    # frozen from tests/oracles.py: sympy rank of the 4x4 commutation system
    assert commutant_basis(j2).dim == 2
    assert commutant_basis(j2) == span([Mat.identity(2, QQ), j2], 2)


def test_bicommutant_examples():
    a = Mat.diag([1, 2], QQ)
    assert bicommutant_basis(a) == span([E(0, 0), E(1, 1)], 2)
    assert bicommutant_basis(Mat.identity(3, QQ)) == span([Mat.identity(3, QQ)], 3)
    j3 = jordan_block(0, 3, QQ)
    b = bicommutant_basis(j3)
    # frozen from tests/oracles.py: nested sympy nullspaces give dim 3
    assert b.dim == 3
    assert b == span([Mat.identity(3, QQ), j3, j3 @ j3], 3)


def test_basis_elements_and_membership():
    a = jordan_block(0, 3, QQ)
    b = bicommutant_basis(a)
    assert all(x @ a == a @ x for x in b.basis)
    assert b.contains(a @ a + Mat.identity(3, QQ))
    assert not b.contains(E(0, 1, 3))
    assert b.to_json()[0]["rows"] == 3


def test_center_examples():
    full = span([E(i, j) for i in range(2) for j in range(2)], 2)
    assert algebra_center(full) == span([Mat.identity(2, QQ)], 2)
    diag = span([E(0, 0), E(1, 1)], 2)
    assert algebra_center(diag) == diag
    a = block_diag(jordan_block(0, 2, QQ), jordan_block(0, 1, QQ))
    assert [f.to_str() for f in invariant_factors(a)] == ["t", "t^2"]
    center = algebra_center(commutant_basis(a))
    # frozen from tests/oracles.py: commutant dim 5, bicommutant dim 2
    assert commutant_basis(a).dim == 5
    assert center.dim == 2
    assert center == bicommutant_basis(a) == span([Mat.identity(3, QQ), a], 3)


@pytest.mark.parametrize("b, a, expected", [
    (None, companion(t ** 3 - 2), "3*t + t^2"),
    (E(0, 0), Mat.diag([1, 2], QQ), "2 - t"),
    (Mat.identity(2, QQ), jordan_block(0, 2, QQ), "1"),
])
def test_express_as_polynomial(b, a, expected):
    if b is None:
        b = a @ a + a.scale(QQ.convert(3))
    f = express_as_polynomial(b, a)
    assert f.to_str() == expected
    assert poly_eval_matrix(f, a) == b


def test_express_not_in_algebra():
    with pytest.raises(NotInPolynomialAlgebra):
        express_as_polynomial(E(0, 1), Mat.diag([1, 2], QQ))
    with pytest.raises(NotSquare):
        express_as_polynomial(Mat([[1, 2]], QQ), Mat([[1, 2]], QQ))


@pytest.mark.parametrize("a", [
    jordan_block(0, 2, QQ),
    Mat.diag([1, 2], QQ),
    companion(Poly.parse("t^3 + t + 1", F2)),
    block_diag(jordan_block(0, 3, QQ), jordan_block(0, 1, QQ)),
])
def test_transpose_check_examples(a):
    assert transpose_bicommutant_check(a)


def test_transpose_check_matches_exhaustive_f2():
    # frozen from tests/oracles.py: 8 elements, transposes match
    c3 = [[0, 0, 1], [1, 0, 1], [0, 1, 0]]
    assert len(oracles.f2_bicommutant(c3)) == 2 ** bicommutant_basis(Mat(c3, F2)).dim


def test_not_square_errors():
    for fn in (commutant_basis, bicommutant_basis, transpose_bicommutant_check):
        with pytest.raises(NotSquare):
            fn(Mat([[1, 2]], QQ))


@given(square(max_n=5))
@settings(max_examples=50)
def test_double_commutant_properties(a):
    comm = commutant_basis(a)
    bic = bicommutant_basis(a)
    degs = [f.degree for f in invariant_factors(a)]
    assert comm.dim == sum(min(x, y) for x in degs for y in degs)
    assert bic == polynomial_algebra(a)
    assert algebra_center(comm) == bic


@given(square(max_n=4))
@settings(max_examples=40)
def test_transpose_property(a):
    assert transpose_bicommutant_check(a)


# -- endomorphism extension ------------------------------------------------

def test_extend_examples():
    j2 = jordan_block(0, 2, QQ)
    assert extend_endomorphism(j2, t, 1, Mat([[0]], QQ)) == Mat.zeros(2, 2, QQ)
    assert extend_endomorphism(j2, t, 1, Mat([[1]], QQ)) == Mat.identity(2, QQ)


def test_extend_rejects_non_endomorphisms():
    a = block_diag(jordan_block(0, 2, QQ), jordan_block(0, 2, QQ))
    # U_2 is all of F^4 and a|U_2 = a; E_21 does not commute with a
    with pytest.raises(NotEndomorphism):
        extend_endomorphism(a, t, 2, E(1, 0, 4))
    with pytest.raises(NotEndomorphism):
        extend_endomorphism(a, t, 1, Mat.identity(3, QQ))


def test_swap_on_mixed_kernel_has_no_extension():
    """The kernel of J3 + J1 is span{e1, e4}; swapping them cannot be extended.

    Any extension X to ker a^2 = span{e1, e2, e4} must satisfy
    X e1 = X a e2 = a X e2, which lies in a(ker a^2) = span{e1}, yet the
    swap sends e1 to e4.
    """
    a = block_diag(jordan_block(0, 3, QQ), jordan_block(0, 1, QQ))
    u1 = kernel_power(a, t, 1)
    assert u1.basis == Mat.from_columns([[1, 0, 0, 0], [0, 0, 0, 1]], QQ)
    swap = Mat([[0, 1], [1, 0]], QQ)
    assert swap @ restrict(a, u1) == restrict(a, u1) @ swap
    with pytest.raises(Infeasible):
        extend_endomorphism(a, t, 1, swap)
    # independent confirmation: sympy finds no solution of the same system
    import sympy
    xs = sympy.symbols("x0:9")
    x = sympy.Matrix(3, 3, xs)
    a2 = sympy.Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])  # a on ker a^2 = span{e1, e2, e4}
    incl = sympy.Matrix([[1, 0], [0, 0], [0, 1]])
    eqs = list(a2 * x - x * a2) + list(x * incl - incl * sympy.Matrix([[0, 1], [1, 0]]))
    assert sympy.solve(eqs, xs, dict=True) == []


def _check_extension(a, p, n, b_n):
    ext = extend_endomorphism(a, p, n, b_n)
    u_next = kernel_power(a, p, n + 1)
    u_n = kernel_power(a, p, n)
    a1 = restrict(a, u_next)
    incl = Mat.from_columns([_coords(u_next, v) for v in u_n.vectors()], a.spec,
                            rows=u_next.dim)
    assert ext @ a1 == a1 @ ext
    assert ext @ incl == incl @ b_n
    return ext


def _coords(sub, v):
    return mat_solve(sub.basis, Mat.column(v, sub.spec)).column_list(0)


@pytest.mark.parametrize("spec", [QQ, GF(3)])
def test_restrictions_of_commuting_maps_always_extend(spec):
    """b_n taken as the restriction of an element of the commutant of a."""
    rng = random.Random(5)
    for _ in range(15):
        a, p = primary_operator(rng, spec, max_dim=8)
        comm = commutant_basis(a)
        c = random_commuting(rng, comm.basis, spec, a.rows)
        for n in (1, 2):
            u = kernel_power(a, p, n)
            if u.dim == 0:
                continue
            b_n = restrict(c, u)
            _check_extension(a, p, n, b_n)


@pytest.mark.parametrize("spec", [QQ, GF(2)])
def test_equal_blocks_always_extend(spec):
    """With blocks of a single size every commuting b_n extends."""
    rng = random.Random(9)
    p = Poly.t(spec)
    for size in (2, 3):
        a = block_diag(*[companion(p ** size)] * 2)
        for n in range(1, size):
            u = kernel_power(a, p, n)
            an = restrict(a, u)
            for _ in range(5):
                b_n = random_commuting(rng, commutant_basis(an).basis, spec, u.dim)
                _check_extension(a, p, n, b_n)
