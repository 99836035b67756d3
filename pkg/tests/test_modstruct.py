import pytest
from hypothesis import given, settings

from bicomm import (GF, QQ, Mat, NotSquare, Poly, PolyMat, block_diag, characteristic_polynomial,
                    companion, invariant_factors, jordan_block, mat_nullspace,
                    minimal_polynomial, poly_eval_matrix, primary_decomposition,
                    smith_normal_form)
from bicomm.modstruct import primary_exponent, structure_violations, vector_annihilator

import oracles
from strategies import square

F2 = GF(2)


def P(s, spec=QQ):
    return Poly.parse(s, spec)


def strs(polys):
    return [f.to_str() for f in polys]


@pytest.mark.parametrize("a, expected", [
    (jordan_block(0, 3, QQ), "t^3"),
    (Mat.identity(4, QQ), "-1 + t"),
    (companion(P("t^2 + 1")), "1 + t^2"),
    (Mat.diag([2, 2, 3], QQ), "6 - 5*t + t^2"),
    (Mat.zeros(0, 0, QQ), "1"),
])
def test_minimal_polynomial(a, expected):
    assert minimal_polynomial(a).to_str() == expected


def test_vector_annihilator():
    a = jordan_block(0, 3, QQ)
    assert vector_annihilator(a, [0, 0, 1]).to_str() == "t^3"
    assert vector_annihilator(a, [1, 0, 0]).to_str() == "t"
    assert vector_annihilator(a, [0, 0, 0]).to_str() == "1"


def test_not_square():
    with pytest.raises(NotSquare):
        minimal_polynomial(Mat([[1, 2]], QQ))
    with pytest.raises(NotSquare):
        invariant_factors(Mat([[1, 2]], QQ))


def _check_snf(a, expected_diag):
    m = PolyMat.characteristic(a)
    u, d, w = smith_normal_form(m)
    assert u @ m @ w == d
    assert d.is_diagonal()
    assert strs(d.diagonal()) == expected_diag
    assert u.det().is_constant() and not u.det().is_zero()
    assert w.det().is_constant() and not w.det().is_zero()


def test_snf_examples():
    _check_snf(Mat.zeros(2, 2, QQ), ["t", "t"])
    _check_snf(jordan_block(0, 2, QQ), ["1", "t^2"])
    # frozen: (t-1)(t-2) expanded, product checked against the sympy charpoly oracle
    _check_snf(Mat.diag([1, 2], QQ), ["1", "2 - 3*t + t^2"])


@pytest.mark.parametrize("a, expected", [
    # frozen from tests/oracles.py: charpoly of diag(1,1,2) is -2 + 5t - 4t^2 + t^3
    (Mat.diag([1, 1, 2], QQ), ["-1 + t", "2 - 3*t + t^2"]),
    (block_diag(jordan_block(0, 2, QQ), jordan_block(0, 2, QQ)), ["t^2", "t^2"]),
    (companion(P("t^3 - 2")), ["-2 + t^3"]),
    (Mat.zeros(0, 0, QQ), []),
])
def test_invariant_factors(a, expected):
    assert strs(invariant_factors(a)) == expected


def test_invariant_factors_eigenspace_counts():
    a = Mat.diag([1, 1, 2], QQ)
    assert oracles.charpoly_coeffs_q([[1, 0, 0], [0, 1, 0], [0, 0, 2]]) == ["-2", "5", "-4", "1"]
    assert mat_nullspace(a - Mat.identity(3, QQ)).dim == 2
    assert mat_nullspace(a - Mat.identity(3, QQ).scale(QQ.convert(2))).dim == 1


def components(ms):
    return [(c.prime.to_str(), c.multiplicity, c.dimension) for c in ms.primary_components]


def test_decomposition_diagonal():
    ms = primary_decomposition(Mat.diag([1, 1, 2], QQ))
    assert components(ms) == [("-1 + t", 1, 2), ("-2 + t", 1, 1)]
    assert structure_violations(ms) == []


def test_decomposition_primary_block():
    a = jordan_block(0, 2, QQ)
    ms = primary_decomposition(a)
    assert components(ms) == [("t", 2, 2)]
    assert ms.primary_components[0].projection == Mat.identity(2, QQ)


def test_decomposition_f2_companion():
    a = companion(P("t^3 + t^2 + t", F2))
    ms = primary_decomposition(a)
    # frozen from tests/oracles.py: sympy factor_list mod 2 gives t and t^2+t+1
    assert components(ms) == [("t", 1, 1), ("1 + t + t^2", 1, 2)]
    projs = [c.projection for c in ms.primary_components]
    for e in projs:
        assert e @ e == e and e @ a == a @ e
    assert (projs[0] @ projs[1]).is_zero()
    assert projs[0] + projs[1] == Mat.identity(3, F2)


def test_decomposition_empty():
    ms = primary_decomposition(Mat.zeros(0, 0, QQ))
    assert ms.min_poly.is_one() and ms.char_poly.is_one()
    assert list(ms.primary_components) == []


def test_primary_exponent():
    assert primary_exponent(jordan_block(0, 3, QQ), Poly.t(QQ)) == 3
    from bicomm import NotPrimary
    with pytest.raises(NotPrimary):
        primary_exponent(Mat.diag([0, 1], QQ), Poly.t(QQ))


@given(square(max_n=6))
@settings(max_examples=80)
def test_structure_invariants(a):
    ms = primary_decomposition(a)
    assert structure_violations(ms) == []
    assert ms.char_poly == characteristic_polynomial(a)
    assert poly_eval_matrix(ms.min_poly, a).is_zero()


@given(square(max_n=5))
def test_smith_form_reconstructs(a):
    m = PolyMat.characteristic(a)
    u, d, w = smith_normal_form(m)
    assert u @ m @ w == d
    diag = d.diagonal()
    for f, g in zip(diag, diag[1:]):
        assert f.divides(g)
    assert all(f.is_monic() for f in diag)
    assert u.det().degree == 0 and w.det().degree == 0


@given(square(max_n=5))
def test_char_poly_matches_bareiss_determinant(a):
    assert PolyMat.characteristic(a).det() == characteristic_polynomial(a)


@given(square(max_n=5, spec=QQ))
@settings(max_examples=25)
def test_char_poly_matches_sympy(a):
    rows = [[QQ.to_str(x) for x in r] for r in a.data]
    assert [QQ.to_str(c) for c in characteristic_polynomial(a).coeffs] == \
        oracles.charpoly_coeffs_q(rows)
