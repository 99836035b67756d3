from itertools import product

import pytest
from hypothesis import given, strategies as st

from bicomm import (GF, QQ, InputError, LevelTooHigh, Mat, NotInRp, NotPrimary, Poly,
                    PrimeMismatch, TruncatedPAdic, TruncationTooShort, act_on_module,
                    block_diag, commutant_basis, companion, embed_rational, jordan_block,
                    mat_solve, padic_arith, project)

import oracles
from strategies import polys

F2 = GF(2)
t2 = Poly.t(F2)


def P(s, spec=F2):
    return Poly.parse(s, spec)


def digits(x):
    return [d.to_str() for d in x.digits]


def test_arith_examples():
    p = P("t", QQ)
    x = TruncatedPAdic(p, [P("1", QQ), P("0", QQ)])
    y = TruncatedPAdic(p, [P("0", QQ), P("1", QQ)])
    assert digits(padic_arith(x, y, "add")) == ["1", "1"]
    z = TruncatedPAdic.from_poly(t2 + 1, t2, 3)
    assert digits(z * z) == ["1", "0", "1"]
    zero = TruncatedPAdic.from_poly(Poly.zero(F2), t2, 3)
    assert digits(z * zero) == ["0", "0", "0"]


def test_truncation_to_min_level():
    x = TruncatedPAdic.from_poly(P("1 + t + t^2 + t^3"), t2, 4)
    y = TruncatedPAdic.from_poly(P("1"), t2, 2)
    assert (x + y).N == 2 and digits(x + y) == ["0", "1"]


def test_prime_mismatch():
    x = TruncatedPAdic.from_poly(P("1"), t2, 2)
    y = TruncatedPAdic.from_poly(P("1"), t2 + 1, 2)
    with pytest.raises(PrimeMismatch):
        x + y


def test_digits_of_higher_degree_prime():
    p = P("1 + t + t^2")
    x = TruncatedPAdic.from_poly(P("t^5"), p, 3)
    assert all(d.is_zero() or d.degree < 2 for d in x.digits)
    assert x.to_poly() == P("t^5") % p ** 3


def test_invalid_construction():
    with pytest.raises(InputError):
        TruncatedPAdic(P("t^2"), [P("1")])
    with pytest.raises(InputError):
        TruncatedPAdic(t2, [P("t")])
    with pytest.raises(InputError):
        TruncatedPAdic(t2, [])


def test_embed_examples():
    # (1 + t)(1 + t + t^2) = 1 + t^3 over F_2
    assert digits(embed_rational(P("1"), P("1 + t"), t2, 3)) == ["1", "1", "1"]
    v = P("1 + t + t^3")
    assert digits(embed_rational(v, v, t2, 4)) == ["1", "0", "0", "0"]
    with pytest.raises(NotInRp):
        embed_rational(P("1"), t2, t2, 3)


def test_project_examples():
    x = TruncatedPAdic.from_poly(P("1 + t + t^2"), t2, 3)
    assert project(x, 3) == x
    assert digits(project(x, 1)) == ["1"]
    with pytest.raises(LevelTooHigh):
        project(x, 4)


def test_project_is_multiplicative_exhaustive():
    """Every pair of elements of F_2[t]/(t^3) and every level."""
    elems = [TruncatedPAdic(t2, [Poly([b], F2) for b in bits]) for bits in product((0, 1), repeat=3)]
    for x in elems:
        for y in elems:
            for n in (1, 2, 3):
                assert project(x * y, n) == project(x, n) * project(y, n)
                assert project(x + y, n) == project(x, n) + project(y, n)


def test_json_round_trip():
    x = embed_rational(P("1"), P("1 + t"), t2, 3)
    obj = x.to_json()
    assert obj == {"p": "t", "N": 3, "digits": ["1", "1", "1"]}
    assert TruncatedPAdic.from_json(obj, F2) == x
    with pytest.raises(InputError):
        TruncatedPAdic.from_json({"p": "t", "N": 2, "digits": ["1"]}, F2)


def test_act_on_module_examples():
    a = jordan_block(0, 2, F2)
    xi = Mat.column([1, 0], F2)
    one = TruncatedPAdic.from_poly(P("1"), t2, 2)
    assert act_on_module(one, a, xi) == xi
    f = embed_rational(P("1"), P("1 + t"), t2, 2)
    out = act_on_module(f, a, xi)
    # frozen from tests/oracles.py: brute-force (I + a)^-1 e1 over F_2 is e1
    assert out == Mat.column(oracles.inverse_action_f2([[0, 1], [0, 0]], [1, 0]), F2)
    assert out == mat_solve(Mat.identity(2, F2) + a, xi)
    e2 = Mat.column([0, 1], F2)
    assert act_on_module(f, a, e2) == mat_solve(Mat.identity(2, F2) + a, e2) == \
        Mat.column([1, 1], F2)


def test_act_on_module_ignores_high_digits():
    a = jordan_block(0, 2, F2)
    xi = Mat.column([1, 1], F2)
    f = TruncatedPAdic(t2, [P("1"), P("1"), P("0"), P("1")])
    g = TruncatedPAdic(t2, [P("1"), P("1"), P("1"), P("0")])
    assert act_on_module(f, a, xi) == act_on_module(g, a, xi)


def test_act_on_module_errors():
    f = TruncatedPAdic.from_poly(P("1"), t2, 1)
    with pytest.raises(TruncationTooShort):
        act_on_module(f, jordan_block(0, 2, F2), Mat.column([1, 0], F2))
    with pytest.raises(NotPrimary):
        act_on_module(f, Mat.identity(2, F2), Mat.column([1, 0], F2))


@st.composite
def rp_data(draw):
    spec = draw(st.sampled_from([F2, GF(3), GF(5), QQ]))
    p = draw(st.sampled_from(["t", "1 + t", "1 + t + t^2"] if spec.p == 2 else ["t", "1 + t^2"]
                             if spec.p == 3 else ["t", "2 + t"]))
    p = Poly.parse(p, spec)
    u = draw(polys(spec, 5))
    v = draw(polys(spec, 5, nonzero=True).filter(lambda v: not (v % p).is_zero()))
    n = draw(st.integers(1, 5))
    return u, v, p, n


@given(rp_data())
def test_embed_inverts_denominator(data):
    u, v, p, n = data
    x = embed_rational(u, v, p, n)
    assert (v * x.to_poly() - u) % p ** n == Poly.zero(u.spec)


@given(rp_data(), rp_data())
def test_embed_is_multiplicative(d1, d2):
    u1, v1, p, n1 = d1
    u2, v2, p2, n2 = d2
    if p2 != p:
        return
    n = min(n1, n2)
    lhs = embed_rational(u1, v1, p, n1) * embed_rational(u2, v2, p, n2)
    assert lhs == embed_rational(u1 * u2, v1 * v2, p, n)
    lhs = embed_rational(u1, v1, p, n1) + embed_rational(u2, v2, p, n2)
    assert lhs == embed_rational(u1 * v2 + u2 * v1, v1 * v2, p, n)


@given(st.data())
def test_action_commutes_with_commutant(data):
    spec = GF(3)
    p = Poly.parse("1 + t^2", spec)
    a = block_diag(companion(p ** 2), companion(p))
    f = TruncatedPAdic(p, [data.draw(polys(spec, 1)) for _ in range(3)])
    cols = [act_on_module(f, a, Mat.column(e, spec)).column_list(0)
            for e in Mat.identity(6, spec).columns()]
    fa = Mat.from_columns(cols, spec)
    for c in commutant_basis(a).basis:
        assert fa @ c == c @ fa
