from __future__ import annotations

import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qmcbrs.field import GF
from qmcbrs.polyring import (
    Poly,
    PolyError,
    format_poly,
    is_irreducible,
    laurent_expand,
    parse_poly,
    poly_gcd,
)

F2, F3, F4 = GF(2), GF(3), GF(4)


def P(text, F=F2):
    return parse_poly(text, F)


def polys(F, max_deg=6):
    return st.lists(st.integers(0, F.order - 1), max_size=max_deg + 1).map(lambda c: Poly(F, tuple(c)))


def all_monic(F, deg):
    for tail in itertools.product(range(F.order), repeat=deg):
        yield Poly(F, tuple(tail) + (1,))


def test_degree_conventions():
    assert Poly(F2).degree == -1
    assert Poly(F2, (0, 0, 0)).degree == -1
    assert P("x^3+1").degree == 3


def test_char2_square():
    assert (P("x+1") * P("x+1")) == P("x^2+1")


def test_divmod_by_one_and_zero():
    f = P("x^4+x+1")
    assert divmod(f, Poly.constant(F2, 1)) == (f, Poly(F2))
    with pytest.raises(ZeroDivisionError):
        divmod(f, Poly(F2))


def test_gcd_examples():
    assert poly_gcd(P("x+1"), P("x^2+x+1")) == Poly.constant(F2, 1)
    assert poly_gcd(P("x^2+1"), P("x+1")) == P("x+1")
    g = poly_gcd(P("2x^2+2", F3), P("x+1", F3))  # 2(x^2+1) has no linear factor over GF(3)
    assert g.degree == 0 and g.is_monic()


def test_irreducibility_examples():
    assert is_irreducible(P("x^2+x+1"))
    assert not is_irreducible(P("x^2+1"))
    assert is_irreducible(P("x^2+1", F3))
    with pytest.raises(PolyError):
        is_irreducible(Poly.constant(F2, 1))


@pytest.mark.parametrize("F,deg", [(F2, 2), (F2, 3), (F2, 4), (F3, 2), (F3, 3), (F4, 2)])
def test_irreducible_by_exhaustive_trial_division(F, deg):
    # oracle: f is irreducible iff no monic divisor of degree 1 .. deg//2 leaves remainder 0
    for f in all_monic(F, deg):
        has_factor = any(
            not (f % g)
            for d in range(1, deg // 2 + 1)
            for g in all_monic(F, d)
        )
        assert is_irreducible(f) == (not has_factor), str(f)


def test_known_irreducible_counts():
    # number of monic irreducibles of degree n over GF(q): (1/n) sum_{d|n} mu(d) q^(n/d)
    assert sum(is_irreducible(f) for f in all_monic(F2, 4)) == 3
    assert sum(is_irreducible(f) for f in all_monic(F3, 3)) == 8
    assert sum(is_irreducible(f) for f in all_monic(F4, 2)) == 6


def test_laurent_examples():
    assert laurent_expand(Poly.constant(F2, 1), P("x+1"), 5).coeffs == [1, 1, 1, 1, 1]
    assert laurent_expand(Poly(F2), P("x^2+1"), 4).coeffs == [0, 0, 0, 0]
    assert laurent_expand(Poly.constant(F2, 1), P("x"), 3).coeffs == [1, 0, 0]
    with pytest.raises(PolyError):
        laurent_expand(P("x^2"), P("x+1"), 3)
    with pytest.raises(ZeroDivisionError):
        laurent_expand(Poly.constant(F2, 1), Poly(F2), 3)


def _multiply_back_ok(f, g, coeffs):
    # f x^L - g * (sum a(r) x^(L-1-r)) must be a remainder of degree < deg g
    L = len(coeffs)
    A = Poly(f.field, tuple(reversed(coeffs)))
    return (f.shift(L) - g * A).degree < g.degree


@pytest.mark.parametrize("F", [F2, F3, F4])
@given(data=st.data())
def test_laurent_multiply_back(F, data):
    g = data.draw(polys(F, 5))
    assume(g.degree >= 1)
    f = data.draw(polys(F, 5)) % g
    L = data.draw(st.integers(0, 30))
    tail = laurent_expand(f, g, L)
    assert _multiply_back_ok(f, g, tail.coeffs)


@given(g=polys(F3, 4), f=polys(F3, 4), L1=st.integers(0, 20), L2=st.integers(0, 20))
def test_laurent_prefix_stability(g, f, L1, L2):
    assume(g.degree >= 1)
    f = f % g
    short = laurent_expand(f, g, L1)
    longer = laurent_expand(f, g, L1 + L2)
    assert longer.coeffs[:L1] == short.coeffs
    assert short.extend(L1 + L2).coeffs == longer.coeffs
    assert short[L1 + L2 + 3] == laurent_expand(f, g, L1 + L2 + 4).coeffs[-1]


@pytest.mark.parametrize("F", [F2, F3, F4])
@given(data=st.data())
def test_division_identity(F, data):
    f = data.draw(polys(F, 7))
    g = data.draw(polys(F, 4))
    assume(g)
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@pytest.mark.parametrize("F", [F2, F3, F4])
@given(data=st.data())
def test_gcd_divides_both(F, data):
    f = data.draw(polys(F, 6))
    g = data.draw(polys(F, 6))
    assume(f or g)
    d = poly_gcd(f, g)
    assert d.is_monic()
    assert not (f % d) and not (g % d)


@given(f=polys(F3, 5), g=polys(F3, 5), h=polys(F3, 5))
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == Poly(F3)
    assert f * g == g * f


def test_evaluation_and_powers():
    f = P("x^2+x+1", F3)
    assert [f(a) for a in range(3)] == [1, 0, 1]
    assert P("x+1") ** 3 == P("x^3+x^2+x+1")


def test_parse_and_format_roundtrip():
    for text in ("x^2+x+1", "x", "1", "x^5+x^2"):
        assert format_poly(P(text)) == text
    assert format_poly(P("2x^3+x+2", F3)) == "2x^3+x+2"
    f = parse_poly("[1,2,3]", F4)  # x^2 + 2x + 3 with digit coefficients
    assert f.coeffs == (3, 2, 1)
    assert format_poly(f) == "[1,2,3]"
    assert parse_poly("[1,1,1]", F2) == P("x^2+x+1")
    for bad in ("", "x^", "3x", "x+*"):
        with pytest.raises(PolyError):
            P(bad)
    with pytest.raises(PolyError):
        parse_poly("x+1", F4)
    with pytest.raises(PolyError):
        parse_poly("[4,1]", F4)
