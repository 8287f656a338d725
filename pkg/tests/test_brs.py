from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmcbrs.brs import (
    DeltaProfile,
    Expansion,
    GammaSpec,
    cond_check,
    delta,
    delta_profile,
    delta_series,
    in_box,
    star_discrepancy_exact,
)
from qmcbrs.digital import DigitalConfig, DigitalSequence, IdentityMatrix, niederreiter_matrices
from qmcbrs.digits import DigitString, PointSet
from qmcbrs.field import GF
from qmcbrs.polyring import parse_poly
from qmcbrs.verify import CertificationError

F2 = GF(2)


def vdc_seq(b=2, L=32):
    F = GF(b)
    return DigitalSequence(DigitalConfig(F, [IdentityMatrix(F)], precision=L))


def nied1(L=64):
    return DigitalSequence(niederreiter_matrices([parse_poly("x+1", F2)], precision=L))


def nied2(L=64):
    return DigitalSequence(niederreiter_matrices([parse_poly("x+1", F2), parse_poly("x^2+x+1", F2)], precision=L))


def test_expansion_forms():
    assert Expansion.from_fraction(Fraction(1, 3), 2) == Expansion(2, (), (0, 1))
    assert Expansion.from_fraction(Fraction(3, 8), 2) == Expansion(2, (0, 1, 1))
    assert str(Expansion.from_fraction(Fraction(5, 6), 2)) == "b:0.1(10)"
    assert Expansion.parse("b:0.0(01)", 2).value() == Fraction(1, 6)
    assert Expansion.parse("0.375", 2).value() == Fraction(3, 8)
    assert Expansion.parse("1", 2).unit
    assert Expansion(2, (1,), (0, 0)).is_finite  # zero period normalizes away
    with pytest.raises(ValueError):
        Expansion(2, (0,), (1,))  # 0.0111... is not canonical
    with pytest.raises(ValueError):
        Expansion(2, (2,))
    with pytest.raises(ValueError):
        Expansion.parse("3/2", 2)
    with pytest.raises(ValueError):
        Expansion.parse("banana", 2)


@given(num=st.integers(0, 10**6), den=st.integers(1, 2000), b=st.integers(2, 12))
def test_expansion_roundtrip(num, den, b):
    v = Fraction(num % den, den)
    e = Expansion.from_fraction(v, b)
    assert e.value() == v
    assert Expansion.parse(str(e), b) == e
    assert e.is_finite == (all(pr in _primes(b) for pr in _primes(v.denominator)))


def _primes(n):
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def test_cond_check_examples():
    assert cond_check(GammaSpec.from_values([Fraction(1, 2)], 2))
    assert not cond_check(GammaSpec.from_values([Fraction(1, 3)], 2))
    assert not cond_check(GammaSpec.from_values([Fraction(3, 4), Fraction(1, 3)], 2))
    assert cond_check(GammaSpec.parse("1/3", 3))


def test_delta_examples():
    pts = vdc_seq().points(0, 16)
    assert delta(pts, GammaSpec.from_values([1], 2)) == 0
    assert delta(pts.slice(0, 1), GammaSpec.from_values([Fraction(1, 2)], 2)) == Fraction(1, 2)
    for m in range(1, 6):
        assert delta(vdc_seq().points(0, 2**m), GammaSpec.from_values([Fraction(1, 2)], 2)) == 0


def test_in_box_matches_fraction_oracle():
    rng = random.Random(5)
    pts = nied2(24).points(0, 200)
    vals = pts.values()  # exact values of the truncated digit strings
    for _ in range(30):
        g = [Fraction(rng.randrange(1, 64), 64), Fraction(rng.randrange(1, 30), 31)]
        mask = in_box(pts, GammaSpec.from_values(g, 2))
        assert mask.tolist() == [x[0] < g[0] and x[1] < g[1] for x in vals]


def test_tie_handling():
    # a truncated point equal to gamma on every stored digit cannot be placed
    x = DigitString((0, 1, 0, 1), base=2, exact=False)
    g = GammaSpec(2, (Expansion(2, (), (0, 1)),))
    with pytest.raises(CertificationError):
        in_box(PointSet.from_strings([(x,)]), g)
    exact = PointSet.from_strings([(DigitString((0, 1, 0, 1), base=2),)])
    assert in_box(exact, g).tolist() == [True]
    assert in_box(exact, GammaSpec.from_values([Fraction(5, 16)], 2)).tolist() == [False]


def test_mixed_radix_needs_exact_points():
    pts = vdc_seq(3, 6).points(0, 9)
    g = GammaSpec.from_values([Fraction(1, 2)], 2)
    assert delta(pts, g) == 5 - Fraction(9, 2)  # 0, 1/9, 2/9, 1/3, 4/9 lie below 1/2


def test_delta_series_telescopes():
    seq = nied2(40)
    g = GammaSpec.from_values([Fraction(3, 8), Fraction(1, 3)], 2)
    whole, den = delta_series(seq.points(0, 300), g)
    a, _ = delta_series(seq.points(0, 120), g)
    inside = int(in_box(seq.points(0, 120), g).sum())
    b, _ = delta_series(seq.points(120, 180), g, inside)
    assert np.array_equal(whole, np.concatenate([a, b]))
    for N in (1, 17, 300):
        assert Fraction(int(whole[N - 1]), den) == delta(seq.points(0, N), g)


@given(st.data())
def test_delta_bounded_by_n_and_volume(data):
    N = data.draw(st.integers(1, 256))
    g = [Fraction(data.draw(st.integers(0, 32)), 32) for _ in range(2)]
    gam = GammaSpec.from_values(g, 2)
    d = delta(nied2(20).points(0, N), gam)
    vol = gam.volume()
    assert -N * vol <= d <= N * (1 - vol)


def _oracle_profile(seq, gamma, m_max):
    b = gamma.base
    pts = seq.points(0, b**m_max)
    running, out = Fraction(0), []
    for m in range(m_max + 1):
        running = max(running, max(abs(delta(pts.slice(0, N), gamma)) for N in range(1, b**m + 1)))
        out.append(running)
    return out


@pytest.mark.parametrize("gamma", ["1/2", "3/8", "1/3", "5/7"])
def test_profile_matches_recomputation(gamma):
    g = GammaSpec.parse(gamma, 2)
    prof = delta_profile(nied1(), g, 7, chunk=19)
    assert prof.sup == _oracle_profile(nied1(), g, 7)
    assert prof.sup == sorted(prof.sup)
    for m, (v, n) in enumerate(zip(prof.sup, prof.n_at_sup)):
        assert 1 <= n <= 2**m
        assert abs(delta(nied1().points(0, n), g)) == v


def test_profile_examples():
    half = delta_profile(nied1(), GammaSpec.parse("1/2", 2), 12)
    assert len(set(half.sup[1:])) == 1 and half.bounded()
    third = delta_profile(nied1(), GammaSpec.parse("1/3", 2), 16)
    assert third.sup[4] < third.sup[8] < third.sup[12] < third.sup[16]
    assert not third.bounded() and not third.anomaly()
    zero = delta_profile(nied1(), GammaSpec.parse("1/3", 2), 0)
    assert zero.sup == [Fraction(2, 3)]  # x_0 = 0 lies in the box


def test_empty_box_is_bounded():
    prof = delta_profile(nied1(), GammaSpec.parse("0", 2), 6)
    assert prof.sup == [0] * 7 and prof.bounded() and cond_check(prof.gamma)


def test_profile_serialization():
    prof = delta_profile(nied1(), GammaSpec.parse("3/8", 2), 5, "nied")
    lines = prof.to_csv().splitlines()
    assert lines[0] == "m,N_at_sup,sup_abs_delta_num,sup_abs_delta_den"
    assert len(lines) == 7
    doc = prof.to_dict()
    assert doc["schema_version"] == 1 and doc["sequence"] == "nied" and doc["cond"]
    assert isinstance(DeltaProfile(**{k: getattr(prof, k) for k in ("sequence_id", "gamma", "base", "sup", "n_at_sup")}).to_json(), str)


def closed_form_1d(xs):
    xs = sorted(xs)
    N = len(xs)
    return max(max(abs(Fraction(i, N) - x), abs(Fraction(i + 1, N) - x)) for i, x in enumerate(xs))


def test_star_discrepancy_examples():
    assert star_discrepancy_exact([(Fraction(0),)]) == 1
    for N in (1, 5, 16):
        assert star_discrepancy_exact([(Fraction(k, N),) for k in range(N)]) == Fraction(1, N)
    with pytest.raises(ValueError):
        star_discrepancy_exact([(0.1, 0.2, 0.3, 0.4)])
    with pytest.raises(ValueError):
        star_discrepancy_exact([(0.5,)] * 5000)


@given(st.lists(st.integers(0, 63), min_size=1, max_size=40))
def test_star_discrepancy_closed_form_1d(ks):
    xs = [Fraction(k, 64) for k in ks]
    assert star_discrepancy_exact([(x,) for x in xs]) == closed_form_1d(xs)


def grid_lower_bound(pts, res=64):
    """Max local discrepancy over corners on the 1/res grid, open and closed boxes."""
    N = len(pts)
    best = Fraction(0)
    for a in range(res + 1):
        for c in range(res + 1):
            y = (Fraction(a, res), Fraction(c, res))
            vol = y[0] * y[1]
            op = sum(1 for p in pts if p[0] < y[0] and p[1] < y[1])
            cl = sum(1 for p in pts if p[0] <= y[0] and p[1] <= y[1])
            best = max(best, vol - Fraction(op, N), Fraction(cl, N) - vol)
    return best


def test_star_discrepancy_grid_oracle_2d():
    rng = random.Random(11)
    for _ in range(4):
        N = rng.randrange(1, 40)
        pts = [(Fraction(rng.randrange(64), 64), Fraction(rng.randrange(64), 64)) for _ in range(N)]
        exact = star_discrepancy_exact(pts)
        assert grid_lower_bound(pts) <= exact
        # every coordinate sits on the grid, so the grid search is exact here
        assert grid_lower_bound(pts) == exact
    p = (Fraction(1, 3), Fraction(1, 5))
    assert star_discrepancy_exact([p, p]) == star_discrepancy_exact([p])


def test_star_discrepancy_of_pointset():
    pts = nied2(12).points(0, 64)
    D = star_discrepancy_exact(pts)
    assert 0 < D < Fraction(1, 4)
    assert D == star_discrepancy_exact(pts.values())
