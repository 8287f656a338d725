from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import floor

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmcbrs.digital import DigitalSequence, niederreiter_matrices
from qmcbrs.digits import DigitString, PointSet
from qmcbrs.field import GF
from qmcbrs.polyring import parse_poly
from qmcbrs.radinv import vdc
from qmcbrs.verify import (
    CertificationError,
    ElementaryInterval,
    admissibility,
    compositions,
    digit_neg,
    digit_shift,
    digit_unshift,
    exact_t_value,
    int_shift,
    int_unshift,
    is_d_admissible,
    is_d_admissible_net,
    is_net,
    norm_b,
    norm_b_int,
    weak_admissibility,
)

F2 = GF(2)


def pair_points(m, start=0, L=64):
    cfg = niederreiter_matrices([parse_poly("x+1", F2), parse_poly("x^2+x+1", F2)], precision=L)
    return DigitalSequence(cfg).points(start, 2**m)


def ds(text, b):
    return DigitString(tuple(int(c) for c in text), base=b)


def brute_is_net(values, b, t, m, s):
    """Direct definition: every elementary interval of volume b^(t-m) holds b^t points."""
    for d in itertools.product(range(m - t + 1), repeat=s):
        if sum(d) != m - t:
            continue
        counts = {}
        for x in values:
            key = tuple(floor(x[i] * b ** d[i]) for i in range(s))
            counts[key] = counts.get(key, 0) + 1
        if len(counts) != b ** (m - t) or any(c != b**t for c in counts.values()):
            return False
    return True


def test_elementary_interval():
    E = ElementaryInterval(2, (1, 3), (1, 2))
    assert E.volume == Fraction(1, 8)
    assert E.contains((Fraction(1, 2), Fraction(3, 4)))
    assert not E.contains((Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(ValueError):
        ElementaryInterval(2, (2,), (1,))


def test_compositions_count():
    from math import comb

    for k, s in [(0, 1), (3, 2), (5, 3), (4, 4)]:
        got = list(compositions(k, s))
        assert len(got) == comb(k + s - 1, s - 1) == len(set(got))
        assert all(sum(c) == k for c in got)


def test_repeated_point_is_only_a_trivial_net():
    pts = PointSet.from_base(np.zeros((8, 2, 5), dtype=np.int64), 2, exact=True)
    for t in range(3):
        rep = is_net(pts, 2, t, 3)
        assert not rep.verified
        assert rep.violation is not None and rep.violation_count != 2**t
    assert is_net(pts, 2, 3, 3).verified
    assert exact_t_value(pts, 2, 3) == 3


def test_grid_has_t_zero():
    for b, m in [(2, 5), (3, 3)]:
        pts = PointSet.from_strings([(vdc(n, b, m),) for n in range(b**m)])
        assert exact_t_value(pts, b, m) == 0


def test_pair_net_examples():
    pts = pair_points(8)
    rep = is_net(pts, 2, 1, 8)
    assert rep.verified and rep.exact_t == 1
    assert not is_net(pts, 2, 0, 8).verified
    doc = json.loads(is_net(pts, 2, 0, 8).to_json())
    assert set(doc["violation"]) == {"a", "d"}


def test_net_input_errors():
    pts = pair_points(3)
    with pytest.raises(ValueError):
        is_net(pts, 2, 1, 4)
    with pytest.raises(ValueError):
        is_net(pts, 3, 1, 3)
    with pytest.raises(ValueError):
        is_net(pts, 2, 4, 3)


@st.composite
def small_point_sets(draw):
    b = draw(st.sampled_from([2, 3]))
    m = draw(st.integers(1, 3 if b == 2 else 2))
    s = draw(st.integers(1, 2))
    L = m
    arr = draw(st.lists(st.integers(0, b - 1), min_size=b**m * s * L, max_size=b**m * s * L))
    digits = np.array(arr, dtype=np.int64).reshape(b**m, s, L)
    return b, m, s, PointSet.from_base(digits, b, exact=True)


@given(small_point_sets())
def test_is_net_agrees_with_direct_definition(case):
    b, m, s, pts = case
    values = pts.values()
    t_found = None
    for t in range(m + 1):
        expected = brute_is_net(values, b, t, m, s)
        assert is_net(pts, b, t, m, with_exact_t=False).verified == expected
        if expected and t_found is None:
            t_found = t
    assert exact_t_value(pts, b, m) == t_found


@given(small_point_sets())
def test_net_property_is_monotone_in_t(case):
    b, m, s, pts = case
    flags = [is_net(pts, b, t, m, with_exact_t=False).verified for t in range(m + 1)]
    assert flags == sorted(flags)


def test_block_property():
    for m in range(2, 9):
        for k in range(3):
            assert is_net(pair_points(m, k * 2**m), 2, 1, m, with_exact_t=False).verified


def test_shift_examples():
    assert digit_shift(ds("12", 3), ds("21", 3)) == ds("00", 3)
    x = ds("1011", 2)
    assert digit_shift(x, ds("0000", 2)) == x
    assert digit_shift(x, x) == ds("0000", 2)
    with pytest.raises(ValueError):
        digit_shift(ds("1", 2), ds("1", 3))


@pytest.mark.parametrize("b", [2, 3, 4])
@pytest.mark.parametrize("L", [1, 2, 3])
def test_shift_is_abelian_group_exhaustive(b, L):
    elems = [DigitString(d, base=b) for d in itertools.product(range(b), repeat=L)]
    zero = DigitString((0,) * L, base=b)
    for x in elems:
        assert digit_shift(x, zero) == x
        assert digit_shift(x, digit_neg(x)) == zero
        assert digit_unshift(digit_shift(x, x), x) == x
    triples = elems if len(elems) <= 16 else elems[:: max(1, len(elems) // 16)]
    for x, y, z in itertools.product(triples, repeat=3):
        assert digit_shift(digit_shift(x, y), z) == digit_shift(x, digit_shift(y, z))
        assert digit_shift(x, y) == digit_shift(y, x)


def test_shift_over_gf4_is_not_integer_addition():
    # phi(1) + phi(1) = 0 in GF(4), unlike (1 + 1) mod 4
    assert digit_shift(ds("1", 4), ds("1", 4)) == ds("0", 4)
    assert digit_shift(ds("1", 4), ds("2", 4)) == ds("3", 4)


@given(n1=st.integers(0, 10**6), n2=st.integers(0, 10**6), b=st.sampled_from([2, 3, 4, 5]))
def test_int_shift_inverse(n1, n2, b):
    assert int_unshift(int_shift(n1, n2, b), n2, b) == n1
    assert int_shift(n1, n2, b) == int_shift(n2, n1, b)


def test_norm_examples():
    assert norm_b(ds("01", 2)).value == Fraction(1, 4)
    assert norm_b(ds("2000", 3)).value == Fraction(1, 3)
    assert norm_b_int(5, 2) == 4
    assert norm_b_int(1, 7) == 1
    assert norm_b_int(0, 2) == 0
    z = DigitString((0,) * 6, base=2, exact=False)
    n = norm_b(z)
    assert n.truncated and n.value == Fraction(1, 2**7)
    assert norm_b(DigitString((0,) * 6, base=2, exact=True)).value == 0


@given(st.data())
def test_norm_symmetry(data):
    b = data.draw(st.sampled_from([2, 3, 4, 5]))
    L = data.draw(st.integers(1, 8))
    dig = st.lists(st.integers(0, b - 1), min_size=L, max_size=L).map(lambda d: DigitString(tuple(d), base=b))
    x, y = data.draw(dig), data.draw(dig)
    assert norm_b(digit_unshift(x, y)) == norm_b(digit_unshift(y, x))


@given(n=st.integers(1, 10**9), b=st.integers(2, 10))
def test_int_norm_brackets(n, b):
    v = norm_b_int(n, b)
    assert v <= n < v * b


def test_weak_admissibility_examples():
    pts = PointSet.from_strings([(vdc(n, 2, 8),) for n in range(16)])
    assert weak_admissibility(pts, 4) > 0
    twin = PointSet.from_strings([(ds("0110", 2),), (ds("0110", 2),)])
    assert weak_admissibility(twin) == 0
    fuzzy = PointSet.from_base(np.zeros((2, 1, 4), dtype=np.int64), 2, exact=False)
    with pytest.raises(CertificationError):
        weak_admissibility(fuzzy)


def _digits_int(n, b, R):
    return [(n // b**r) % b for r in range(R)]


def brute_min_product(values_digits, b, N):
    """min over k < n of ||n - k||_b * prod_i ||x_n - x_k||_b, prime b, by direct digit arithmetic."""
    best = None
    R = max(1, len(np.base_repr(N - 1, b)))
    for k in range(N):
        for n in range(k + 1, N):
            dn = [(u - v) % b for u, v in zip(_digits_int(n, b, R), _digits_int(k, b, R))]
            top = max(r for r, c in enumerate(dn) if c)
            prod = Fraction(b) ** top
            for xi, yi in zip(values_digits[n], values_digits[k]):
                diff = [(u - v) % b for u, v in zip(xi, yi)]
                j = next(r for r, c in enumerate(diff) if c)
                prod *= Fraction(1, b ** (j + 1))
            best = prod if best is None else min(best, prod)
    return best


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_admissibility_matches_brute_force(m):
    pts = pair_points(m)
    rep = admissibility(pts)
    assert rep.certified
    assert rep.minimum == brute_min_product(pts.digits.tolist(), 2, 2**m)


def test_pair_is_3_admissible_small():
    pts = pair_points(6)
    assert is_d_admissible(pts, 3)
    assert not is_d_admissible(pts, 2)


def test_uncertified_pass_raises():
    # two-digit precision cannot separate these points, so a pass is undecidable
    pts = pair_points(6, L=2)
    rep = admissibility(pts)
    assert not rep.certified
    with pytest.raises(CertificationError):
        is_d_admissible(pts, 60)


def test_net_form_of_admissibility():
    pts = pair_points(5)
    # kappa_m = 2^-E_max; the strict point-set test needs E_max < m + d
    kappa = weak_admissibility(pts)
    E = kappa.denominator.bit_length() - 1
    assert is_d_admissible_net(pts, E - 5 + 1, 5)
    assert not is_d_admissible_net(pts, E - 5, 5)
