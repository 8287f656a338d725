"""Structural checks on digital point sets.

Net checks bucket the points by digit prefixes: for a split
``d_1 + ... + d_s = m - t`` the leading ``d_i`` digits of coordinate ``i``
name the elementary interval containing the point, so one ``bincount``
per split decides the whole family of intervals of that shape.

The b-adic norm ``||x||_b = b^(-k-1)`` (``k`` leading zero digits) and the
digit-wise shift ``x (+) y`` are computed in F_b through ``phi``, so the
shift is a group for every prime power ``b``.  Norm products are handled
as integer exponents: ``||x||_b`` of a point in ``[0,1)^s`` is
``b^-E`` with ``E = sum_i (k_i + 1)``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .digits import DigitString, PointSet
from .field import GF

__all__ = [
    "AdmissibilityReport",
    "BAdicNorm",
    "CertificationError",
    "ElementaryInterval",
    "NetReport",
    "admissibility",
    "compositions",
    "digit_neg",
    "digit_shift",
    "digit_unshift",
    "exact_t_value",
    "int_shift",
    "int_unshift",
    "is_d_admissible",
    "is_d_admissible_net",
    "is_net",
    "norm_b",
    "norm_b_int",
    "weak_admissibility",
]


class CertificationError(RuntimeError):
    """The stored precision is too small to decide the question exactly."""


@dataclass(frozen=True)
class ElementaryInterval:
    base: int
    a: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.d):
            raise ValueError("a and d must have the same length")
        for ai, di in zip(self.a, self.d):
            if di < 0 or not 0 <= ai < self.base**di:
                raise ValueError(f"bad interval component a={ai}, d={di}")

    @property
    def volume(self) -> Fraction:
        return Fraction(1, self.base ** sum(self.d))

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(
            Fraction(ai, self.base**di) <= x < Fraction(ai + 1, self.base**di)
            for ai, di, x in zip(self.a, self.d, point)
        )


@dataclass
class NetReport:
    m: int
    s: int
    b: int
    t: int
    verified: bool
    violation: ElementaryInterval | None = None
    violation_count: int | None = None
    exact_t: int | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.violation is not None:
            out["violation"] = {"a": list(self.violation.a), "d": list(self.violation.d)}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ``(d_1..d_parts)`` of nonnegative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _as_pointset(points) -> PointSet:
    if isinstance(points, PointSet):
        return points
    return PointSet.from_strings(points)


def _net_violation(P: PointSet, b: int, t: int, m: int):
    """First ``(interval, count)`` breaking the (t,m,s)-net property, else ``None``."""
    k = m - t
    s = P.dimension
    target = b**t
    for d in compositions(k, s):
        key = np.zeros(len(P), dtype=np.int64)
        for i, di in enumerate(d):
            for j in range(di):
                key = key * b + P.digits[:, i, j]
        counts = np.bincount(key, minlength=b**k)
        bad = np.nonzero(counts != target)[0]
        if bad.size:
            code = int(bad[0])
            a = []
            for di in reversed(d):
                code, ai = divmod(code, b**di)
                a.append(ai)
            return ElementaryInterval(b, tuple(reversed(a)), d), int(counts[bad[0]])
    return None


def _check_net_input(P: PointSet, b: int, t: int, m: int):
    if P.base != b:
        raise ValueError(f"points are not base-{b} digit strings")
    if len(P) != b**m:
        raise ValueError(f"a net in base {b} with m={m} needs {b**m} points, got {len(P)}")
    if not 0 <= t <= m:
        raise ValueError("need 0 <= t <= m")
    if P.precision < m - t:
        raise ValueError(f"precision {P.precision} < m - t = {m - t}")


def exact_t_value(points, b: int, m: int) -> int:
    """Least ``t`` for which the points form a (t,m,s)-net (binary search)."""
    P = _as_pointset(points)
    _check_net_input(P, b, m, m)
    lo, hi = 0, m  # t = m always holds
    if P.precision < m:
        lo = m - P.precision
    while lo < hi:
        mid = (lo + hi) // 2
        if _net_violation(P, b, mid, m) is None:
            hi = mid
        else:
            lo = mid + 1
    return lo


def is_net(points, b: int, t: int, m: int, with_exact_t: bool = True) -> NetReport:
    P = _as_pointset(points)
    _check_net_input(P, b, t, m)
    found = _net_violation(P, b, t, m)
    report = NetReport(m, P.dimension, b, t, found is None)
    if found is not None:
        report.violation, report.violation_count = found
    if with_exact_t:
        report.exact_t = exact_t_value(P, b, m)
    return report


def _same_shape(x: DigitString, y: DigitString):
    if x.base is None or x.base != y.base:
        raise ValueError("digit shift needs two strings in the same single base")
    if x.precision != y.precision:
        raise ValueError("digit shift needs equal precision")


def digit_shift(x: DigitString, y: DigitString) -> DigitString:
    """``x (+) y``: digit-wise addition in F_b."""
    _same_shape(x, y)
    add = GF(x.base).add_table
    return DigitString(tuple(int(add[u, v]) for u, v in zip(x.digits, y.digits)),
                       base=x.base, exact=x.exact and y.exact)


def digit_unshift(x: DigitString, y: DigitString) -> DigitString:
    """``x (-) y``, the inverse of :func:`digit_shift`."""
    _same_shape(x, y)
    sub = GF(x.base).sub_table
    return DigitString(tuple(int(sub[u, v]) for u, v in zip(x.digits, y.digits)),
                       base=x.base, exact=x.exact and y.exact)


def digit_neg(x: DigitString) -> DigitString:
    neg = GF(x.base).neg_table
    return DigitString(tuple(int(neg[u]) for u in x.digits), base=x.base, exact=x.exact)


def _int_digits(n: int, b: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, b)
        out.append(r)
    return out


def _int_op(n1: int, n2: int, b: int, table) -> int:
    d1, d2 = _int_digits(n1, b), _int_digits(n2, b)
    L = max(len(d1), len(d2))
    d1 += [0] * (L - len(d1))
    d2 += [0] * (L - len(d2))
    return sum(int(table[u, v]) * b**j for j, (u, v) in enumerate(zip(d1, d2)))


def int_shift(n1: int, n2: int, b: int) -> int:
    """Digit-wise F_b sum of two nonnegative integers."""
    return _int_op(n1, n2, b, GF(b).add_table)


def int_unshift(n1: int, n2: int, b: int) -> int:
    return _int_op(n1, n2, b, GF(b).sub_table)


@dataclass(frozen=True)
class BAdicNorm:
    """``value`` is exact unless ``truncated``, when it is only an upper bound."""

    value: Fraction
    truncated: bool = False


def norm_b(x: DigitString) -> BAdicNorm:
    b = x.base
    if b is None:
        raise ValueError("the b-adic norm needs a single base")
    for k, d in enumerate(x.digits):
        if d:
            return BAdicNorm(Fraction(1, b ** (k + 1)))
    if x.exact:
        return BAdicNorm(Fraction(0))
    return BAdicNorm(Fraction(1, b ** (x.precision + 1)), truncated=True)


def norm_b_int(n: int, b: int) -> int:
    """``||n||_b = b^k`` for ``b^k <= n < b^(k+1)``; zero for ``n = 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0
    k = 0
    while n >= b ** (k + 1):
        k += 1
    return b**k


def _leading_zero_exponents(diff: np.ndarray):
    """Per pair, ``E = sum_i (k_i + 1)`` and whether any coordinate ran out of digits."""
    nz = diff != 0
    has = nz.any(axis=2)
    k = np.argmax(nz, axis=2)
    L = diff.shape[2]
    k = np.where(has, k, L)
    return (k + 1).sum(axis=1), ~has.all(axis=1)


def _pairs(P: PointSet, m: int | None):
    b = P.base
    if b is None:
        raise ValueError("admissibility needs a single base")
    N = len(P) if m is None else b**m
    if N > len(P):
        raise ValueError(f"need {N} points, got {len(P)}")
    return b, N, GF(b).sub_table


def weak_admissibility(points, m: int | None = None) -> Fraction:
    """``kappa_m = min_{k<n<b^m} ||x_n (-) x_k||_b`` (exact)."""
    P = _as_pointset(points)
    b, N, sub = _pairs(P, m)
    best = 0
    for k in range(N - 1):
        diff = sub[P.digits[k + 1 : N], P.digits[k][None]]
        E, trunc = _leading_zero_exponents(diff)
        if trunc.any():
            zero = ~(diff != 0).any(axis=(1, 2))
            if P.exact and zero.any():
                return Fraction(0)
            raise CertificationError(
                f"precision {P.precision} cannot certify ||x_n (-) x_{k}||_b > 0"
            )
        best = max(best, int(E.max()))
    if N < 2:
        raise ValueError("kappa_m needs at least two points")
    return Fraction(1, b**best)


@dataclass
class AdmissibilityReport:
    """Minimum of ``||n (-) k||_b ||x_n (-) x_k||_b`` over the tested pairs, as ``b^min_exponent``."""

    b: int
    n_points: int
    min_exponent: int
    worst_pair: tuple[int, int]
    certified: bool = True

    @property
    def minimum(self) -> Fraction:
        return Fraction(self.b) ** self.min_exponent

    def passes(self, d: int) -> bool:
        return self.min_exponent >= -d

    def to_dict(self) -> dict:
        out = asdict(self)
        out["minimum"] = str(self.minimum)
        return out


def admissibility(points, m: int | None = None) -> AdmissibilityReport:
    """Exhaustive pairwise minimum for the sequence form of d-admissibility.

    Indices are the sequence indices ``P.start + row``.  A pair whose
    point difference vanishes to the stored precision only gives an upper
    bound on its exponent; any such pair marks the report uncertified.
    """
    P = _as_pointset(points)
    b, N, sub = _pairs(P, m)
    idx = np.arange(P.start, P.start + N, dtype=np.int64)
    R = max(1, len(_int_digits(int(idx[-1]), b)))
    pows = b ** np.arange(R, dtype=np.int64)
    A = (idx[:, None] // pows[None, :]) % b
    best = None
    pair = (0, 0)
    certified = True
    for k in range(N - 1):
        diff = sub[P.digits[k + 1 : N], P.digits[k][None]]
        E, trunc = _leading_zero_exponents(diff)
        if trunc.any() and P.exact:
            zero = ~(diff != 0).any(axis=(1, 2))
            if zero.any():
                n = k + 1 + int(np.argmax(zero))
                return AdmissibilityReport(b, N, -(10**9), (k + P.start, n + P.start), True)
        dn = sub[A[k + 1 : N], A[k][None]]
        top = R - 1 - np.argmax((dn != 0)[:, ::-1], axis=1)
        expo = top - E
        if trunc.any():
            certified = False
        j = int(np.argmin(expo))
        if best is None or expo[j] < best:
            best = int(expo[j])
            pair = (k + P.start, k + 1 + j + P.start)
    if best is None:
        raise ValueError("admissibility needs at least two points")
    return AdmissibilityReport(b, N, best, pair, certified)


def is_d_admissible(points, d: int, m: int | None = None) -> bool:
    """``inf ||n (-) k||_b ||x_n (-) x_k||_b >= b^-d`` over the first ``b^m`` points."""
    rep = admissibility(points, m)
    ok = rep.passes(d)
    # uncertified exponents are upper bounds, so a failure is still certain
    if ok and not rep.certified:
        raise CertificationError("a truncated difference leaves the bound undecided")
    return ok


def is_d_admissible_net(points, d: int, m: int) -> bool:
    """Point-set form: ``min ||x_n (-) x_k||_b > b^(-m-d)`` (strict)."""
    P = _as_pointset(points)
    b, N, sub = _pairs(P, m)
    worst = 0
    for k in range(N - 1):
        diff = sub[P.digits[k + 1 : N], P.digits[k][None]]
        E, trunc = _leading_zero_exponents(diff)
        if trunc.any():
            # a truncated coordinate only makes E larger
            if (E[trunc] >= m + d).any():
                return False
            raise CertificationError(f"precision {P.precision} cannot decide the bound")
        worst = max(worst, int(E.max()))
    return worst < m + d
