"""Bounded-remainder experiments for anchored boxes ``[0, gamma)``.

``Delta(S, N) = #{n < N : x_n in S} - N * vol(S)`` is kept exact: with
``vol(S) = num/den`` the quantity ``Delta * den`` is an integer, so a whole
stream of points is processed with integer cumulative sums.

Each corner coordinate ``gamma_i`` is a base-b expansion with a finite
preperiod and a (possibly empty) period.  Membership ``x < gamma_i`` is
decided on digits, unrolling the period as far as the points' precision;
a tie over all stored digits is resolved from the tails or reported as a
:class:`~qmcbrs.verify.CertificationError`.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

import numpy as np

from .digits import PointSet
from .verify import CertificationError

__all__ = [
    "DeltaProfile",
    "Expansion",
    "GammaSpec",
    "cond_check",
    "delta",
    "delta_profile",
    "delta_series",
    "in_box",
    "star_discrepancy_exact",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Expansion:
    """``0.pre(period)`` in base ``b``; ``unit`` stands for the value 1."""

    base: int
    pre: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    unit: bool = False

    def __post_init__(self):
        b = self.base
        pre = tuple(int(d) for d in self.pre)
        per = tuple(int(d) for d in self.period)
        if any(not 0 <= d < b for d in pre + per):
            raise ValueError(f"digits must lie in [0, {b})")
        if per and all(d == b - 1 for d in per):
            raise ValueError("all-(b-1) tails are not canonical; use the terminating form")
        if not any(per):
            per = ()
        if self.unit and (pre or per):
            raise ValueError("the unit expansion carries no digits")
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def from_fraction(cls, value, b: int) -> Expansion:
        v = Fraction(value)
        if v == 1:
            return cls(b, unit=True)
        if not 0 <= v < 1:
            raise ValueError(f"gamma must lie in [0, 1], got {v}")
        digits, seen = [], {}
        num, den = v.numerator, v.denominator
        while num and num not in seen:
            seen[num] = len(digits)
            d, num = divmod(num * b, den)
            digits.append(d)
        if not num:
            return cls(b, tuple(digits))
        k = seen[num]
        return cls(b, tuple(digits[:k]), tuple(digits[k:]))

    @classmethod
    def parse(cls, text: str, b: int) -> Expansion:
        """``'1/3'``, ``'0.375'`` (decimal), ``'1'`` or ``'b:0.0(01)'`` (base-b digits)."""
        t = text.strip()
        if t.startswith("b:") and b <= 10 and ":" in t[2:]:
            raise ValueError(f"colon-separated digits are only used for bases above 10: {text!r}")
        m = re.fullmatch(r"b:0\.([0-9:]*?)(?:\(([0-9:]+)\))?", t)
        if m:
            # bases above 10 write digits colon-separated
            split = (lambda s: [int(c) for c in s.split(":")] if b > 10 else [int(c) for c in s])
            pre = split(m.group(1)) if m.group(1) else []
            per = split(m.group(2)) if m.group(2) else []
            return cls(b, tuple(pre), tuple(per))
        try:
            return cls.from_fraction(Fraction(t), b)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse gamma coordinate {text!r}") from None

    @property
    def is_finite(self) -> bool:
        return not self.period

    def value(self) -> Fraction:
        if self.unit:
            return Fraction(1)
        b = self.base
        head = Fraction(sum(d * b ** (len(self.pre) - 1 - j) for j, d in enumerate(self.pre)),
                        b ** len(self.pre))
        if not self.period:
            return head
        P = sum(d * b ** (len(self.period) - 1 - j) for j, d in enumerate(self.period))
        return head + Fraction(P, b ** len(self.pre) * (b ** len(self.period) - 1))

    def digit(self, j: int) -> int:
        """``gamma_j`` for ``j >= 1``."""
        if j <= len(self.pre):
            return self.pre[j - 1]
        if not self.period:
            return 0
        return self.period[(j - 1 - len(self.pre)) % len(self.period)]

    def digits(self, L: int) -> np.ndarray:
        return np.array([self.digit(j) for j in range(1, L + 1)], dtype=np.int64)

    def tail_is_zero(self, L: int) -> bool:
        """Whether every digit past position ``L`` vanishes."""
        return not self.period and len(self.pre) <= L

    def __str__(self):
        if self.unit:
            return "1"
        sep = ":" if self.base > 10 else ""
        body = sep.join(map(str, self.pre))
        if self.period:
            body += "(" + sep.join(map(str, self.period)) + ")"
        return f"b:0.{body}"


@dataclass(frozen=True)
class GammaSpec:
    base: int
    coords: tuple[Expansion, ...]

    @classmethod
    def from_values(cls, values: Sequence, b: int) -> GammaSpec:
        return cls(b, tuple(Expansion.from_fraction(v, b) for v in values))

    @classmethod
    def parse(cls, text: str, b: int) -> GammaSpec:
        """Comma-separated coordinates, each in :meth:`Expansion.parse` form."""
        return cls(b, tuple(Expansion.parse(c, b) for c in text.split(",")))

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if any(c.base != self.base for c in self.coords):
            raise ValueError("all coordinates must use the same base")

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def is_finite(self) -> bool:
        return all(c.is_finite for c in self.coords)

    def volume(self) -> Fraction:
        return prod((c.value() for c in self.coords), start=Fraction(1))

    def values(self) -> tuple[Fraction, ...]:
        return tuple(c.value() for c in self.coords)

    def __str__(self):
        return ",".join(str(c) for c in self.coords)


def cond_check(gamma: GammaSpec) -> bool:
    """True iff every coordinate has a terminating base-b expansion."""
    return gamma.is_finite


def _less_than(digits: np.ndarray, g: Expansion, exact: bool) -> np.ndarray:
    """``x < g`` for each row of an ``(N, L)`` digit array."""
    N, L = digits.shape
    if g.unit:
        return np.ones(N, dtype=bool)
    gd = g.digits(L)
    neq = digits != gd[None, :]
    has = neq.any(axis=1)
    first = np.argmax(neq, axis=1)
    less = digits[np.arange(N), first] < gd[first]
    if not has.all():
        # equal on all stored digits: decide from the tails
        if g.tail_is_zero(L):
            tie = False  # x >= g
        elif exact:
            tie = True  # x's tail is zero, g's is positive
        else:
            raise CertificationError(
                f"a point agrees with gamma={g} on all {L} digits; raise the precision"
            )
        less = np.where(has, less, tie)
    return less


def in_box(points: PointSet, gamma: GammaSpec) -> np.ndarray:
    """Boolean mask of points in ``[0, gamma_1) x ... x [0, gamma_s)``."""
    if gamma.dimension != points.dimension:
        raise ValueError(f"gamma has {gamma.dimension} coordinates, points have {points.dimension}")
    mask = np.ones(len(points), dtype=bool)
    if points.base == gamma.base:
        for i, g in enumerate(gamma.coords):
            mask &= _less_than(points.digits[:, i, :], g, points.exact)
        return mask
    if not points.exact:
        raise CertificationError("mixed-radix comparison needs exact points")
    gv = gamma.values()
    return np.array([all(x < g for x, g in zip(pt, gv)) for pt in points.values()], dtype=bool)


def delta(points: PointSet, gamma: GammaSpec) -> Fraction:
    """Exact ``Delta([0, gamma), first N points)``."""
    count = int(in_box(points, gamma).sum())
    return count - len(points) * gamma.volume()


def delta_series(points: PointSet, gamma: GammaSpec, offset_count: int = 0) -> tuple[np.ndarray, int]:
    """``(den * Delta_N for N = start+1 .. start+len, den)``.

    ``offset_count`` is the number of earlier points already inside the box.
    """
    vol = gamma.volume()
    num, den = vol.numerator, vol.denominator
    counts = np.cumsum(in_box(points, gamma), dtype=np.int64) + offset_count
    Ns = np.arange(points.start + 1, points.start + len(points) + 1, dtype=np.int64)
    if den * (points.start + len(points) + 1) < 2**62 and num < 2**31:
        return counts * den - Ns * num, den
    return counts.astype(object) * den - Ns.astype(object) * num, den


@dataclass
class DeltaProfile:
    """``sup_{1 <= N <= b^m} |Delta|`` for ``m = 0 .. m_max``."""

    sequence_id: str
    gamma: GammaSpec
    base: int
    sup: list[Fraction] = field(default_factory=list)
    n_at_sup: list[int] = field(default_factory=list)

    @property
    def m_max(self) -> int:
        return len(self.sup) - 1

    def bounded(self, m0: int | None = None) -> bool:
        """Desk-scale verdict: the profile is constant on ``[m0, m_max]`` (``m0 = m_max // 2``)."""
        m0 = self.m_max // 2 if m0 is None else m0
        tail = self.sup[m0:]
        return all(v == tail[0] for v in tail)

    def anomaly(self) -> bool:
        return self.bounded() != cond_check(self.gamma)

    def rows(self) -> list[dict]:
        return [
            {"m": m, "N_at_sup": n, "sup_abs_delta_num": v.numerator, "sup_abs_delta_den": v.denominator}
            for m, (v, n) in enumerate(zip(self.sup, self.n_at_sup))
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, ["m", "N_at_sup", "sup_abs_delta_num", "sup_abs_delta_den"],
                           lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows())
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "sequence": self.sequence_id,
            "base": self.base,
            "gamma": str(self.gamma),
            "cond": cond_check(self.gamma),
            "bounded": self.bounded(),
            "anomaly": self.anomaly(),
            "profile": self.rows(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def delta_profile(seq, gamma: GammaSpec, m_max: int, sequence_id: str | None = None,
                  chunk: int = 1 << 16) -> DeltaProfile:
    """Stream the first ``b^m_max`` points of ``seq`` once, keeping running sups.

    ``seq`` needs ``base`` and ``points(start, count) -> PointSet``.
    """
    b = gamma.base
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    total = b**m_max
    best, best_n = -1, 0
    bounds = {b**m: m for m in range(m_max + 1)}
    sup = [Fraction(0)] * (m_max + 1)
    at = [0] * (m_max + 1)
    inside = 0
    den = gamma.volume().denominator
    start = 0
    while start < total:
        count = min(chunk, total - start)
        P = seq.points(start, count)
        series, den = delta_series(P, gamma, inside)
        inside += int(in_box(P, gamma).sum())
        absd = np.abs(series)
        pos = 0
        for stop in sorted(N - start for N in bounds if start < N <= start + count) + [count]:
            seg = absd[pos:stop]
            if len(seg):
                j = int(np.argmax(seg))
                if int(seg[j]) > best:
                    best, best_n = int(seg[j]), start + pos + j + 1
            pos = stop
            m = bounds.get(start + stop)
            if m is not None:
                sup[m] = Fraction(best, den)
                at[m] = best_n
        start += count
    sid = sequence_id or type(seq).__name__
    return DeltaProfile(sid, gamma, b, sup, at)


def _exact_coords(points) -> list[tuple[Fraction, ...]]:
    if isinstance(points, PointSet):
        return points.values()
    return [tuple(Fraction(x) for x in pt) for pt in points]


def star_discrepancy_exact(points, max_points: int = 4096, max_dim: int = 3) -> Fraction:
    """Exact star discrepancy by critical-corner enumeration.

    Every candidate corner has coordinates in ``{x_n^(i)} + {1}``.  At a
    corner ``y`` the open box gives ``vol(y) - #{x < y}/N`` and the
    closed box, reached as a limit from above, gives
    ``#{x <= y}/N - vol(y)``.  Counts come from a cumulative histogram
    over coordinate ranks; a float pass shortlists the corners within
    ``1e-9`` of the maximum and those are re-evaluated with fractions.
    Cost is ``O(N^s)``.
    """
    pts = _exact_coords(points)
    N = len(pts)
    if N == 0:
        raise ValueError("star discrepancy of an empty point set")
    s = len(pts[0])
    if N > max_points or s > max_dim:
        raise ValueError(f"exact star discrepancy is limited to N <= {max_points}, s <= {max_dim}")
    grids, ranks = [], np.empty((N, s), dtype=np.int64)
    for i in range(s):
        vals = sorted({pt[i] for pt in pts} | {Fraction(1)})
        if vals[0] < 0 or vals[-1] > 1:
            raise ValueError("points must lie in [0, 1]^s")
        pos = {v: k for k, v in enumerate(vals)}
        ranks[:, i] = [pos[pt[i]] for pt in pts]
        grids.append(vals)
    shape = tuple(len(g) for g in grids)
    hist = np.zeros(shape, dtype=np.int64)
    np.add.at(hist, tuple(ranks.T), 1)
    closed = hist
    for ax in range(s):
        closed = np.cumsum(closed, axis=ax)
    # open count at corner c: points with rank < c in every coordinate
    opened = np.zeros(shape, dtype=np.int64)
    opened[(slice(1, None),) * s] = closed[(slice(None, -1),) * s]
    vol = np.ones(shape)
    for ax, g in enumerate(grids):
        v = np.array([float(x) for x in g])
        vol = vol * v.reshape([-1 if a == ax else 1 for a in range(s)])
    lower = vol - opened / N
    upper = closed / N - vol
    top = max(lower.max(), upper.max())
    best = Fraction(0)
    for arr, cnt, sign in ((lower, opened, 1), (upper, closed, -1)):
        for c in zip(*np.nonzero(arr >= top - 1e-9)):
            v = prod((grids[ax][c[ax]] for ax in range(s)), start=Fraction(1))
            d = sign * (v - Fraction(int(cnt[c]), N))
            best = max(best, d)
    return best
