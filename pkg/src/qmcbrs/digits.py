"""Exact digit expansions of point coordinates.

A coordinate is a finite digit vector ``d_1 .. d_L`` together with the
radix of every position.  For a single base ``b`` the value is
``sum d_j b^-j``; for a Cantor base ``(q_1, q_2, ...)`` it is
``sum d_j / (q_1 ... q_j)``.  ``exact`` records whether all digits past
``L`` are known to be zero (van der Corput, Halton) or merely unknown
(a truncated digital sequence).

:class:`PointSet` is the bulk form used by verification and experiments:
an integer array of shape ``(N, s, L)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

DEFAULT_PRECISION = 64

__all__ = ["DEFAULT_PRECISION", "DigitString", "PointSet"]


@dataclass(frozen=True)
class DigitString:
    """Digits of one coordinate, most significant first."""

    digits: tuple[int, ...]
    base: int | None = None
    radices: tuple[int, ...] | None = None
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if (self.base is None) == (self.radices is None):
            raise ValueError("give exactly one of base or radices")
        if self.radices is not None:
            rad = tuple(int(q) for q in self.radices)
            if len(rad) != len(self.digits):
                raise ValueError("one radix per digit")
            if len(set(rad)) == 1 and rad:
                # a constant Cantor base is an ordinary base
                object.__setattr__(self, "base", rad[0])
                object.__setattr__(self, "radices", None)
            else:
                object.__setattr__(self, "radices", rad)
        for d, q in zip(self.digits, self.radix_list()):
            if not 0 <= d < q:
                raise ValueError(f"digit {d} out of range for radix {q}")

    @property
    def precision(self) -> int:
        return len(self.digits)

    def radix_list(self) -> tuple[int, ...]:
        if self.radices is not None:
            return self.radices
        return (self.base,) * len(self.digits)

    def value(self) -> Fraction:
        """Exact rational value of the stored digits."""
        num, den = 0, 1
        for d, q in zip(self.digits, self.radix_list()):
            num = num * q + d
            den *= q
        return Fraction(num, den)

    def __float__(self):
        return float(self.value())

    def __str__(self):
        if self.base is not None and self.base <= 10:
            body = "".join(str(d) for d in self.digits)
        else:
            body = ":".join(str(d) for d in self.digits)
        return "0." + body + ("" if self.exact else "...")


@dataclass
class PointSet:
    """``N`` points in ``[0,1)^s`` stored as an ``(N, s, L)`` digit array.

    ``radices`` has shape ``(s, L)``.  ``start`` is the sequence index of
    the first row.
    """

    digits: np.ndarray
    radices: np.ndarray
    exact: bool = False
    start: int = 0

    def __post_init__(self):
        self.digits = np.asarray(self.digits, dtype=np.int64)
        if self.digits.ndim != 3:
            raise ValueError("digits must have shape (N, s, L)")
        self.radices = np.broadcast_to(
            np.asarray(self.radices, dtype=np.int64), self.digits.shape[1:]
        )

    @classmethod
    def from_base(cls, digits, base: int, exact: bool = False, start: int = 0) -> PointSet:
        digits = np.asarray(digits, dtype=np.int64)
        return cls(digits, np.full(digits.shape[1:], base, dtype=np.int64), exact, start)

    @classmethod
    def from_strings(cls, points: Sequence[Sequence[DigitString]], start: int = 0) -> PointSet:
        points = list(points)
        if not points:
            raise ValueError("empty point list; build PointSet directly for N=0")
        s = len(points[0])
        L = min(ds.precision for pt in points for ds in pt)
        digits = np.array([[ds.digits[:L] for ds in pt] for pt in points], dtype=np.int64)
        radices = np.array([points[0][i].radix_list()[:L] for i in range(s)], dtype=np.int64)
        exact = all(ds.exact and ds.precision == L for pt in points for ds in pt)
        return cls(digits, radices, exact, start)

    def __len__(self):
        return self.digits.shape[0]

    @property
    def dimension(self) -> int:
        return self.digits.shape[1]

    @property
    def precision(self) -> int:
        return self.digits.shape[2]

    @property
    def base(self) -> int | None:
        """The common radix, or ``None`` for mixed radices."""
        if self.radices.size == 0:
            return None
        b = int(self.radices.flat[0])
        return b if np.all(self.radices == b) else None

    def point(self, n: int) -> tuple[DigitString, ...]:
        """Coordinates of row ``n`` (row index, not sequence index)."""
        out = []
        for i in range(self.dimension):
            rad = tuple(int(q) for q in self.radices[i])
            if self.base is not None:
                out.append(DigitString(tuple(self.digits[n, i]), base=self.base, exact=self.exact))
            else:
                out.append(DigitString(tuple(self.digits[n, i]), radices=rad, exact=self.exact))
        return tuple(out)

    def values(self) -> list[tuple[Fraction, ...]]:
        """Exact rational coordinates of every point."""
        s, L = self.dimension, self.precision
        dens = []
        for i in range(s):
            d = 1
            for q in self.radices[i]:
                d *= int(q)
            dens.append(d)
        out = []
        for row in self.digits.tolist():
            pt = []
            for i in range(s):
                num = 0
                for d, q in zip(row[i], self.radices[i].tolist()):
                    num = num * q + d
                pt.append(Fraction(num, dens[i]))
            out.append(tuple(pt))
        return out

    def floats(self) -> np.ndarray:
        """Float approximation, shape ``(N, s)``."""
        w = 1.0 / np.cumprod(self.radices.astype(float), axis=1)
        return np.einsum("nsl,sl->ns", self.digits.astype(float), w)

    def slice(self, lo: int, hi: int) -> PointSet:
        return PointSet(self.digits[lo:hi], self.radices, self.exact, self.start + lo)

    def truncate(self, L: int) -> PointSet:
        """Keep the leading ``L`` digits."""
        if L >= self.precision:
            return self
        exact = self.exact and not self.digits[:, :, L:].any()
        return PointSet(self.digits[:, :, :L], self.radices[:, :L], exact, self.start)
