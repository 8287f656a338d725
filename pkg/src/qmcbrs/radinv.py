"""Radical-inverse constructions.

* van der Corput ``phi_q`` and its Cantor-base generalisation ``phi_Q``;
* Hellekalek's Halton generalisation (one Cantor base per coordinate);
* Tezuka's polynomial analogue of Halton over F_b;
* the genus-0 generalized Halton-type sequence built from per-coordinate
  lists of irreducible polynomials (places of F_b(x)).

For the genus-0 construction the basis of F_b[x] adapted to coordinate
``i`` is ``x^(mu-1) * P_{i,1} ... P_{i,j-1}`` for ``1 <= mu <= deg P_{i,j}``,
so the digits of ``f_n = v_n(x)`` in that basis come from iterated division:
block ``j`` is ``(f_n div P_{i,1}...P_{i,j-1}) mod P_{i,j}``, and inside a
block the coefficient of ``x^0`` comes first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .digits import DEFAULT_PRECISION, DigitString, PointSet
from .field import FieldSpec
from .polyring import Poly, is_irreducible, laurent_expand, poly_gcd

__all__ = [
    "CantorBase",
    "ConfigurationError",
    "HaltonTypeSequence",
    "HellekalekSequence",
    "PlaceList",
    "TezukaSequence",
    "cantor_inverse",
    "halton_type_point",
    "hellekalek_point",
    "index_poly",
    "tezuka_point",
    "vdc",
]


class ConfigurationError(ValueError):
    """A construction was given inputs that violate its preconditions."""


def _base_digits(n: int, q: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, q)
        out.append(r)
    return out


def vdc(n: int, q: int, L: int = DEFAULT_PRECISION) -> DigitString:
    """Van der Corput radical inverse of ``n`` in base ``q``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if q < 2:
        raise ValueError("base must be >= 2")
    d = _base_digits(n, q)
    if len(d) > L:
        raise ValueError(f"precision {L} cannot hold the {len(d)} digits of {n} in base {q}")
    return DigitString(tuple(d) + (0,) * (L - len(d)), base=q)


@dataclass(frozen=True)
class CantorBase:
    """Radices ``q_1, q_2, ...``: the ``head`` once, then ``cycle`` forever.

    An empty ``cycle`` gives a base of finite depth ``len(head)``.
    """

    head: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(q) for q in self.head))
        object.__setattr__(self, "cycle", tuple(int(q) for q in self.cycle))
        if not self.head and not self.cycle:
            raise ConfigurationError("empty Cantor base")
        if any(q < 2 for q in self.head + self.cycle):
            raise ConfigurationError("every Cantor radix must be >= 2")

    @classmethod
    def constant(cls, q: int) -> CantorBase:
        return cls((), (q,))

    @property
    def depth(self) -> float:
        return math.inf if self.cycle else len(self.head)

    def radix(self, j: int) -> int:
        """``q_j`` for ``j >= 1``."""
        if j <= len(self.head):
            return self.head[j - 1]
        if not self.cycle:
            raise ConfigurationError(f"Cantor base has depth {len(self.head)} < {j}")
        return self.cycle[(j - 1 - len(self.head)) % len(self.cycle)]

    def radices(self, L: int) -> tuple[int, ...]:
        return tuple(self.radix(j) for j in range(1, L + 1))

    def cumulative(self, L: int) -> list[int]:
        """``[Q_1, ..., Q_L]``."""
        out, acc = [], 1
        for q in self.radices(L):
            acc *= q
            out.append(acc)
        return out

    def distinct_radices(self) -> set[int]:
        return set(self.head) | set(self.cycle)


def cantor_inverse(n: int, Q: CantorBase, L: int | None = None) -> DigitString:
    """``phi_Q(n) = sum n_j / Q_j`` for the Cantor expansion ``n = sum n_j Q_{j-1}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if L is None:
        L = DEFAULT_PRECISION if Q.cycle else len(Q.head)
    if L > Q.depth:
        raise ConfigurationError(f"Cantor base depth {Q.depth} < precision {L}")
    digits = []
    rest = n
    for q in Q.radices(L):
        rest, r = divmod(rest, q)
        digits.append(r)
    if rest:
        raise ConfigurationError(f"Q_{L} does not exceed {n}; deepen the base or raise L")
    return DigitString(tuple(digits), radices=Q.radices(L))


def _check_coprime_ints(bases: Sequence[CantorBase]):
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            for a in bases[i].distinct_radices():
                for c in bases[j].distinct_radices():
                    if math.gcd(a, c) != 1:
                        raise ConfigurationError(
                            f"coordinates {i + 1} and {j + 1} share factor {math.gcd(a, c)}"
                        )


def hellekalek_point(
    n: int, bases: Sequence[CantorBase], L: int | None = None, check: bool = True
) -> tuple[DigitString, ...]:
    if check:
        _check_coprime_ints(bases)
    return tuple(cantor_inverse(n, Q, L) for Q in bases)


def index_poly(n: int, field: FieldSpec) -> Poly:
    """``v_n(x) = sum phi(a_r(n)) x^r`` for the base-b digits ``a_r(n)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Poly(field, _base_digits(n, field.order))


def _check_coprime_polys(polys: Sequence[Poly]):
    for p in polys:
        if p.degree < 1:
            raise ConfigurationError(f"{p} is constant")
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if poly_gcd(polys[i], polys[j]).degree > 0:
                raise ConfigurationError(f"{polys[i]} and {polys[j]} are not coprime")


def _tezuka_coord(v: Poly, p: Poly, L: int) -> DigitString:
    field = p.field
    # v = sum r_k p^k; phi_p(v) = sum r_k / p^(k+1) = (sum r_k p^(K-k)) / p^(K+1)
    rs = []
    rest = v
    while rest:
        rest, r = divmod(rest, p)
        rs.append(r)
    if not rs:
        return DigitString((0,) * L, base=field.order)
    K = len(rs) - 1
    num = Poly(field)
    for r in rs:
        num = num * p + r
    tail = laurent_expand(num, p ** (K + 1), L)
    return DigitString(tuple(tail.coeffs), base=field.order, exact=not tail._rem)


def tezuka_point(
    n: int, polys: Sequence[Poly], L: int = DEFAULT_PRECISION, check: bool = True
) -> tuple[DigitString, ...]:
    """Tezuka's polynomial Halton point: Laurent digits of ``phi_{p_i}(v_n)``."""
    if check:
        _check_coprime_polys(polys)
    v = index_poly(n, polys[0].field)
    return tuple(_tezuka_coord(v, p, L) for p in polys)


class PlaceList:
    """Per-coordinate lists of monic irreducible polynomials ``P_{i,1}, P_{i,2}, ...``.

    Each coordinate is given as ``(head, cycle)``: the polynomials in
    ``head`` once, then ``cycle`` repeated forever.  A bare list is taken
    as a cycle.
    """

    def __init__(self, field: FieldSpec, coords):
        self.field = field
        self.coords: list[tuple[tuple[Poly, ...], tuple[Poly, ...]]] = []
        for c in coords:
            if isinstance(c, tuple) and len(c) == 2 and all(isinstance(x, (list, tuple)) for x in c):
                head, cycle = tuple(c[0]), tuple(c[1])
            else:
                head, cycle = (), tuple(c)
            if not head and not cycle:
                raise ConfigurationError("empty place list")
            self.coords.append((head, cycle))
        self._validate()

    def _validate(self):
        used = []
        for i, (head, cycle) in enumerate(self.coords):
            polys = set(head) | set(cycle)
            for P in polys:
                if P.field != self.field:
                    raise ConfigurationError(f"{P} is over {P.field}, expected {self.field}")
                if P.degree < 1 or not P.is_monic():
                    raise ConfigurationError(f"place {P} must be monic and nonconstant")
                if not is_irreducible(P):
                    raise ConfigurationError(f"place {P} is reducible")
                if P[0] == 0:
                    raise ConfigurationError(f"place {P} is not coprime to x")
            for j, other in enumerate(used):
                shared = polys & other
                if shared:
                    raise ConfigurationError(
                        f"coordinates {j + 1} and {i + 1} share place {next(iter(shared))}"
                    )
            used.append(polys)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def place(self, i: int, j: int) -> Poly:
        """``P_{i,j}`` with 0-based coordinate ``i`` and 1-based ``j``."""
        head, cycle = self.coords[i]
        if j <= len(head):
            return head[j - 1]
        if not cycle:
            raise ConfigurationError(f"coordinate {i + 1} has only {len(head)} places")
        return cycle[(j - 1 - len(head)) % len(cycle)]

    def places(self, i: int) -> Iterator[Poly]:
        j = 1
        while True:
            head, cycle = self.coords[i]
            if j > len(head) and not cycle:
                return
            yield self.place(i, j)
            j += 1

    def cumulative_degrees(self, i: int, J: int) -> list[int]:
        """``[n_{i,1}, ..., n_{i,J}]``."""
        out, acc = [], 0
        for j in range(1, J + 1):
            acc += self.place(i, j).degree
            out.append(acc)
        return out


def _halton_type_coord(f: Poly, places: Iterator[Poly], L: int) -> DigitString:
    b = f.field.order
    digits: list[int] = []
    rest = f
    # deg(rest) drops with every division, so this runs at most deg f + 1 times
    for P in places:
        if not rest:
            break
        rest, r = divmod(rest, P)
        digits.extend(r[mu] for mu in range(P.degree))
    if rest:
        raise ConfigurationError("place list exhausted before the expansion terminated")
    exact = not any(digits[L:])
    digits = digits[:L]
    return DigitString(tuple(digits) + (0,) * (L - len(digits)), base=b, exact=exact)


def halton_type_point(
    n: int, places: PlaceList, L: int = DEFAULT_PRECISION
) -> tuple[DigitString, ...]:
    """Genus-0 generalized Halton-type point with index ``n``."""
    f = index_poly(n, places.field)
    return tuple(_halton_type_coord(f, places.places(i), L) for i in range(places.dimension))


class _PointwiseSequence:
    base: int
    dimension: int
    precision: int

    def point(self, n: int) -> tuple[DigitString, ...]:
        raise NotImplementedError

    def points(self, start: int, count: int) -> PointSet:
        if count == 0:
            return PointSet(
                np.zeros((0, self.dimension, self.precision), dtype=np.int64),
                np.full((self.dimension, self.precision), self.base),
                True,
                start,
            )
        return PointSet.from_strings([self.point(n) for n in range(start, start + count)], start)


class TezukaSequence(_PointwiseSequence):
    def __init__(self, polys: Sequence[Poly], precision: int = DEFAULT_PRECISION):
        _check_coprime_polys(polys)
        self.polys = list(polys)
        self.field = polys[0].field
        self.base = self.field.order
        self.dimension = len(polys)
        self.precision = precision

    def point(self, n):
        return tezuka_point(n, self.polys, self.precision, check=False)


class HaltonTypeSequence(_PointwiseSequence):
    def __init__(self, places: PlaceList, precision: int = DEFAULT_PRECISION):
        self.places = places
        self.field = places.field
        self.base = self.field.order
        self.dimension = places.dimension
        self.precision = precision

    def point(self, n):
        return halton_type_point(n, self.places, self.precision)


class HellekalekSequence(_PointwiseSequence):
    """Cantor-base Halton sequence; classical Halton with constant bases."""

    def __init__(self, bases: Sequence[CantorBase], precision: int | None = None):
        _check_coprime_ints(bases)
        self.bases = list(bases)
        self.dimension = len(bases)
        if precision is None:
            finite = [len(Q.head) for Q in bases if not Q.cycle]
            precision = min(finite) if finite else DEFAULT_PRECISION
        self.precision = precision
        self.base = None

    def point(self, n):
        return hellekalek_point(n, self.bases, self.precision, check=False)

    def points(self, start, count):
        if count == 0:
            rad = np.array([Q.radices(self.precision) for Q in self.bases])
            return PointSet(np.zeros((0, self.dimension, self.precision)), rad, True, start)
        return super().points(start, count)
