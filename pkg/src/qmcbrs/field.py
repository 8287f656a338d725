"""Finite fields GF(p^k) with small order.

Elements are stored by their digit index ``d`` in ``[0, b)``.  The digit
bijection ``phi`` sends ``d`` to the polynomial-basis element whose
coefficient vector is the base-``p`` expansion of ``d`` (constant term is
the least significant digit), so ``phi(0)`` is the additive identity and
for prime fields ``phi`` is the identity map on residues.

Arithmetic is exact and table driven: every :class:`FieldSpec` builds its
``b x b`` addition and multiplication tables once, by genuine
multiply-and-reduce over the modulus.  The tables are plain numpy arrays so
the rest of the package can do vectorised digit arithmetic with fancy
indexing.

Text form::

    GF(p)                          prime field
    GF(q)                          prime power, built-in modulus
    GF(q)=GF(p)[x]/(x^2+x+1)       explicit modulus (coefficients in Z_p)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

__all__ = [
    "CONWAY_MODULI",
    "FieldElement",
    "FieldError",
    "FieldSpec",
    "GF",
    "parse_field",
]


class FieldError(ValueError):
    """Bad field description or mixed-field arithmetic."""


# Conway polynomials for every non-prime order p^k <= 64, coefficient
# vectors listed constant term first.
CONWAY_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise FieldError(f"{q} is not a prime power")
            return p, k
    raise FieldError(f"{q} is not a prime power")


def _digits(d: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        d, r = divmod(d, p)
        out.append(r)
    return tuple(out)


def _undigits(c, p: int) -> int:
    return sum(int(ci) * p**i for i, ci in enumerate(c))


def _mulmod(a, b, modulus, p):
    """Product of two coefficient vectors over GF(p), reduced by a monic modulus."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top]
        if c:
            for i in range(k + 1):
                prod[top - k + i] = (prod[top - k + i] - c * modulus[i]) % p
    return tuple(prod[:k]) + (0,) * max(0, k - len(prod))


@dataclass(frozen=True)
class FieldSpec:
    """Description of GF(p^k).

    ``modulus`` is the monic irreducible defining polynomial over GF(p),
    constant term first; it is ``None`` for prime fields.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise FieldError("extension degree must be >= 1")
        if self.k == 1:
            if self.modulus is not None:
                raise FieldError("prime fields take no modulus")
            return
        if self.modulus is None:
            try:
                object.__setattr__(self, "modulus", CONWAY_MODULI[(self.p, self.k)])
            except KeyError:
                raise FieldError(
                    f"no built-in modulus for GF({self.p}^{self.k}); pass one explicitly"
                ) from None
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if any(not 0 <= c < self.p for c in mod):
            raise FieldError("modulus coefficients must lie in [0, p)")
        if not _irreducible_mod_p(mod, self.p):
            raise FieldError(f"modulus {mod} is reducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p**self.k

    b = order

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    @cached_property
    def add_table(self) -> np.ndarray:
        b, p, k = self.order, self.p, self.k
        if k == 1:
            idx = np.arange(b)
            return (idx[:, None] + idx[None, :]) % p
        t = np.empty((b, b), dtype=np.int64)
        for x in range(b):
            cx = _digits(x, p, k)
            for y in range(b):
                cy = _digits(y, p, k)
                t[x, y] = _undigits(((u + v) % p for u, v in zip(cx, cy)), p)
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        b, p, k = self.order, self.p, self.k
        if k == 1:
            idx = np.arange(b)
            return (idx[:, None] * idx[None, :]) % p
        t = np.empty((b, b), dtype=np.int64)
        for x in range(b):
            cx = _digits(x, p, k)
            for y in range(b):
                t[x, y] = _undigits(_mulmod(cx, _digits(y, p, k), self.modulus, p), p)
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.argmin(self.add_table, axis=1)

    @cached_property
    def sub_table(self) -> np.ndarray:
        # sub[x, y] = x - y = x + (-y)
        return self.add_table[:, self.neg_table]

    @cached_property
    def inv_table(self) -> np.ndarray:
        """``inv_table[d]`` is the inverse of ``d``; entry 0 is unused (-1)."""
        inv = np.full(self.order, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return inv

    # scalar helpers on digit indices
    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def sub(self, x: int, y: int) -> int:
        return int(self.sub_table[x, y])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        return int(self.inv_table[x])

    def phi(self, d: int) -> FieldElement:
        """The digit bijection Z_b -> F_b."""
        if not 0 <= d < self.order:
            raise FieldError(f"digit {d} outside [0, {self.order})")
        return FieldElement(self, d)

    @staticmethod
    def phi_inv(e: FieldElement) -> int:
        return e.index

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, d) for d in range(self.order)]

    def __str__(self):
        if self.k == 1:
            return f"GF({self.p})"
        terms = []
        for e in range(self.k, -1, -1):
            c = self.modulus[e]
            if not c:
                continue
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return f"GF({self.order})=GF({self.p})[x]/({'+'.join(terms)})"


def _irreducible_mod_p(mod: tuple[int, ...], p: int) -> bool:
    # trial division by monic polynomials of degree <= k/2 over GF(p)
    k = len(mod) - 1
    for deg in range(1, k // 2 + 1):
        for tail in range(p**deg):
            div = _digits(tail, p, deg) + (1,)
            rem = list(mod)
            for top in range(k, deg - 1, -1):
                c = rem[top]
                if c:
                    for i in range(deg + 1):
                        rem[top - deg + i] = (rem[top - deg + i] - c * div[i]) % p
            if not any(rem[:deg]):
                return False
    return True


@lru_cache(maxsize=None)
def GF(q: int, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Cached constructor: ``GF(4)`` uses the built-in modulus x^2+x+1."""
    p, k = _prime_power(q)
    return FieldSpec(p, k, modulus)


_FIELD_RE = re.compile(
    r"^\s*GF\(\s*(\d+)\s*\)\s*(?:=\s*GF\(\s*(\d+)\s*\)\s*\[\s*x\s*\]\s*/\s*\((.+)\)\s*)?$"
)


def _parse_prime_poly(text: str, p: int) -> tuple[int, ...]:
    coeffs: dict[int, int] = {}
    for term in text.replace(" ", "").replace("-", "+-").split("+"):
        if not term:
            continue
        m = re.fullmatch(r"(-?\d*)\*?(x(?:\^(\d+))?)?", term)
        if not m or (not m.group(1) and not m.group(2)) or m.group(1) == "-" and not m.group(2):
            raise FieldError(f"cannot parse polynomial term {term!r}")
        c = m.group(1)
        coef = int(c) if c not in ("", "-") else (-1 if c == "-" else 1)
        exp = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[exp] = (coeffs.get(exp, 0) + coef) % p
    deg = max((e for e, c in coeffs.items() if c), default=0)
    return tuple(coeffs.get(e, 0) for e in range(deg + 1))


def parse_field(text: str) -> FieldSpec:
    """Parse ``GF(9)`` or ``GF(4)=GF(2)[x]/(x^2+x+1)``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse field description {text!r}")
    q = int(m.group(1))
    if m.group(2) is None:
        return GF(q)
    p = int(m.group(2))
    mod = _parse_prime_poly(m.group(3), p)
    pp, k = _prime_power(q)
    if pp != p or len(mod) - 1 != k:
        raise FieldError(f"modulus of degree {len(mod) - 1} over GF({p}) does not give GF({q})")
    return GF(q, mod)


@dataclass(frozen=True)
class FieldElement:
    """An element of F_b, identified by its digit index under ``phi``."""

    field: FieldSpec
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.field.order:
            raise FieldError(f"index {self.index} outside [0, {self.field.order})")

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Polynomial-basis coefficients over GF(p), constant term first."""
        return _digits(self.index, self.field.p, self.field.k)

    def _check(self, other) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldError(f"mixed fields {self.field} and {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.add(self.index, other.index))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.sub(self.index, other.index))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul(self.index, other.index))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.index))

    def __bool__(self):
        return self.index != 0

    def __int__(self):
        return self.index

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.index} in {self.field}"
        return f"{list(reversed(self.coeffs))} in GF({self.field.order})"
