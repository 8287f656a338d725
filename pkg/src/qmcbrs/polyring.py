"""Polynomials over F_b and their Laurent expansions in 1/x.

Coefficients are stored as digit indices (see :mod:`qmcbrs.field`), lowest
degree first, with no trailing zeros.  The zero polynomial has degree -1.

Text grammar
------------
Prime fields accept the usual sum-of-monomials form with coefficients in
``Z_b``: ``x^2+x+1``, ``2x^3+x+2``, ``x``.  Every field also accepts the
digit-vector form ``[c_d,...,c_1,c_0]``, highest degree first, where each
``c`` is a digit index in ``[0, b)``.  :func:`format_poly` emits the
monomial form for prime fields and the digit-vector form otherwise, and
``parse_poly(format_poly(f), field) == f`` always holds.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field

from .field import FieldError, FieldSpec

__all__ = [
    "LaurentTail",
    "Poly",
    "PolyError",
    "format_poly",
    "is_irreducible",
    "laurent_expand",
    "parse_poly",
    "poly_gcd",
]


class PolyError(ValueError):
    pass


def _trim(c) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(v) for v in c)


@dataclass(frozen=True)
class Poly:
    field: FieldSpec
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = _trim(self.coeffs)
        b = self.field.order
        if any(not 0 <= v < b for v in c):
            raise PolyError(f"coefficients must be digit indices in [0, {b})")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, field: FieldSpec, deg: int, coef: int = 1) -> Poly:
        return cls(field, (0,) * deg + (coef,))

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def x(cls, field: FieldSpec) -> Poly:
        return cls(field, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def coefficients(self):
        return [self.field.phi(c) for c in self.coeffs]

    def _same(self, other: Poly):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"mixed fields {self.field} and {other.field}")

    def __add__(self, other: Poly) -> Poly:
        self._same(other)
        add = self.field.add_table
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, (int(add[self[i], other[i]]) for i in range(n)))

    def __neg__(self) -> Poly:
        neg = self.field.neg_table
        return Poly(self.field, (int(neg[c]) for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._same(other)
        if not self or not other:
            return Poly(self.field)
        add, mul = self.field.add_table, self.field.mul_table
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = add[out[i + j], mul[a, b]]
        return Poly(self.field, out)

    def scale(self, c: int) -> Poly:
        mul = self.field.mul_table
        return Poly(self.field, (int(mul[c, v]) for v in self.coeffs))

    def shift(self, k: int) -> Poly:
        """Multiply by x^k."""
        if not self:
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def __pow__(self, e: int) -> Poly:
        result = Poly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._same(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        add, mul, neg = f.add_table, f.mul_table, f.neg_table
        inv_lead = f.inv(other.lead)
        rem = list(self.coeffs)
        dg = other.degree
        if len(rem) - 1 < dg:
            return Poly(f), self
        quot = [0] * (len(rem) - dg)
        for top in range(len(rem) - 1, dg - 1, -1):
            c = rem[top]
            if not c:
                continue
            q = int(mul[c, inv_lead])
            quot[top - dg] = q
            nq = neg[q]
            for i, g in enumerate(other.coeffs):
                rem[top - dg + i] = int(add[rem[top - dg + i], mul[nq, g]])
        return Poly(f, quot), Poly(f, rem[:dg])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if not self:
            return self
        return self.scale(self.field.inv(self.lead))

    def __call__(self, a: int) -> int:
        """Evaluate at the field element with digit index ``a``."""
        add, mul = self.field.add_table, self.field.mul_table
        acc = 0
        for c in reversed(self.coeffs):
            acc = int(add[mul[acc, a], c])
        return acc

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, {self.field})"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is 0."""
    while g:
        f, g = g, f % g
    return f.monic()


def is_irreducible(f: Poly) -> bool:
    """Exact irreducibility test by trial division.

    Degrees 2 and 3 take the root-test fast path (no linear factor means
    irreducible).  Otherwise every monic polynomial of degree at most
    ``deg f / 2`` is tried, which is fine for the degrees (<= 8) used here.
    """
    if f.degree < 1:
        raise PolyError("irreducibility is undefined for constants")
    if f.degree == 1:
        return True
    field = f.field
    b = field.order
    if f.degree <= 3:
        return all(f(a) != 0 for a in range(b))
    for deg in range(1, f.degree // 2 + 1):
        for tail in itertools.product(range(b), repeat=deg):
            if not (f % Poly(field, tail + (1,))):
                return False
    return True


@dataclass
class LaurentTail:
    """Coefficient stream of ``num/den = sum_{r>=0} a(r) x^(-r-1)``.

    The tail keeps the running remainder of the long division, so
    :meth:`extend` continues where the previous expansion stopped.
    Coefficients are digit indices.
    """

    field: FieldSpec
    den: Poly
    coeffs: list[int] = dc_field(default_factory=list)
    start: int = 0
    _rem: Poly | None = None

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def extend(self, L: int) -> LaurentTail:
        """Grow the tail to at least ``L`` coefficients, in place."""
        f = self.field
        g = self.den
        dg = g.degree
        inv_lead = f.inv(g.lead)
        rem = self._rem
        # x * rem has degree <= deg g; its quotient by g is a constant
        while len(self.coeffs) < L:
            xr = rem.shift(1)
            a = f.mul(xr[dg], inv_lead)
            rem = xr - g.scale(a)
            self.coeffs.append(a)
        self._rem = rem
        return self

    def __getitem__(self, r: int) -> int:
        if r >= len(self.coeffs):
            self.extend(r + 1)
        return self.coeffs[r]


def laurent_expand(f: Poly, g: Poly, L: int) -> LaurentTail:
    """First ``L`` coefficients a(0..L-1) of ``f/g`` in powers x^(-r-1)."""
    if not g:
        raise ZeroDivisionError("expansion of f/0")
    if f.field != g.field:
        raise FieldError("mixed fields")
    if f.degree >= g.degree:
        raise PolyError("need deg f < deg g; reduce the numerator first")
    if L < 0:
        raise PolyError("truncation length must be >= 0")
    return LaurentTail(f.field, g, [], 0, f).extend(L)


def format_poly(f: Poly) -> str:
    field = f.field
    if not field.is_prime:
        return "[" + ",".join(str(c) for c in reversed(f.coeffs or (0,))) + "]"
    if not f:
        return "0"
    terms = []
    for e in range(f.degree, -1, -1):
        c = f.coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            mono = "x" if e == 1 else f"x^{e}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms)


_TERM = re.compile(r"(\d*)\*?(x(?:\^(\d+))?)?")


def parse_poly(text: str, field: FieldSpec) -> Poly:
    """Parse either grammar described in the module docstring."""
    s = text.replace(" ", "")
    if not s:
        raise PolyError("empty polynomial string")
    b = field.order
    if s.startswith("["):
        if not s.endswith("]"):
            raise PolyError(f"unterminated digit vector {text!r}")
        body = s[1:-1]
        try:
            digits = [int(t) for t in body.split(",")] if body else []
        except ValueError:
            raise PolyError(f"bad digit vector {text!r}") from None
        if any(not 0 <= d < b for d in digits):
            raise PolyError(f"digits in {text!r} must lie in [0, {b})")
        return Poly(field, tuple(reversed(digits)))
    if not field.is_prime:
        raise PolyError("extension fields use the [c_d,...,c_0] digit-vector form")
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        m = _TERM.fullmatch(term)
        if not term or not m or (not m.group(1) and not m.group(2)):
            raise PolyError(f"cannot parse term {term!r} in {text!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if coef >= b:
            raise PolyError(f"coefficient {coef} outside Z_{b}")
        exp = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[exp] = (coeffs.get(exp, 0) + coef) % b
    deg = max(coeffs)
    return Poly(field, tuple(coeffs.get(e, 0) for e in range(deg + 1)))
