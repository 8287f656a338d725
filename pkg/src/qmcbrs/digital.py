"""Digital sequences over F_b.

A digital sequence is fixed by one generating matrix ``C^(i)`` per
coordinate.  The digits of index ``n`` (through ``phi``) form a row vector
``a``; coordinate ``i`` has digit vector ``y = C^(i) a`` read back through
``phi^-1``.  Matrices are infinite in principle and materialised lazily.

The generalized Niederreiter matrix of a polynomial ``p`` with degree
``e`` has row ``j`` (1-based) given by the Laurent coefficients of
``y_{Q+1,k}(x) / p(x)^(Q+1)`` where ``j - 1 = Q e + k``.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .digits import DEFAULT_PRECISION, DigitString, PointSet
from .field import FieldSpec, parse_field
from .polyring import LaurentTail, Poly, laurent_expand, poly_gcd
from .radinv import ConfigurationError

__all__ = [
    "DigitalConfig",
    "DigitalSequence",
    "DualBasis",
    "ExplicitMatrix",
    "GeneratingMatrix",
    "IdentityMatrix",
    "NiederreiterMatrix",
    "digital_point",
    "dual_space",
    "index_digits",
    "matrices_from_json",
    "matrices_to_json",
    "niederreiter_matrices",
    "overall_matrix",
]


class GeneratingMatrix:
    """Lazily materialised matrix ``(c_{j,r})`` with rows ``j >= 1``, columns ``r >= 0``.

    Row ``j`` is stored at array index ``j - 1``.  Subclasses fill
    :meth:`_compute`; this class memoises the materialised block and grows
    it on demand.  Concurrent readers see identical entries.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self._block = np.zeros((0, 0), dtype=np.int64)
        self._lock = threading.Lock()

    @property
    def materialized(self) -> tuple[int, int]:
        return self._block.shape

    def entries(self, J: int, R: int) -> np.ndarray:
        """Upper-left ``J x R`` block (a copy)."""
        with self._lock:
            J0, R0 = self._block.shape
            if J > J0 or R > R0:
                self._block = self._compute(max(J, J0), max(R, R0))
            return self._block[:J, :R].copy()

    def _compute(self, J: int, R: int) -> np.ndarray:
        raise NotImplementedError

    def zero_beyond(self, L: int, R: int) -> bool:
        """True when every row past ``L`` vanishes on the first ``R`` columns."""
        return False

    def __getitem__(self, jr):
        j, r = jr
        return int(self.entries(j, r + 1)[j - 1, r])


class IdentityMatrix(GeneratingMatrix):
    """``C = I``: the van der Corput sequence in base b."""

    def _compute(self, J, R):
        return np.eye(J, R, dtype=np.int64)

    def zero_beyond(self, L, R):
        return R <= L


class ExplicitMatrix(GeneratingMatrix):
    """A finite matrix, zero outside the given block (a digital net)."""

    def __init__(self, field: FieldSpec, data):
        super().__init__(field)
        data = np.array(data, dtype=np.int64)
        if data.ndim != 2:
            raise ConfigurationError("explicit generating matrix must be 2-D")
        if data.size and (data.min() < 0 or data.max() >= field.order):
            raise ConfigurationError(f"matrix entries must lie in [0, {field.order})")
        self.data = data

    def _compute(self, J, R):
        out = np.zeros((J, R), dtype=np.int64)
        j, r = min(J, self.data.shape[0]), min(R, self.data.shape[1])
        out[:j, :r] = self.data[:j, :r]
        return out

    def zero_beyond(self, L, R):
        return not self.data[L:, :R].any()


def _default_y(field: FieldSpec):
    def y(j: int, k: int) -> Poly:
        return Poly.monomial(field, k)

    return y


class NiederreiterMatrix(GeneratingMatrix):
    """Generalized Niederreiter matrix for one polynomial ``p``.

    ``y(j, k)`` returns the numerator ``y_{j,k}(x)`` (``j >= 1``,
    ``0 <= k < deg p``); the default is ``x^k``.  For every ``j`` the
    family ``{y(j, k) mod p}`` must be linearly independent over F_b,
    which is checked when the row block is first needed.
    """

    def __init__(self, p: Poly, y: Callable[[int, int], Poly] | None = None):
        super().__init__(p.field)
        if p.degree < 1:
            raise ConfigurationError(f"{p} is constant")
        self.p = p
        self.e = p.degree
        self.y = y or _default_y(p.field)
        self._tails: dict[tuple[int, int], LaurentTail] = {}
        self._powers: list[Poly] = [Poly.constant(p.field, 1)]
        self._checked: set[int] = set()

    def _power(self, k: int) -> Poly:
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.p)
        return self._powers[k]

    def _check_independent(self, jj: int):
        if jj in self._checked:
            return
        e = self.e
        rows = [[(self.y(jj, k) % self.p)[c] for c in range(e)] for k in range(e)]
        if linalg.rank(self.field, rows) != e:
            raise ConfigurationError(
                f"numerators y_(j={jj},k) are dependent modulo {self.p}"
            )
        self._checked.add(jj)

    def _tail(self, Q: int, k: int, R: int) -> list[int]:
        key = (Q, k)
        tail = self._tails.get(key)
        if tail is None:
            self._check_independent(Q + 1)
            den = self._power(Q + 1)
            # reducing the numerator modulo p^(Q+1) leaves the x^(-r-1) stream unchanged
            num = self.y(Q + 1, k) % den
            tail = laurent_expand(num, den, R)
            self._tails[key] = tail
        return tail.extend(R).coeffs[:R]

    def _compute(self, J, R):
        out = np.zeros((J, R), dtype=np.int64)
        for j in range(1, J + 1):
            Q, k = divmod(j - 1, self.e)
            out[j - 1] = self._tail(Q, k, R)
        return out


def index_digits(n: int, b: int, R: int | None = None) -> list[int]:
    """Base-b digits ``a_0(n), a_1(n), ...`` (as F_b digit indices)."""
    out = []
    while n:
        n, r = divmod(n, b)
        out.append(r)
    if R is not None:
        if len(out) > R:
            raise ValueError(f"{R} digits cannot hold the index")
        out += [0] * (R - len(out))
    return out


@dataclass
class DigitalConfig:
    field: FieldSpec
    matrices: list[GeneratingMatrix]
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not self.matrices:
            raise ConfigurationError("need at least one generating matrix")
        for C in self.matrices:
            if C.field != self.field:
                raise ConfigurationError("all generating matrices must share the field")

    @property
    def dimension(self) -> int:
        return len(self.matrices)

    @property
    def base(self) -> int:
        return self.field.order


def digital_point(n: int, cfg: DigitalConfig) -> tuple[DigitString, ...]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    b, L = cfg.base, cfg.precision
    a = index_digits(n, b) or [0]
    R = len(a)
    out = []
    for C in cfg.matrices:
        y = linalg.matvec(cfg.field, C.entries(L, R), a)
        out.append(DigitString(tuple(int(v) for v in y), base=b, exact=C.zero_beyond(L, R)))
    return tuple(out)


class DigitalSequence:
    """Batch generation of a digital sequence as :class:`PointSet` blocks."""

    chunk = 1 << 16

    def __init__(self, cfg: DigitalConfig):
        self.cfg = cfg
        self.field = cfg.field
        self.base = cfg.base
        self.dimension = cfg.dimension
        self.precision = cfg.precision

    def point(self, n: int) -> tuple[DigitString, ...]:
        return digital_point(n, self.cfg)

    def points(self, start: int, count: int) -> PointSet:
        b, L, s = self.base, self.precision, self.dimension
        out = np.zeros((count, s, L), dtype=np.int64)
        last = start + count - 1
        R = max(1, len(index_digits(max(last, 0), b)))
        mats = [C.entries(L, R) for C in self.cfg.matrices]
        pows = b ** np.arange(R, dtype=np.int64)
        for lo in range(0, count, self.chunk):
            hi = min(count, lo + self.chunk)
            ns = np.arange(start + lo, start + hi, dtype=np.int64)
            A = (ns[:, None] // pows[None, :]) % b
            for i, C in enumerate(mats):
                out[lo:hi, i, :] = linalg.combine(self.field, A, C)
        exact = all(C.zero_beyond(L, R) for C in self.cfg.matrices)
        return PointSet.from_base(out, b, exact, start)


def niederreiter_matrices(
    polys: Sequence[Poly],
    y_choice: Callable[[int, int, int], Poly] | None = None,
    precision: int = DEFAULT_PRECISION,
) -> DigitalConfig:
    """Generating matrices of the generalized Niederreiter sequence.

    ``y_choice(i, j, k)`` (``i`` 1-based) supplies the numerators; default
    ``x^k``.  The polynomials must be nonconstant, pairwise coprime and
    coprime to ``x``.
    """
    polys = list(polys)
    if not polys:
        raise ConfigurationError("need at least one polynomial")
    field = polys[0].field
    x = Poly.x(field)
    for p in polys:
        if p.field != field:
            raise ConfigurationError("polynomials over different fields")
        if p.degree < 1:
            raise ConfigurationError(f"{p} is constant")
        if poly_gcd(p, x).degree > 0:
            raise ConfigurationError(f"{p} is not coprime to x")
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if poly_gcd(polys[i], polys[j]).degree > 0:
                raise ConfigurationError(f"{polys[i]} and {polys[j]} are not coprime")
    mats = []
    for i, p in enumerate(polys, start=1):
        y = None
        if y_choice is not None:
            y = (lambda i_: lambda j, k: y_choice(i_, j, k))(i)
        mats.append(NiederreiterMatrix(p, y))
    return DigitalConfig(field, mats, precision)


def overall_matrix(cfg: DigitalConfig, m: int) -> np.ndarray:
    """``[C]_m = ([C1]_m^T | ... | [Cs]_m^T)``, shape ``(m, s m)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return np.hstack([C.entries(m, m).T for C in cfg.matrices])


@dataclass
class DualBasis:
    m: int
    vectors: np.ndarray
    row_rank: int

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


def dual_space(cfg: DigitalConfig, m: int) -> DualBasis:
    """Basis of the orthogonal complement of the row space of ``[C]_m``."""
    M = overall_matrix(cfg, m)
    return DualBasis(m, linalg.nullspace(cfg.field, M), linalg.rank(cfg.field, M))


def matrices_to_json(cfg: DigitalConfig, J: int, R: int | None = None) -> str:
    """Row-major digit grids of the upper-left ``J x R`` blocks."""
    R = J if R is None else R
    doc = {
        "schema_version": 1,
        "field": str(cfg.field),
        "rows": J,
        "cols": R,
        "matrices": [C.entries(J, R).tolist() for C in cfg.matrices],
    }
    return json.dumps(doc, sort_keys=True)


def matrices_from_json(text: str, precision: int = DEFAULT_PRECISION) -> DigitalConfig:
    doc = json.loads(text)
    try:
        field = parse_field(doc["field"])
        mats = [ExplicitMatrix(field, m) for m in doc["matrices"]]
    except KeyError as exc:
        raise ConfigurationError(f"matrix file lacks key {exc}") from None
    return DigitalConfig(field, mats, precision)
