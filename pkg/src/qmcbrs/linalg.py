"""Dense Gaussian elimination over F_b on digit-index arrays."""

from __future__ import annotations

import itertools

import numpy as np

from .field import FieldSpec


def rref(field: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = mul[field.inv(int(A[r, c])), A[r]]
        for rr in range(rows):
            if rr != r and A[rr, c]:
                A[rr] = add[A[rr], mul[neg[A[rr, c]], A[r]]]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(field: FieldSpec, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(field, M)[1])


def nullspace(field: FieldSpec, M) -> np.ndarray:
    """Basis (as rows) of ``{v : M v = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(field, M)
    free = [c for c in range(cols) if c not in pivots]
    neg = field.neg_table
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = neg[R[i, f]]
    return basis


def matvec(field: FieldSpec, M, v) -> np.ndarray:
    """``M v`` over F_b."""
    M = np.asarray(M, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if field.is_prime:
        return (M @ v) % field.p
    add, mul = field.add_table, field.mul_table
    acc = np.zeros(M.shape[0], dtype=np.int64)
    for c in range(M.shape[1]):
        acc = add[acc, mul[M[:, c], v[c]]]
    return acc


def combine(field: FieldSpec, A, C) -> np.ndarray:
    """``A @ C.T`` over F_b for ``A`` of shape (N, R) and ``C`` of shape (L, R)."""
    A = np.asarray(A, dtype=np.int64)
    C = np.asarray(C, dtype=np.int64)
    if field.is_prime:
        return (A @ C.T) % field.p
    add, mul = field.add_table, field.mul_table
    acc = np.zeros((A.shape[0], C.shape[0]), dtype=np.int64)
    for r in range(A.shape[1]):
        acc = add[acc, mul[A[:, r : r + 1], C[None, :, r]]]
    return acc


def row_space(field: FieldSpec, M) -> np.ndarray:
    """Every vector of the row space, by brute-force enumeration of combinations."""
    M = np.asarray(M, dtype=np.int64)
    coeffs = np.array(list(itertools.product(range(field.order), repeat=M.shape[0])), dtype=np.int64)
    vecs = combine(field, coeffs, M.T)
    return np.unique(vecs, axis=0)
