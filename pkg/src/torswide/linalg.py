"""Exact linear algebra over a prime field F_p.

Matrices are numpy ``int64`` arrays, row-major, with entries kept in
``[0, p)``.  Since ``p < 2**31`` every product of two residues fits in a
64-bit intermediate, so no object arrays or big integers are needed.
Vectors are 1-d arrays; kernel bases are returned as lists of 1-d arrays
(column vectors in the usual convention ``m @ v == 0``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidInput

_MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p."""

    prime: int = 5

    def __post_init__(self):
        if not isinstance(self.prime, (int, np.integer)) or not _is_prime(int(self.prime)):
            raise InvalidInput(f"field characteristic must be prime, got {self.prime!r}")
        if self.prime >= _MAX_PRIME:
            raise InvalidInput("prime must be below 2**31")

    def inv(self, x: int) -> int:
        x = int(x) % self.prime
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(x, -1, self.prime)

    def elements(self):
        return range(self.prime)


def as_mat(m, p: int, shape=None) -> np.ndarray:
    """Coerce ``m`` to an int64 matrix reduced mod ``p``."""
    a = np.array(m, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1]) if b.ndim == 2 else np.zeros(a.shape[0], dtype=np.int64)
    # keep partial sums small: reduce after each product block
    if a.shape[1] * (p - 1) ** 2 < 2**62:
        return (a @ b) % p
    out = np.zeros((a.shape[0],) + b.shape[1:], dtype=np.int64)
    for k in range(a.shape[1]):
        out = (out + np.multiply.outer(a[:, k], b[k]) % p) % p
    return out


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``m`` and its pivot columns."""
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_from_rref(rr: np.ndarray, pivots: list[int], p: int) -> list[np.ndarray]:
    cols = rr.shape[1]
    pivset = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivset:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for k, c in enumerate(pivots):
            v[c] = (-rr[k, f]) % p
        basis.append(v)
    return basis


def reduce(m: np.ndarray, p: int) -> tuple[int, np.ndarray, list[np.ndarray]]:
    """Return ``(rank, rref, kernel_basis)`` of ``m`` over F_p.

    ``rank + len(kernel_basis) == m.shape[1]`` always holds.
    """
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    rr, piv = rref(m, p)
    return len(piv), rr, kernel_from_rref(rr, piv, p)


def kernel(m: np.ndarray, p: int) -> np.ndarray:
    """Kernel basis as the columns of a ``cols x k`` matrix."""
    m = np.asarray(m, dtype=np.int64)
    if m.shape[0] == 0:
        return identity(m.shape[1])
    basis = reduce(m, p)[2]
    if not basis:
        return zeros(m.shape[1], 0)
    return np.stack(basis, axis=1)


def column_basis(m: np.ndarray, p: int) -> np.ndarray:
    """A basis of the column space, as a subset of the columns of ``m``."""
    if m.shape[1] == 0 or m.shape[0] == 0:
        return zeros(m.shape[0], 0)
    _, piv = rref(m, p)
    return np.array(m[:, piv], dtype=np.int64) % p


def canonical_subspace(m: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (columns) of the column space of ``m``.

    Two matrices span the same space iff their canonical forms are equal.
    """
    n = m.shape[0]
    if m.shape[1] == 0 or n == 0:
        return zeros(n, 0)
    rr, piv = rref(np.asarray(m).T, p)
    return rr[: len(piv)].T.copy()


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """A solution ``x`` of ``a @ x == b`` or ``None`` if the system is inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    bb = b.reshape(-1, 1) if vector else b
    if a.shape[0] != bb.shape[0]:
        raise DimensionMismatch(f"matrix has {a.shape[0]} rows but right-hand side has {bb.shape[0]}")
    n = a.shape[1]
    if a.shape[0] == 0:
        x = zeros(n, bb.shape[1])
        return x[:, 0] if vector else x
    rr, piv = rref(np.hstack([a % p, bb % p]), p)
    if piv and piv[-1] >= n:
        return None
    x = zeros(n, bb.shape[1])
    for k, c in enumerate(piv):
        x[c] = rr[k, n:]
    return x[:, 0] if vector else x


def inverse(a: np.ndarray, p: int) -> np.ndarray | None:
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch(f"inverse of non-square matrix {a.shape}")
    if n == 0:
        return zeros(0, 0)
    rr, piv = rref(np.hstack([a % p, identity(n)]), p)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return rr[:, n:].copy()


def is_invertible(a: np.ndarray, p: int) -> bool:
    n = a.shape[0]
    if a.shape != (n, n):
        return False
    return n == 0 or rank(a, p) == n


def complement_basis(sub: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the columns of ``sub`` to a basis of F_p^n.

    ``sub`` must have linearly independent columns.
    """
    if n == 0:
        return zeros(0, 0)
    k = sub.shape[1]
    rr, piv = rref(np.hstack([sub % p, identity(n)]), p)
    extra = [c - k for c in piv if c >= k]
    return identity(n)[:, extra]


def is_zero(m: np.ndarray) -> bool:
    return not np.any(m)
