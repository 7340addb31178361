"""Dense exact linear algebra over a :class:`~gsmash.field.Field`.

Vectors are 1-d arrays, matrices 2-d arrays; "basis" results are returned as
matrices whose *columns* are the basis vectors unless stated otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Field

__all__ = [
    "rref",
    "rank",
    "kernel_basis",
    "kernel_matrix",
    "solve_linear",
    "inverse",
    "left_inverse",
    "column_space",
    "row_space",
    "complement_columns",
    "SubspaceBasis",
    "span_contains",
]


def rref(F: Field, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    A = F.reduce(np.array(M, dtype=F.dtype, copy=True))
    if A.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(F.nonzero_mask(A[r:, c]))
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.reduce(A[r] * F.inv(A[r, c]))
        col = A[:, c].copy()
        col[r] = F.zero
        others = np.flatnonzero(F.nonzero_mask(col))
        if others.size:
            A[others] = F.reduce(A[others] - np.outer(col[others], A[r]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: Field, M: np.ndarray) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    # eliminate along the shorter side
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(rref(F, M)[1])


def kernel_matrix(F: Field, M: np.ndarray) -> np.ndarray:
    """Right null space of ``M`` as the columns of a ``cols x nullity`` matrix.

    Canonical: one basis vector per free column ``f``, with a 1 in position
    ``f``, zeros on the other free columns, and pivot entries read off the
    reduced echelon form.
    """
    M = np.asarray(M)
    cols = M.shape[1]
    if M.shape[0] == 0 or cols == 0:
        return F.eye(cols)
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = F.zeros((cols, len(free)))
    for j, f in enumerate(free):
        K[f, j] = F.one
        for i, p in enumerate(pivots):
            K[p, j] = F.neg(R[i, f])
    return K


def kernel_basis(F: Field, M: np.ndarray) -> list[np.ndarray]:
    K = kernel_matrix(F, M)
    return [K[:, j].copy() for j in range(K.shape[1])]


def solve_linear(F: Field, M: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """A solution of ``M x = b`` with free coordinates zero, or ``None``."""
    M = np.asarray(M)
    b = np.asarray(b)
    if M.ndim != 2 or b.ndim != 1 or M.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {M.shape} vs {b.shape}")
    cols = M.shape[1]
    aug = np.concatenate([F.array(M) if M.size else F.zeros(M.shape), F.array(b).reshape(-1, 1)], axis=1)
    R, pivots = rref(F, aug)
    if pivots and pivots[-1] == cols:
        return None
    x = F.zeros(cols)
    for i, p in enumerate(pivots):
        x[p] = R[i, cols]
    return x


def solve_many(F: Field, M: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """Solve ``M X = B`` column by column in one elimination; ``None`` if any column fails."""
    cols = M.shape[1]
    k = B.shape[1]
    R, pivots = rref(F, np.concatenate([M, B], axis=1))
    if any(p >= cols for p in pivots):
        return None
    X = F.zeros((cols, k))
    for i, p in enumerate(pivots):
        X[p] = R[i, cols:]
    return X


def inverse(F: Field, M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, pivots = rref(F, np.concatenate([M, F.eye(n)], axis=1))
    if sum(1 for p in pivots if p < n) != n:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:].copy()


def left_inverse(F: Field, V: np.ndarray) -> np.ndarray:
    """``L`` with ``L @ V = I`` for ``V`` of full column rank."""
    d, k = V.shape
    if k == 0:
        return F.zeros((0, d))
    R, pivots = rref(F, V.T)
    if len(pivots) != k:
        raise ValueError("columns are not linearly independent")
    rows = pivots  # these rows of V form an invertible k x k block
    Sinv = inverse(F, V[rows, :])
    L = F.zeros((k, d))
    L[:, rows] = Sinv
    return L


def row_space(F: Field, M: np.ndarray) -> np.ndarray:
    """Nonzero rows of the reduced echelon form of ``M``."""
    M = np.asarray(M)
    if M.shape[0] == 0:
        return F.zeros((0, M.shape[1]))
    R, pivots = rref(F, M)
    return R[: len(pivots)].copy()


def column_space(F: Field, M: np.ndarray) -> np.ndarray:
    """Canonical basis (as columns) of the column space of ``M``."""
    return row_space(F, np.asarray(M).T).T.copy()


def complement_columns(F: Field, U: np.ndarray, n: int) -> list[int]:
    """Indices of standard unit vectors completing the column space of ``U`` to ``F^n``."""
    if U.shape[1] == 0:
        return list(range(n))
    _, pivots = rref(F, U.T)
    piv = set(pivots)
    return [i for i in range(n) if i not in piv]


def span_contains(F: Field, U: np.ndarray, v: np.ndarray) -> bool:
    """Whether ``v`` lies in the column span of ``U``."""
    if U.shape[1] == 0:
        return not F.nonzero_mask(np.asarray(v)).any()
    return rank(F, np.concatenate([U, np.asarray(v).reshape(-1, 1)], axis=1)) == rank(F, U)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """A subspace of ``F^ambient_dim`` held by its reduced echelon row basis."""

    field: Field
    ambient_dim: int
    rows: np.ndarray  # shape (dim, ambient_dim), reduced echelon form

    @classmethod
    def span(cls, F: Field, vectors, ambient_dim: int) -> "SubspaceBasis":
        vecs = [np.asarray(v) for v in vectors]
        if not vecs:
            return cls(F, ambient_dim, F.zeros((0, ambient_dim)))
        return cls(F, ambient_dim, row_space(F, np.stack(vecs)))

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    @property
    def vectors(self) -> list[np.ndarray]:
        return [r.copy() for r in self.rows]

    def as_columns(self) -> np.ndarray:
        return self.rows.T.copy()

    def contains(self, v) -> bool:
        return span_contains(self.field, self.as_columns(), np.asarray(v))

    def pivots(self) -> list[int]:
        F = self.field
        out = []
        for r in self.rows:
            out.append(int(np.flatnonzero(F.nonzero_mask(r))[0]))
        return out

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Reduce ``v`` modulo the subspace (clears every pivot coordinate)."""
        F = self.field
        v = F.array(v) if not isinstance(v, np.ndarray) else v.copy()
        for r, p in zip(self.rows, self.pivots()):
            if F.nonzero_mask(v[p : p + 1])[0]:
                v = F.reduce(v - v[p] * r)
        return v

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceBasis)
            and self.ambient_dim == other.ambient_dim
            and self.rows.shape == other.rows.shape
            and bool(np.all(self.rows == other.rows))
        )
