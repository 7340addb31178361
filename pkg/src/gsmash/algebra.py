"""Finite-dimensional algebras given by structure constants.

``constants[i, j, k]`` is the coefficient of ``b_k`` in ``b_i * b_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from fractions import Fraction
from math import lcm

import numpy as np

from .field import Field, Rationals
from .linalg import (
    SubspaceBasis,
    complement_columns,
    kernel_matrix,
    left_inverse,
    rank,
    row_space,
)
from .poly import Poly, factor

__all__ = [
    "StructureAlgebra",
    "AlgebraCheck",
    "NonSplitBasicError",
    "CharacteristicError",
    "QuiverData",
    "check_algebra",
    "radical",
    "radical_power",
    "loewy_length",
    "primitive_idempotents",
    "opposite",
    "quiver_data",
    "minimal_polynomial",
]


class NonSplitBasicError(ValueError):
    """A/rad(A) is not isomorphic to a product of copies of the base field."""


class CharacteristicError(ValueError):
    """The characteristic is too small for a trace-form radical computation."""


@dataclass(eq=False)
class StructureAlgebra:
    field: Field
    labels: list[str]
    constants: np.ndarray
    unit: np.ndarray
    name: str = ""
    _opposite: "StructureAlgebra | None" = dc_field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if n < 1:
            raise ValueError("an algebra needs at least one basis element")
        self.constants = self.field.array(self.constants) if self.constants.dtype != self.field.dtype else self.constants
        self.unit = self.field.array(self.unit) if self.unit.dtype != self.field.dtype else self.unit
        if self.constants.shape != (n, n, n) or self.unit.shape != (n,):
            raise ValueError("structure constants / unit have the wrong shape")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"StructureAlgebra({self.name or '?'}, dim={self.dim}, field={self.field!r})"

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def element(self, coords: dict | None = None, **by_label) -> np.ndarray:
        """Build an element from ``{label_or_index: coefficient}``."""
        v = self.field.zeros(self.dim)
        items = dict(coords or {})
        items.update(by_label)
        for key, c in items.items():
            i = key if isinstance(key, int) else self.labels.index(key)
            v[i] = self.field(c)
        return v

    @cached_property
    def left_matrices(self) -> np.ndarray:
        """``L[i]`` is the matrix of ``x -> b_i x`` in the basis."""
        return np.ascontiguousarray(self.constants.transpose(0, 2, 1))

    @cached_property
    def right_matrices(self) -> np.ndarray:
        """``R[j]`` is the matrix of ``x -> x b_j``."""
        return np.ascontiguousarray(self.constants.transpose(1, 2, 0))

    def left_mult(self, u: np.ndarray) -> np.ndarray:
        F = self.field
        n = self.dim
        return F.matmul(u.reshape(1, n), self.left_matrices.reshape(n, n * n)).reshape(n, n)

    def right_mult(self, u: np.ndarray) -> np.ndarray:
        F = self.field
        n = self.dim
        return F.matmul(u.reshape(1, n), self.right_matrices.reshape(n, n * n)).reshape(n, n)

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.field.matmul(self.left_mult(u), v)

    def power(self, u: np.ndarray, k: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def is_commutative(self) -> bool:
        return bool(np.all(self.constants == self.constants.transpose(1, 0, 2)))

    def opposite(self) -> "StructureAlgebra":
        if self._opposite is None:
            op = StructureAlgebra(
                self.field,
                list(self.labels),
                np.ascontiguousarray(self.constants.transpose(1, 0, 2)),
                self.unit.copy(),
                name=f"{self.name}^op" if self.name else "op",
            )
            op._opposite = self
            self._opposite = op
        return self._opposite


def opposite(A: StructureAlgebra) -> StructureAlgebra:
    """Opposite algebra; ``opposite(opposite(A)) is A``."""
    return A.opposite()


@dataclass
class AlgebraCheck:
    ok: bool
    message: str = "ok"
    triple: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.ok


def _integer_image(F: Field, c: np.ndarray) -> tuple[np.ndarray, int] | None:
    """Scale rational constants to an int64 array if that is overflow-safe."""
    if not isinstance(F, Rationals):
        return None
    den = 1
    for v in c.flat:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in c.flat]
    big = max((abs(v) for v in ints), default=0)
    if big and big * big * c.shape[0] >= 2**62:
        return None
    return np.array(ints, dtype=np.int64).reshape(c.shape), den


def _assoc_sides(F: Field, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = c.shape[0]
    scaled = _integer_image(F, c)
    if scaled is not None:
        ci = scaled[0]
        mm = np.matmul
    else:
        ci = c
        mm = F.matmul
    # lhs[i,j,k,l] = sum_m c[i,j,m] c[m,k,l];  rhs[i,j,k,l] = sum_m c[j,k,m] c[i,m,l]
    lhs = mm(ci.reshape(n * n, n), ci.reshape(n, n * n)).reshape(n, n, n, n)
    rhs = mm(ci.reshape(n * n, n), ci.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n, n)
    rhs = rhs.transpose(2, 0, 1, 3)
    return lhs, rhs


def check_algebra(A: StructureAlgebra) -> AlgebraCheck:
    """Exhaustive associativity and unit check; reports the first failure."""
    F = A.field
    lhs, rhs = _assoc_sides(F, A.constants)
    bad = np.argwhere(np.any(lhs != rhs, axis=3))
    if len(bad):
        i, j, k = (int(t) for t in bad[0])
        return AlgebraCheck(
            False,
            f"associativity fails: ({A.labels[i]}*{A.labels[j]})*{A.labels[k]} != "
            f"{A.labels[i]}*({A.labels[j]}*{A.labels[k]})",
            (i, j, k),
        )
    eye = F.eye(A.dim)
    if not np.all(A.left_mult(A.unit) == eye):
        return AlgebraCheck(False, "unit is not a left identity")
    if not np.all(A.right_mult(A.unit) == eye):
        return AlgebraCheck(False, "unit is not a right identity")
    return AlgebraCheck(True)


def _check_characteristic(F: Field, n: int, what: str) -> None:
    p = F.characteristic
    if p and p <= n:
        raise CharacteristicError(
            f"characteristic {p} must exceed {what} dimension {n} for the trace-form radical"
        )


def radical(A: StructureAlgebra) -> SubspaceBasis:
    """Jacobson radical by the trace-form criterion: rad A = {x : Tr L(x b_j) = 0 for all j}."""
    F = A.field
    n = A.dim
    _check_characteristic(F, n, "algebra")
    return _cached(A, "radical", lambda: _radical(A))


def _radical(A: StructureAlgebra) -> SubspaceBasis:
    F = A.field
    n = A.dim
    c = A.constants
    traces = F.reduce(np.array([sum(c[k, j, j] for j in range(n)) for k in range(n)], dtype=F.dtype))
    T = F.matmul(c.reshape(n * n, n), traces.reshape(n, 1)).reshape(n, n)  # T[i, j]
    K = kernel_matrix(F, T.T)
    return SubspaceBasis.span(F, [K[:, j] for j in range(K.shape[1])], n)


def _cached(A, key, fn):
    store = A.__dict__.setdefault("_cache", {})
    if key not in store:
        store[key] = fn()
    return store[key]


def _span_products(A: StructureAlgebra, left: SubspaceBasis, right: SubspaceBasis) -> SubspaceBasis:
    F = A.field
    n = A.dim
    if left.dim == 0 or right.dim == 0:
        return SubspaceBasis.span(F, [], n)
    # products[a, b] = left_a * right_b
    T = F.matmul(left.rows, A.constants.reshape(n, n * n)).reshape(left.dim, n, n)
    products = F.matmul(right.rows.reshape(1, right.dim, n), T)
    return SubspaceBasis(F, n, row_space(F, products.reshape(-1, n)))


def radical_power(A: StructureAlgebra, k: int) -> SubspaceBasis:
    """rad(A)^k, with rad^0 = A."""
    F = A.field
    n = A.dim
    if k == 0:
        return SubspaceBasis(F, n, F.eye(n))

    def build():
        R = radical(A)
        P = R
        for _ in range(k - 1):
            P = _span_products(A, R, P)
        return P

    return _cached(A, ("radpow", k), build)


def loewy_length(A: StructureAlgebra) -> int:
    """Least L with rad(A)^L = 0."""
    R = radical(A)
    P = R
    L = 1
    while P.dim:
        P = _span_products(A, R, P)
        L += 1
        if L > A.dim + 1:
            raise RuntimeError("radical is not nilpotent")
    return L


def minimal_polynomial(F: Field, X: np.ndarray) -> Poly:
    """Minimal polynomial by incremental elimination on flattened powers of X."""
    n = X.shape[0]
    rows: list[np.ndarray] = []  # reduced power vectors
    pivots: list[int] = []
    combos: list[np.ndarray] = []  # each row as a combination of X^0..X^k
    cur = F.eye(n)
    for k in range(n + 1):
        v = cur.reshape(-1).copy()
        comb = F.zeros(n + 1)
        comb[k] = F.one
        for r, p, c in zip(rows, pivots, combos):
            if F.nonzero_mask(v[p : p + 1])[0]:
                f = v[p]
                v = F.reduce(v - r * f)
                comb = F.reduce(comb - c * f)
        nz = np.flatnonzero(F.nonzero_mask(v))
        if nz.size == 0:
            return Poly(F, list(comb[: k + 1])).monic()
        p = int(nz[0])
        inv = F.inv(v[p])
        rows.append(F.reduce(v * inv))
        combos.append(F.reduce(comb * inv))
        pivots.append(p)
        cur = F.matmul(cur, X)
    raise RuntimeError("no dependency among matrix powers")


def _split_eigenlines(F: Field, mats: list[np.ndarray], dim: int) -> list[np.ndarray]:
    """Common eigenlines of commuting diagonalisable matrices with eigenvalues in F."""
    spaces = [F.eye(dim)]
    for X in mats:
        refined = []
        for W in spaces:
            if W.shape[1] == 1:
                refined.append(W)
                continue
            Wl = left_inverse(F, W)
            Y = F.matmul(Wl, F.matmul(X, W))
            mp = minimal_polynomial(F, Y)
            facs = factor(mp)
            if any(f.degree != 1 or m != 1 for f, m in facs):
                raise NonSplitBasicError("non-split-basic input: semisimple quotient is not a product of copies of the field")
            for f, _ in facs:
                lam = F.neg(f.coeffs[0])
                shifted = F.reduce(Y - F.eye(Y.shape[0]) * lam)
                K = kernel_matrix(F, shifted)
                refined.append(F.matmul(W, K))
        spaces = refined
    if any(W.shape[1] != 1 for W in spaces):
        raise NonSplitBasicError("non-split-basic input: semisimple quotient is not a product of copies of the field")
    return [W[:, 0] for W in spaces]


def _semisimple_quotient(A: StructureAlgebra):
    """Structure constants of A/rad(A) on the complement of the radical's pivots."""
    F = A.field
    R = radical(A)
    comp = complement_columns(F, R.as_columns(), A.dim)
    m = len(comp)
    cbar = F.zeros((m, m, m))
    for a, ia in enumerate(comp):
        for b, ib in enumerate(comp):
            prod = R.reduce(A.constants[ia, ib])
            cbar[a, b] = prod[comp]
    unit_bar = R.reduce(A.unit)[comp]
    return comp, cbar, unit_bar


def primitive_idempotents(A: StructureAlgebra) -> list[np.ndarray]:
    """Complete set of orthogonal primitive idempotents of a split basic algebra."""
    return [e.copy() for e in _cached(A, "idempotents", lambda: _primitive_idempotents(A))]


def _primitive_idempotents(A: StructureAlgebra) -> list[np.ndarray]:
    F = A.field
    comp, cbar, unit_bar = _semisimple_quotient(A)
    m = len(comp)
    if not np.all(cbar == cbar.transpose(1, 0, 2)):
        raise NonSplitBasicError("non-split-basic input: A/rad(A) is not commutative")
    Lbar = [np.ascontiguousarray(cbar[a].T) for a in range(m)]
    lines = _split_eigenlines(F, Lbar, m)
    bars = []
    for w in lines:
        sq = F.matmul(F.matmul(w.reshape(1, m), cbar.reshape(m, m * m)).reshape(m, m).T, w)
        # w*w = lam*w for a line of idempotents
        idx = int(np.flatnonzero(F.nonzero_mask(w))[0])
        lam = F.div(sq[idx], w[idx])
        bars.append(F.reduce(w * F.inv(lam)))

    def key(e):
        nz = np.flatnonzero(F.nonzero_mask(e))
        return (int(nz[0]), [F.format(v) for v in e])

    bars.sort(key=key)
    reps = []
    for eb in bars:
        v = F.zeros(A.dim)
        v[comp] = eb
        reps.append(v)
    # sequential lifting inside shrinking corners f A f
    out = []
    f = A.unit.copy()
    for rep in reps[:-1]:
        x = A.mul(A.mul(f, rep), f)
        out.append(_lift_idempotent(A, x))
        f = F.reduce(f - out[-1])
    out.append(f)
    for e in out:
        if not np.all(A.mul(e, e) == e):
            raise RuntimeError("idempotent lifting failed")
    return out


def _lift_idempotent(A: StructureAlgebra, x: np.ndarray) -> np.ndarray:
    F = A.field
    e = x
    for _ in range(2 * A.dim + 4):
        e2 = A.mul(e, e)
        if np.all(e2 == e):
            return e
        e3 = A.mul(e2, e)
        e = F.reduce(e2 * F(3) - e3 * F(2))
    raise RuntimeError("idempotent lifting did not converge")


@dataclass
class QuiverData:
    """Gabriel-quiver shaped generating set of a split basic algebra.

    ``arrows[a] = (source, target, element)`` with ``element`` in
    ``e_target * rad * e_source``; together with the idempotents these
    generate the algebra.
    """

    idempotents: list[np.ndarray]
    arrows: list[tuple[int, int, np.ndarray]]


def quiver_data(A: StructureAlgebra) -> QuiverData:
    return _cached(A, "quiver", lambda: _quiver_data(A))


def _quiver_data(A: StructureAlgebra) -> QuiverData:
    F = A.field
    n = A.dim
    E = primitive_idempotents(A)
    R = radical(A)
    R2 = radical_power(A, 2)
    arrows = []
    for i, ei in enumerate(E):
        Rei = A.right_mult(ei)
        for j, ej in enumerate(E):
            P = F.matmul(A.left_mult(ej), Rei)  # x -> e_j x e_i
            block = row_space(F, F.matmul(P, R.as_columns()).T) if R.dim else F.zeros((0, n))
            if block.shape[0] == 0:
                continue
            base = F.matmul(P, R2.as_columns()).T if R2.dim else F.zeros((0, n))
            have = row_space(F, base) if base.shape[0] else F.zeros((0, n))
            r0 = have.shape[0]
            for v in block:
                trial = np.concatenate([have, v.reshape(1, -1)], axis=0)
                if rank(F, trial) > r0:
                    have = trial
                    r0 += 1
                    arrows.append((i, j, v.copy()))
    return QuiverData(E, arrows)
