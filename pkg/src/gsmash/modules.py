"""Finite-dimensional left modules, hom spaces and Krull-Schmidt decomposition.

A module over a structure-constant algebra ``A`` is stored as the stack of
action matrices ``action[i]`` of the basis elements ``b_i`` acting on column
vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import (
    NonSplitBasicError,
    StructureAlgebra,
    CharacteristicError,
    minimal_polynomial,
    quiver_data,
)
from .field import Field
from .linalg import column_space, complement_columns, inverse, kernel_matrix, left_inverse, rank, row_space
from .poly import factor

__all__ = [
    "FDModule",
    "ModuleMap",
    "ModuleCheck",
    "Summand",
    "Decomposition",
    "DecompositionError",
    "AlgebraMismatch",
    "check_module",
    "regular_module",
    "zero_module",
    "direct_sum",
    "submodule",
    "quotient_module",
    "hom_space",
    "hom_matrices",
    "end_radical_dim",
    "decompose",
    "is_isomorphic",
    "is_isomorphic_indecomposable",
    "dimension_vector",
    "minimal_polynomial",
    "dual",
]


class AlgebraMismatch(ValueError):
    pass


class DecompositionError(ValueError):
    pass


@dataclass(eq=False)
class FDModule:
    algebra: StructureAlgebra
    action: np.ndarray  # (dim A, d, d)
    name: str = ""

    def __post_init__(self):
        n = self.algebra.dim
        if self.action.ndim != 3 or self.action.shape[0] != n or self.action.shape[1] != self.action.shape[2]:
            raise ValueError(f"action must have shape ({n}, d, d), got {self.action.shape}")

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self):
        return f"FDModule({self.name or '?'}, dim={self.dim}, over {self.algebra.name or 'A'})"

    def act(self, u: np.ndarray) -> np.ndarray:
        """Matrix of the element ``u`` (coordinate vector in A)."""
        F = self.field
        n, d = self.algebra.dim, self.dim
        if d == 0:
            return F.zeros((0, 0))
        return F.matmul(u.reshape(1, n), self.action.reshape(n, d * d)).reshape(d, d)

    def same_as(self, other: "FDModule") -> bool:
        """Bit-identical action matrices over the same algebra."""
        return (
            self.algebra is other.algebra
            and self.action.shape == other.action.shape
            and bool(np.all(self.action == other.action))
        )


@dataclass(eq=False)
class ModuleMap:
    source: FDModule
    target: FDModule
    matrix: np.ndarray  # target.dim x source.dim

    def is_homomorphism(self) -> bool:
        F = self.source.field
        S, T = self.source.action, self.target.action
        return all(
            np.all(F.matmul(self.matrix, S[i]) == F.matmul(T[i], self.matrix)) for i in range(S.shape[0])
        )

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        F = self.source.field
        return ModuleMap(other.source, self.target, F.matmul(self.matrix, other.matrix))

    @property
    def rank(self) -> int:
        return rank(self.source.field, self.matrix)

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim


@dataclass
class ModuleCheck:
    ok: bool
    message: str = "ok"

    def __bool__(self):
        return self.ok


def check_module(M: FDModule) -> ModuleCheck:
    A = M.algebra
    F = A.field
    d = M.dim
    if d == 0:
        return ModuleCheck(True)
    if not np.all(M.act(A.unit) == F.eye(d)):
        return ModuleCheck(False, "unit does not act as the identity")
    n = A.dim
    act = M.action
    # act(b_i) act(b_j) versus sum_k c_ijk act(b_k)
    lhs = F.matmul(act.reshape(n, 1, d, d), act.reshape(1, n, d, d))
    rhs = F.matmul(A.constants.reshape(n * n, n), act.reshape(n, d * d)).reshape(n, n, d, d)
    bad = np.argwhere(np.any(lhs != rhs, axis=(2, 3)))
    if len(bad):
        i, j = (int(t) for t in bad[0])
        return ModuleCheck(False, f"action violates {A.labels[i]}*{A.labels[j]}")
    return ModuleCheck(True)


# --- constructions -----------------------------------------------------------


def regular_module(A: StructureAlgebra) -> FDModule:
    return FDModule(A, A.left_matrices.copy(), name="A")


def zero_module(A: StructureAlgebra) -> FDModule:
    return FDModule(A, A.field.zeros((A.dim, 0, 0)), name="0")


def direct_sum(*mods: FDModule) -> FDModule:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    A = mods[0].algebra
    for M in mods:
        if M.algebra is not A:
            raise AlgebraMismatch("direct sum of modules over different algebras")
    F = A.field
    d = sum(M.dim for M in mods)
    act = F.zeros((A.dim, d, d))
    off = 0
    for M in mods:
        act[:, off : off + M.dim, off : off + M.dim] = M.action
        off += M.dim
    return FDModule(A, act, name="+".join(M.name or "?" for M in mods))


def restrict_action(M: FDModule, V: np.ndarray, L: np.ndarray | None = None) -> np.ndarray:
    F = M.field
    if L is None:
        L = left_inverse(F, V)
    n, k = M.algebra.dim, V.shape[1]
    AV = F.matmul(M.action, V)  # (n, d, k)
    return F.matmul(L, AV).reshape(n, k, k)


def submodule(M: FDModule, V: np.ndarray, name: str = "") -> FDModule:
    """Module on the invariant subspace spanned by the columns of ``V``."""
    return FDModule(M.algebra, restrict_action(M, V), name=name)


def quotient_module(M: FDModule, U: np.ndarray, name: str = "") -> tuple[FDModule, np.ndarray]:
    """``M / U`` for an invariant subspace ``U``; returns the module and the projection matrix."""
    F = M.field
    d = M.dim
    U = column_space(F, U) if U.shape[1] else U
    k = U.shape[1]
    if k == 0:
        return FDModule(M.algebra, M.action.copy(), name=name), F.eye(d)
    # complement by unit vectors; basis change T = [U | C]
    comp = complement_columns(F, U, d)
    C = F.zeros((d, len(comp)))
    for j, i in enumerate(comp):
        C[i, j] = F.one
    T = np.concatenate([U, C], axis=1)
    Tinv = inverse(F, T)
    proj = Tinv[k:, :]
    act = F.matmul(F.matmul(proj, M.action), C)
    return FDModule(M.algebra, act, name=name), proj


# --- hom spaces ------------------------------------------------------------


@dataclass
class _Adapted:
    T: np.ndarray
    Tinv: np.ndarray
    sizes: list[int]
    offsets: list[int]


def _adapted_basis(M: FDModule) -> _Adapted:
    """Basis adapted to M = sum_i e_i M."""
    cache = M.__dict__.setdefault("_cache", {})
    if "adapted" in cache:
        return cache["adapted"]
    F = M.field
    qd = quiver_data(M.algebra)
    cols, sizes, offsets = [], [], []
    off = 0
    for e in qd.idempotents:
        B = column_space(F, M.act(e))
        cols.append(B)
        sizes.append(B.shape[1])
        offsets.append(off)
        off += B.shape[1]
    T = np.concatenate(cols, axis=1) if cols else F.zeros((M.dim, 0))
    out = _Adapted(T, inverse(F, T), sizes, offsets)
    cache["adapted"] = out
    return out


def dimension_vector(M: FDModule) -> tuple[int, ...]:
    """dim e_i M over the primitive idempotents."""
    return tuple(_adapted_basis(M).sizes)


def _kron(F, a, b):
    return F.reduce(np.kron(a, b))


def _hom_split_basic(M: FDModule, N: FDModule) -> np.ndarray:
    F = M.field
    qd = quiver_data(M.algebra)
    aM, aN = _adapted_basis(M), _adapted_basis(N)
    nv = len(qd.idempotents)
    var_off, off = [], 0
    for i in range(nv):
        var_off.append(off)
        off += aN.sizes[i] * aM.sizes[i]
    s = off
    if s == 0:
        return F.zeros((0, N.dim, M.dim))
    blocks = []
    for (i, j, u) in qd.arrows:
        mi, mj, ni, nj = aM.sizes[i], aM.sizes[j], aN.sizes[i], aN.sizes[j]
        if nj * mi == 0:
            continue
        Mu = F.matmul(aM.Tinv, F.matmul(M.act(u), aM.T))
        Nu = F.matmul(aN.Tinv, F.matmul(N.act(u), aN.T))
        M_a = Mu[aM.offsets[j] : aM.offsets[j] + mj, aM.offsets[i] : aM.offsets[i] + mi]
        N_a = Nu[aN.offsets[j] : aN.offsets[j] + nj, aN.offsets[i] : aN.offsets[i] + ni]
        row = F.zeros((nj * mi, s))
        if mj and nj:
            row[:, var_off[j] : var_off[j] + nj * mj] = _kron(F, F.eye(nj), M_a.T)
        if ni and mi:
            row[:, var_off[i] : var_off[i] + ni * mi] = F.reduce(
                row[:, var_off[i] : var_off[i] + ni * mi] - _kron(F, N_a, F.eye(mi))
            )
        blocks.append(row)
    if blocks:
        S = np.concatenate(blocks, axis=0)
        S = S[F.nonzero_mask(S).any(axis=1)]
    else:
        S = F.zeros((0, s))
    K = kernel_matrix(F, S) if S.shape[0] else F.eye(s)
    out = F.zeros((K.shape[1], N.dim, M.dim))
    for c in range(K.shape[1]):
        blk = F.zeros((N.dim, M.dim))
        for i in range(nv):
            ni, mi = aN.sizes[i], aM.sizes[i]
            if ni and mi:
                blk[aN.offsets[i] : aN.offsets[i] + ni, aM.offsets[i] : aM.offsets[i] + mi] = K[
                    var_off[i] : var_off[i] + ni * mi, c
                ].reshape(ni, mi)
        out[c] = F.matmul(aN.T, F.matmul(blk, aM.Tinv))
    return out


def _greedy_generators(A: StructureAlgebra) -> list[np.ndarray]:
    """Basis elements generating A, chosen greedily in basis order."""
    cache = A.__dict__.setdefault("_cache", {})
    if "greedy_gens" in cache:
        return cache["greedy_gens"]
    F = A.field
    n = A.dim
    gens = []
    span = row_space(F, A.unit.reshape(1, -1))
    for i in range(n):
        b = A.basis_vector(i)
        if rank(F, np.concatenate([span, b.reshape(1, -1)])) == span.shape[0]:
            continue
        gens.append(b)
        # close the span under multiplication
        while True:
            prods = [A.mul(x, y) for x in span for y in span]
            new = row_space(F, np.concatenate([span, np.stack(prods), b.reshape(1, -1)]))
            if new.shape[0] == span.shape[0]:
                break
            span = new
        if span.shape[0] == n:
            break
    cache["greedy_gens"] = gens
    return gens


def _hom_generic(M: FDModule, N: FDModule) -> np.ndarray:
    F = M.field
    dM, dN = M.dim, N.dim
    rows = []
    for u in _greedy_generators(M.algebra):
        rows.append(F.reduce(_kron(F, F.eye(dN), M.act(u).T) - _kron(F, N.act(u), F.eye(dM))))
    S = np.concatenate(rows) if rows else F.zeros((0, dM * dN))
    K = kernel_matrix(F, S)
    return np.ascontiguousarray(K.T).reshape(K.shape[1], dN, dM)


def hom_matrices(M: FDModule, N: FDModule) -> np.ndarray:
    """Basis of Hom_A(M, N) as a stack ``(h, dim N, dim M)`` in canonical echelon order."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("hom between modules over different algebras")
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return F.zeros((0, N.dim, M.dim))
    try:
        H = _hom_split_basic(M, N)
    except (NonSplitBasicError, CharacteristicError):
        H = _hom_generic(M, N)
    if H.shape[0] == 0:
        return H
    R = row_space(F, H.reshape(H.shape[0], -1))
    return R.reshape(R.shape[0], N.dim, M.dim)


def hom_space(M: FDModule, N: FDModule) -> list[ModuleMap]:
    return [ModuleMap(M, N, f) for f in hom_matrices(M, N)]


# --- decomposition ---------------------------------------------------------


def end_radical_dim(M: FDModule, E: np.ndarray | None = None) -> int:
    """dim rad End(M) via the trace form tr_M(xy); needs char 0 or char > dim M."""
    F = M.field
    if E is None:
        E = hom_matrices(M, M)
    p = F.characteristic
    if p and p <= M.dim:
        raise CharacteristicError(
            f"characteristic {p} must exceed module dimension {M.dim} to compute rad End(M)"
        )
    s = E.shape[0]
    X = E.reshape(s, -1)
    Y = np.ascontiguousarray(E.transpose(0, 2, 1)).reshape(s, -1)
    G = F.matmul(X, Y.T)
    return s - rank(F, G)


@dataclass(eq=False)
class Summand:
    module: FDModule
    inclusion: np.ndarray  # (dim M, dim summand)


@dataclass(eq=False)
class Decomposition:
    module: FDModule
    summands: list[Summand]

    @cached_property
    def projections(self) -> list[np.ndarray]:
        F = self.module.field
        if not self.summands:
            return []
        T = np.concatenate([s.inclusion for s in self.summands], axis=1)
        Tinv = inverse(F, T)
        out, off = [], 0
        for s in self.summands:
            k = s.module.dim
            out.append(Tinv[off : off + k])
            off += k
        return out

    def idempotents(self) -> list[np.ndarray]:
        """Orthogonal idempotents of End(M) realising the splitting."""
        F = self.module.field
        return [F.matmul(s.inclusion, p) for s, p in zip(self.summands, self.projections)]

    @property
    def modules(self) -> list[FDModule]:
        return [s.module for s in self.summands]

    def grouped(self) -> list[tuple[FDModule, int]]:
        """Isomorphism classes of summands with multiplicities."""
        classes: list[list] = []
        for X in self.modules:
            for cls in classes:
                if is_isomorphic_indecomposable(cls[0], X):
                    cls[1] += 1
                    break
            else:
                classes.append([X, 1])
        return [(X, k) for X, k in classes]


_DECOMP_TRIALS = 60


def _find_split(M: FDModule, seed: int) -> tuple[np.ndarray, np.ndarray] | None:
    F = M.field
    E = hom_matrices(M, M)
    s = E.shape[0]
    if s <= 1:
        return None
    dbar = s - end_radical_dim(M, E)
    if dbar == 1:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(_DECOMP_TRIALS):
        coeffs = F.random_array(rng, (s,))
        phi = F.matmul(coeffs.reshape(1, s), E.reshape(s, -1)).reshape(M.dim, M.dim)
        mp = minimal_polynomial(F, phi)
        facs = factor(mp)
        if len(facs) >= 2:
            f1, e1 = facs[0]
            u = f1**e1
            w = mp // u
            V1 = kernel_matrix(F, u.eval_matrix(phi))
            V2 = kernel_matrix(F, w.eval_matrix(phi))
            return V1, V2
        f, _ = facs[0]
        if f.degree == dbar:
            return None  # End(M)/rad is the field k[phi]: M is indecomposable
    raise DecompositionError(
        f"could not split End(M) (dim {s}, semisimple part dim {dbar}) over {F!r}; "
        "the endomorphism quotient is probably not split over this field - rerun over a suitable F_p"
    )


def decompose(M: FDModule, seed: int = 20240517) -> Decomposition:
    """Split M into indecomposables using primary decomposition of random endomorphisms."""
    cache = M.__dict__.setdefault("_cache", {})
    if "decomposition" in cache:
        return cache["decomposition"]
    F = M.field
    out: list[Summand] = []
    stack = [(M, F.eye(M.dim))]
    while stack:
        X, incl = stack.pop()
        if X.dim == 0:
            continue
        split = _find_split(X, seed + X.dim)
        if split is None:
            out.append(Summand(X, incl))
            continue
        V1, V2 = split
        X1, X2 = submodule(X, V1), submodule(X, V2)
        stack.append((X2, F.matmul(incl, V2)))
        stack.append((X1, F.matmul(incl, V1)))
    for s in out:
        s.module.__dict__.setdefault("_cache", {})["indecomposable"] = True
    D = Decomposition(M, out)
    cache["decomposition"] = D
    return D


def _quick_invariants(M: FDModule):
    try:
        return (M.dim, dimension_vector(M))
    except (NonSplitBasicError, CharacteristicError):
        return (M.dim,)


def is_isomorphic_indecomposable(X: FDModule, Y: FDModule) -> bool:
    """For indecomposables: isomorphic iff some Hom basis element is invertible."""
    if _quick_invariants(X) != _quick_invariants(Y):
        return False
    F = X.field
    for f in hom_matrices(X, Y):
        if rank(F, f) == X.dim:
            return True
    return False


def _random_iso(M: FDModule, N: FDModule, H: np.ndarray, tries: int = 3) -> bool:
    F = M.field
    rng = np.random.default_rng(7 + M.dim)
    h = H.shape[0]
    for _ in range(tries):
        c = F.random_array(rng, (h,))
        f = F.matmul(c.reshape(1, h), H.reshape(h, -1)).reshape(N.dim, M.dim)
        if rank(F, f) == M.dim:
            return True
    return False


def is_isomorphic(M: FDModule, N: FDModule) -> bool:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    if M.dim != N.dim or _quick_invariants(M) != _quick_invariants(N):
        return False
    if M.dim == 0:
        return True
    H = hom_matrices(M, N)
    if H.shape[0] == 0:
        return False
    if _random_iso(M, N, H):
        return True
    return _multiset_equal(decompose(M).modules, decompose(N).modules)


def _multiset_equal(xs: list[FDModule], ys: list[FDModule]) -> bool:
    if len(xs) != len(ys):
        return False
    remaining = list(ys)
    for X in xs:
        for k, Y in enumerate(remaining):
            if is_isomorphic_indecomposable(X, Y):
                del remaining[k]
                break
        else:
            return False
    return True


def multiset_difference(xs: list[FDModule], ys: list[FDModule]) -> list[FDModule] | None:
    """Indecomposables ``xs - ys`` up to isomorphism, or ``None`` if ``ys`` is not contained in ``xs``."""
    remaining = list(xs)
    for Y in ys:
        for k, X in enumerate(remaining):
            if is_isomorphic_indecomposable(X, Y):
                del remaining[k]
                break
        else:
            return None
    return remaining


def is_direct_summand(X: FDModule, M: FDModule) -> bool:
    """Whether X is isomorphic to a direct summand of M (via full decompositions)."""
    if X.dim > M.dim:
        return False
    return multiset_difference(decompose(M).modules, decompose(X).modules) is not None


def dual(M: FDModule) -> FDModule:
    """D M = Hom_k(M, k) as a module over the opposite algebra (transposed actions)."""
    return FDModule(M.algebra.opposite(), np.ascontiguousarray(M.action.transpose(0, 2, 1)), name=f"D({M.name})")

