"""Projective covers, injective hulls, syzygies, Ext and the stable category."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import StructureAlgebra, primitive_idempotents, radical
from .linalg import column_space, kernel_matrix, left_inverse, rank, row_space, solve_linear, span_contains
from .modules import (
    FDModule,
    ModuleMap,
    decompose,
    direct_sum,
    dual,
    hom_matrices,
    is_isomorphic_indecomposable,
    quotient_module,
    regular_module,
    submodule,
    zero_module,
    _multiset_equal,
)

__all__ = [
    "indecomposable_projectives",
    "indecomposable_injectives",
    "radical_submodule",
    "projective_cover",
    "injective_hull",
    "syzygy",
    "cosyzygy",
    "Resolution",
    "minimal_resolution",
    "ExtResult",
    "ext",
    "extension_class",
    "StableHom",
    "stable_hom",
    "is_projective",
    "is_injective",
    "strip_injectives",
    "strip_projectives",
    "injectively_equivalent",
    "is_self_injective",
]


def _cache(obj) -> dict:
    return obj.__dict__.setdefault("_cache", {})


def indecomposable_projectives(A: StructureAlgebra) -> list[FDModule]:
    """P_i = A e_i, one per primitive idempotent."""
    c = _cache(A)
    if "projectives" not in c:
        F = A.field
        reg = regular_module(A)
        out = []
        for i, e in enumerate(primitive_idempotents(A)):
            V = column_space(F, A.right_mult(e))
            P = submodule(reg, V, name=f"P{i}")
            _cache(P)["basis_in_A"] = V
            out.append(P)
        c["projectives"] = out
    return c["projectives"]


def indecomposable_injectives(A: StructureAlgebra) -> list[FDModule]:
    """I_i = D(e_i A), the duals of the projectives of the opposite algebra."""
    c = _cache(A)
    if "injectives" not in c:
        out = []
        for i, P in enumerate(indecomposable_projectives(A.opposite())):
            I = dual(P)
            I.name = f"I{i}"
            out.append(I)
        c["injectives"] = out
    return c["injectives"]


def radical_submodule(M: FDModule) -> np.ndarray:
    """Columns spanning rad(A) M."""
    F = M.field
    R = radical(M.algebra)
    if R.dim == 0 or M.dim == 0:
        return F.zeros((M.dim, 0))
    mats = F.matmul(R.rows, M.action.reshape(M.algebra.dim, -1)).reshape(R.dim, M.dim, M.dim)
    return column_space(F, np.concatenate(list(mats), axis=1))


def projective_cover(M: FDModule) -> ModuleMap:
    """Minimal projective cover P(M) -> M, P(M) a sum of P_i in idempotent order."""
    c = _cache(M)
    if "cover" in c:
        return c["cover"]
    A = M.algebra
    F = M.field
    E = primitive_idempotents(A)
    Ps = indecomposable_projectives(A)
    span = radical_submodule(M)
    r0 = span.shape[1]
    gens = []
    for i, e in enumerate(E):
        for v in column_space(F, M.act(e)).T:
            trial = np.concatenate([span, v.reshape(-1, 1)], axis=1)
            if rank(F, trial) > r0:
                span, r0 = trial, r0 + 1
                gens.append((i, v))
    if not gens:
        P = zero_module(A)
        out = ModuleMap(P, M, F.zeros((M.dim, 0)))
    else:
        P = direct_sum(*[Ps[i] for i, _ in gens])
        cols = []
        n = A.dim
        for i, v in gens:
            X = _cache(Ps[i])["basis_in_A"]  # (n, k)
            act_v = F.matmul(M.action, v.reshape(-1, 1)).reshape(n, M.dim)  # row j: b_j . v
            cols.append(F.matmul(act_v.T, X))
        out = ModuleMap(P, M, np.concatenate(cols, axis=1))
        _cache(P)["tops"] = [i for i, _ in gens]
    c["cover"] = out
    return out


def injective_hull(M: FDModule) -> ModuleMap:
    """M -> I(M) = D P(DM), the transpose of the cover of the dual."""
    c = _cache(M)
    if "hull" not in c:
        cov = projective_cover(dual(M))
        I = dual(cov.source)
        c["hull"] = ModuleMap(M, I, np.ascontiguousarray(cov.matrix.T))
    return c["hull"]


def syzygy(M: FDModule) -> FDModule:
    cov = projective_cover(M)
    K = kernel_matrix(M.field, cov.matrix)
    return submodule(cov.source, K, name=f"Omega({M.name})")


def cosyzygy(M: FDModule) -> FDModule:
    h = injective_hull(M)
    Q, _ = quotient_module(h.target, h.matrix, name=f"Omega^-1({M.name})")
    return Q


def is_projective(M: FDModule) -> bool:
    return projective_cover(M).source.dim == M.dim


def is_injective(M: FDModule) -> bool:
    return injective_hull(M).target.dim == M.dim


@dataclass(eq=False)
class Resolution:
    """P_k with d_k: P_k -> P_{k-1} (``differentials[k-1]``) and P_0 -> M."""

    module: FDModule
    projectives: list[FDModule]
    differentials: list[np.ndarray]
    augmentation: np.ndarray

    @property
    def length(self) -> int:
        return len(self.projectives) - 1

    def is_exact(self) -> bool:
        F = self.module.field
        maps = [self.augmentation] + self.differentials
        if rank(F, self.augmentation) != self.module.dim:
            return False
        for k in range(len(maps) - 1):
            # image d_{k+1} = kernel d_k
            img = rank(F, maps[k + 1])
            if img != maps[k].shape[1] - rank(F, maps[k]):
                return False
            if np.any(F.nonzero_mask(F.matmul(maps[k], maps[k + 1]))):
                return False
        return True

    def is_minimal(self) -> bool:
        F = self.module.field
        for k, d in enumerate(self.differentials):
            R = radical_submodule(self.projectives[k])
            if not all(span_contains(F, R, col) for col in d.T):
                return False
        return True


def minimal_resolution(M: FDModule, length: int) -> Resolution:
    c = _cache(M)
    res = c.get("resolution")
    F = M.field
    if res is None:
        cov = projective_cover(M)
        res = Resolution(M, [cov.source], [], cov.matrix)
        c["resolution"] = res
    while res.length < length:
        last = res.projectives[-1]
        prev = res.differentials[-1] if res.differentials else res.augmentation
        K = kernel_matrix(F, prev)
        if K.shape[1] == 0:
            P = zero_module(M.algebra)
            res.projectives.append(P)
            res.differentials.append(F.zeros((last.dim, 0)))
            continue
        Kmod = submodule(last, K)
        cov = projective_cover(Kmod)
        res.projectives.append(cov.source)
        res.differentials.append(F.matmul(K, cov.matrix))
    return res


@dataclass
class ExtResult:
    degree: int
    dim: int
    cocycles: np.ndarray  # (z, dim N, dim P_d)
    coboundaries: np.ndarray  # (b, dim N, dim P_d)
    representatives: np.ndarray  # (dim, dim N, dim P_d)


def ext(M: FDModule, N: FDModule, d: int) -> ExtResult:
    """Ext^d(M, N) from a minimal projective resolution of M."""
    if d < 1:
        raise ValueError("Ext degree must be at least 1")
    F = M.field
    res = minimal_resolution(M, d + 1)
    Pd = res.projectives[d]
    dnext = res.differentials[d]  # P_{d+1} -> P_d
    dcur = res.differentials[d - 1]  # P_d -> P_{d-1}
    Pprev = res.projectives[d - 1]
    H = hom_matrices(Pd, N)
    h = H.shape[0]
    if h:
        comp = F.matmul(H, dnext).reshape(h, -1)
        K = kernel_matrix(F, comp.T)
        Z = F.matmul(K.T, H.reshape(h, -1)) if K.shape[1] else F.zeros((0, N.dim * Pd.dim))
    else:
        Z = F.zeros((0, N.dim * Pd.dim))
    G = hom_matrices(Pprev, N)
    if G.shape[0]:
        B = row_space(F, F.matmul(G, dcur).reshape(G.shape[0], -1))
    else:
        B = F.zeros((0, N.dim * Pd.dim))
    reps = []
    span = B
    for z in row_space(F, Z) if Z.shape[0] else []:
        trial = np.concatenate([span, z.reshape(1, -1)])
        if rank(F, trial) > span.shape[0]:
            span = trial
            reps.append(z)
    shape = (N.dim, Pd.dim)
    R = np.stack(reps).reshape(len(reps), *shape) if reps else F.zeros((0, *shape))
    return ExtResult(
        d, len(reps), Z.reshape(Z.shape[0], *shape), B.reshape(B.shape[0], *shape), R
    )


def extension_class(iota: np.ndarray, E: FDModule, pi: np.ndarray, N: FDModule, M: FDModule) -> tuple[bool, np.ndarray]:
    """Class of 0 -> N -iota-> E -pi-> M -> 0 in Ext^1(M, N).

    Lifts the cover P_0 -> M through ``pi``; the restriction to Omega M factors
    through ``iota`` and gives a cocycle ``beta``.  Returns ``(is_zero, beta)``.
    """
    F = M.field
    res = minimal_resolution(M, 2)
    P0 = res.projectives[0]
    eps = res.augmentation
    H = hom_matrices(P0, E)
    h = H.shape[0]
    lhs = F.matmul(pi, H).reshape(h, -1).T if h else F.zeros((M.dim * P0.dim, 0))
    coeffs = solve_linear(F, lhs, eps.reshape(-1))
    if coeffs is None:
        raise ValueError("cover does not lift through the given surjection")
    lift = F.matmul(coeffs.reshape(1, h), H.reshape(h, -1)).reshape(E.dim, P0.dim)
    j = kernel_matrix(F, eps)  # Omega M inside P_0
    beta = F.matmul(left_inverse(F, iota), F.matmul(lift, j))
    G = hom_matrices(P0, N)
    if G.shape[0] == 0:
        return not np.any(F.nonzero_mask(beta)), beta
    restr = F.matmul(G, j).reshape(G.shape[0], -1)
    zero = span_contains(F, restr.T, beta.reshape(-1))
    return zero, beta


@dataclass
class StableHom:
    dim: int
    basis: list[np.ndarray]


def stable_hom(M: FDModule, N: FDModule) -> StableHom:
    """Hom(M, N) modulo maps factoring through an injective."""
    F = M.field
    H = hom_matrices(M, N)
    if H.shape[0] == 0:
        return StableHom(0, [])
    hull = injective_hull(M)
    G = hom_matrices(hull.target, N)
    if G.shape[0]:
        span = row_space(F, F.matmul(G, hull.matrix).reshape(G.shape[0], -1))
    else:
        span = F.zeros((0, N.dim * M.dim))
    basis = []
    for f in H:
        trial = np.concatenate([span, f.reshape(1, -1)])
        if rank(F, trial) > span.shape[0]:
            span = trial
            basis.append(f)
    return StableHom(len(basis), basis)


def strip_injectives(M: FDModule) -> list[FDModule]:
    return [X for X in decompose(M).modules if not is_injective(X)]


def strip_projectives(M: FDModule) -> list[FDModule]:
    return [X for X in decompose(M).modules if not is_projective(X)]


def injectively_equivalent(X: FDModule, Y: FDModule) -> bool:
    return _multiset_equal(strip_injectives(X), strip_injectives(Y))


def is_self_injective(A: StructureAlgebra) -> bool:
    c = _cache(A)
    if "self_injective" not in c:
        Is = indecomposable_injectives(A)
        c["self_injective"] = all(
            any(is_isomorphic_indecomposable(P, I) for I in Is) for P in indecomposable_projectives(A)
        )
    return c["self_injective"]
