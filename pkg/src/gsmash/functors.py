"""Pull-up B (x)_A -, push-down along A -> B, and twisting by the G-translation.

The pull-up is realised on ``(+)_g p_g (x) M`` (block ``g`` holds ``p_g (x) M``).
From ``p_t a = a p_{s^-1 t}`` for ``a`` of degree ``s`` one gets

    (a p_h) . (p_g (x) m) = delta_{h,g} p_{s g} (x) a m,

so ``b_i p_h`` maps block ``h`` into block ``deg(i) h`` through ``M(b_i)``.
"""

from __future__ import annotations

import numpy as np

from .graded import SmashProduct
from .linalg import column_space
from .modules import AlgebraMismatch, FDModule, quotient_module

__all__ = [
    "pull_up",
    "pull_up_matrix",
    "push_down",
    "twist_module",
    "tensor_pull_up",
]


def pull_up(sp: SmashProduct, M: FDModule) -> FDModule:
    if M.algebra is not sp.base:
        raise AlgebraMismatch("pull_up expects a module over the graded algebra")
    F = M.field
    G = sp.group
    m, d, n = G.order, M.dim, sp.base.dim
    act = F.zeros((n * m, m * d, m * d))
    for i in range(n):
        s = sp.graded.degree[i]
        for h in range(m):
            t = G.mul(s, h)
            act[sp.index(i, h), t * d : (t + 1) * d, h * d : (h + 1) * d] = M.action[i]
    return FDModule(sp.algebra, act, name=f"B@{M.name}")


def pull_up_matrix(sp: SmashProduct, f: np.ndarray) -> np.ndarray:
    """B (x)_A f for an A-linear map given by its matrix."""
    F = sp.algebra.field
    m = sp.group.order
    r, c = f.shape
    out = F.zeros((m * r, m * c))
    for g in range(m):
        out[g * r : (g + 1) * r, g * c : (g + 1) * c] = f
    return out


def push_down(sp: SmashProduct, N: FDModule) -> FDModule:
    """Restriction along the embedding: a acts as sum_h a p_h."""
    if N.algebra is not sp.algebra:
        raise AlgebraMismatch("push_down expects a module over the smash product")
    F = N.field
    m, n, d = sp.group.order, sp.base.dim, N.dim
    act = F.reduce(N.action.reshape(n, m, d, d).sum(axis=1))
    return FDModule(sp.base, act, name=f"res({N.name})")


def twist_module(sp: SmashProduct, N: FDModule, x: int) -> FDModule:
    """Same space; ``b`` acts as ``rho_x(b)``."""
    if N.algebra is not sp.algebra:
        raise AlgebraMismatch("twist_module expects a module over the smash product")
    perm = sp.translate_permutation(x)
    return FDModule(sp.algebra, N.action[perm].copy(), name=f"{N.name}^{sp.group.elements[x]}")


def tensor_pull_up(sp: SmashProduct, M: FDModule) -> tuple[FDModule, np.ndarray]:
    """B (x)_A M computed literally as (B (x)_k M) / span(b a (x) m - b (x) a m).

    Independent of the block formula in :func:`pull_up`; returns the module and
    the projection from ``B (x)_k M``.
    """
    if M.algebra is not sp.base:
        raise AlgebraMismatch("tensor_pull_up expects a module over the graded algebra")
    F = M.field
    B = sp.algebra
    nB, d = B.dim, M.dim
    IB, Id = F.eye(nB), F.eye(d)
    act = F.reduce(np.stack([np.kron(L, Id) for L in B.left_matrices]))
    free = FDModule(B, act, name="B(x)M")
    rels = []
    for i in range(sp.base.dim):
        Ra = B.right_mult(sp.embed(sp.base.basis_vector(i)))
        rels.append(F.reduce(np.kron(Ra, Id) - np.kron(IB, M.action[i])))
    U = column_space(F, np.concatenate(rels, axis=1))
    Q, proj = quotient_module(free, U, name=f"B(x)_A {M.name}")
    return Q, proj
