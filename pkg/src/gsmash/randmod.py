"""Seeded random modules.

A random module is a quotient of a small sum of indecomposable projectives by
the submodule generated by a few random radical elements; half of the time the
construction runs over the opposite algebra and is dualised, which produces
submodules of injectives instead.
"""

from __future__ import annotations

import numpy as np

from .algebra import StructureAlgebra
from .homological import indecomposable_projectives, radical_submodule
from .linalg import column_space
from .modules import DecompositionError, FDModule, decompose, direct_sum, dual, quotient_module

__all__ = ["random_module", "random_modules"]


def _generated_submodule(P: FDModule, gens: np.ndarray) -> np.ndarray:
    F = P.field
    if gens.shape[1] == 0:
        return gens
    imgs = F.matmul(P.action, gens)  # (n, d, r)
    return column_space(F, np.concatenate(list(imgs), axis=1))


def random_module(A: StructureAlgebra, rng: np.random.Generator, max_dim: int = 6, tries: int = 500) -> FDModule:
    """A nonzero module of dimension at most ``max_dim``; decomposable over the base field."""
    F = A.field
    for _ in range(tries):
        use_dual = bool(rng.integers(0, 2))
        alg = A.opposite() if use_dual else A
        Ps = indecomposable_projectives(alg)
        k = int(rng.integers(1, 4))
        picks = [int(i) for i in rng.integers(0, len(Ps), size=k)]
        if sum(Ps[i].dim for i in picks) > 3 * max_dim:
            continue
        P = direct_sum(*[Ps[i] for i in picks])
        R = radical_submodule(P)
        r = int(rng.integers(0, 4))
        if R.shape[1] and r:
            coeffs = F.random_array(rng, (R.shape[1], r))
            gens = F.matmul(R, coeffs)
        else:
            gens = F.zeros((P.dim, 0))
        U = _generated_submodule(P, gens)
        M, _ = quotient_module(P, U)
        if not 1 <= M.dim <= max_dim:
            continue
        if use_dual:
            M = dual(M)
        M.name = f"rand{M.dim}"
        try:
            decompose(M)
        except DecompositionError:
            continue
        return M
    raise RuntimeError(f"no random module of dimension <= {max_dim} found in {tries} tries")


def random_modules(A: StructureAlgebra, seed: int, count: int, max_dim: int = 6) -> list[FDModule]:
    rng = np.random.default_rng(seed)
    return [random_module(A, rng, max_dim) for _ in range(count)]
