"""Group gradings, separability witnesses and the smash product A # k[G]^*."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import StructureAlgebra
from .groups import FiniteGroup
from .linalg import solve_linear

__all__ = [
    "GradedStructure",
    "GradingCheck",
    "GradingError",
    "SeparabilityWitness",
    "SmashProduct",
    "validate_grading",
    "separable_grading_solve",
    "verify_witness",
    "smash_product",
    "embed",
    "group_translate",
]


class GradingError(ValueError):
    pass


@dataclass(eq=False)
class GradedStructure:
    """An algebra whose basis element ``i`` is homogeneous of degree ``degree[i]`` (a group index)."""

    algebra: StructureAlgebra
    group: FiniteGroup
    degree: list[int]

    def __post_init__(self):
        if len(self.degree) != self.algebra.dim:
            raise GradingError("one degree per basis element is required")
        if any(not 0 <= d < self.group.order for d in self.degree):
            raise GradingError("degree out of range")

    def component(self, g: int) -> list[int]:
        """Basis indices spanning A_g."""
        return [i for i, d in enumerate(self.degree) if d == g]


@dataclass
class GradingCheck:
    ok: bool
    message: str = "ok"

    def __bool__(self):
        return self.ok


def validate_grading(gs: GradedStructure) -> GradingCheck:
    A, G = gs.algebra, gs.group
    F = A.field
    e = G.identity
    for i in np.flatnonzero(F.nonzero_mask(A.unit)):
        if gs.degree[i] != e:
            return GradingCheck(False, f"unit has a component {A.labels[i]} outside degree e")
    c = A.constants
    for i, j, k in np.argwhere(F.nonzero_mask(c)):
        if gs.degree[k] != G.mul(gs.degree[i], gs.degree[j]):
            return GradingCheck(
                False,
                f"{A.labels[i]}*{A.labels[j]} has support on {A.labels[k]} "
                f"of degree {G.elements[gs.degree[k]]}, expected "
                f"{G.elements[G.mul(gs.degree[i], gs.degree[j])]}",
            )
    return GradingCheck(True)


@dataclass
class SeparabilityWitness:
    """``vectors[g]`` is the element x^g of A_e."""

    vectors: list[np.ndarray]
    strictly_central: bool = False


def separable_grading_solve(gs: GradedStructure) -> SeparabilityWitness | None:
    """Canonical solution of  sum_g x^g = 1  and  r x^g = x^{hg} r  (r in A_h), with x^g in A_e."""
    A, G = gs.algebra, gs.group
    F = A.field
    n, m = A.dim, G.order
    E = gs.component(G.identity)
    ne = len(E)
    c = A.constants

    def var(g, a):
        return g * ne + a

    blocks = []
    rhs = []
    norm = F.zeros((n, m * ne))
    for g in range(m):
        for a, k in enumerate(E):
            norm[k, var(g, a)] = F.one
    blocks.append(norm)
    rhs.append(A.unit)
    for r in range(n):
        h = gs.degree[r]
        for g in range(m):
            hg = G.mul(h, g)
            eq = F.zeros((n, m * ne))
            for a, k in enumerate(E):
                eq[:, var(g, a)] = F.reduce(eq[:, var(g, a)] + c[r, k])
                eq[:, var(hg, a)] = F.reduce(eq[:, var(hg, a)] - c[k, r])
            blocks.append(eq)
            rhs.append(F.zeros(n))
    sol = solve_linear(F, np.concatenate(blocks, axis=0), np.concatenate(rhs))
    if sol is None:
        return None
    vectors = []
    for g in range(m):
        v = F.zeros(n)
        for a, k in enumerate(E):
            v[k] = sol[var(g, a)]
        vectors.append(v)
    w = SeparabilityWitness(vectors)
    w.strictly_central = all(
        np.all(A.mul(A.basis_vector(i), x) == A.mul(x, A.basis_vector(i))) for x in vectors for i in range(n)
    )
    return w


def verify_witness(gs: GradedStructure, w: SeparabilityWitness) -> bool:
    """Re-check both separability conditions directly, independently of the solver."""
    A, G = gs.algebra, gs.group
    F = A.field
    total = F.zeros(A.dim)
    for g, x in enumerate(w.vectors):
        if any(gs.degree[i] != G.identity for i in np.flatnonzero(F.nonzero_mask(x))):
            return False
        total = F.reduce(total + x)
    if not np.all(total == A.unit):
        return False
    for r in range(A.dim):
        br = A.basis_vector(r)
        h = gs.degree[r]
        for g in range(G.order):
            if not np.all(A.mul(br, w.vectors[g]) == A.mul(w.vectors[G.mul(h, g)], br)):
                return False
    return True


@dataclass(eq=False)
class SmashProduct:
    """B = A # k[G]^* with basis ``b_i p_g`` at index ``i * |G| + g``."""

    graded: GradedStructure
    algebra: StructureAlgebra

    @property
    def base(self) -> StructureAlgebra:
        return self.graded.algebra

    @property
    def group(self) -> FiniteGroup:
        return self.graded.group

    def index(self, i: int, g: int) -> int:
        return i * self.group.order + g

    @cached_property
    def p(self) -> list[np.ndarray]:
        """The idempotents p_g = 1 p_g."""
        F = self.algebra.field
        m = self.group.order
        out = []
        for g in range(m):
            v = F.zeros(self.algebra.dim)
            v[g::m] = self.base.unit
            out.append(v)
        return out

    def embed(self, a: np.ndarray) -> np.ndarray:
        """a -> sum_h a p_h."""
        return np.repeat(a, self.group.order)

    @cached_property
    def embed_matrix(self) -> np.ndarray:
        """dim B x dim A matrix of the embedding."""
        F = self.algebra.field
        return F.array(np.repeat(np.eye(self.base.dim, dtype=np.int64), self.group.order, axis=0))

    def translate(self, x: int) -> np.ndarray:
        """Automorphism b_i p_g -> b_i p_{g x} as a permutation matrix."""
        F = self.algebra.field
        G = self.group
        nB = self.algebra.dim
        M = F.zeros((nB, nB))
        for i in range(self.base.dim):
            for g in range(G.order):
                M[self.index(i, G.mul(g, x)), self.index(i, g)] = F.one
        return M

    def translate_permutation(self, x: int) -> list[int]:
        """``perm[k]`` is the index of rho_x(basis k)."""
        G = self.group
        return [self.index(i, G.mul(g, x)) for i in range(self.base.dim) for g in range(G.order)]


def smash_product(gs: GradedStructure) -> SmashProduct:
    """(a p_g)(b p_h) = a b_{g h^-1} p_h on basis elements."""
    check = validate_grading(gs)
    if not check:
        raise GradingError(check.message)
    A, G = gs.algebra, gs.group
    F = A.field
    n, m = A.dim, G.order
    c = A.constants
    cB = F.zeros((n * m, n * m, n * m))
    for g in range(m):
        for h in range(m):
            ghinv = G.mul(g, G.inv(h))
            js = [j for j in range(n) if gs.degree[j] == ghinv]
            for j in js:
                # rows i, output k, all at p_h
                cB[g::m, j * m + h, h::m] = c[:, j, :]
    unit = np.repeat(A.unit, m)
    labels = [f"{A.labels[i]}#{G.elements[g]}" for i in range(n) for g in range(m)]
    name = f"{A.name}#{G.order}" if A.name else "smash"
    B = StructureAlgebra(F, labels, cB, unit, name=name)
    return SmashProduct(gs, B)


def embed(sp: SmashProduct, a: np.ndarray) -> np.ndarray:
    return sp.embed(a)


def group_translate(sp: SmashProduct, x: int) -> np.ndarray:
    """rho_x; composition convention rho_x rho_y = rho_{y x}."""
    return sp.translate(x)
