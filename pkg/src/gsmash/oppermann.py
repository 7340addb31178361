"""One-parameter lattices over R = k[x] and the family extension probe.

A lattice of rank ``m`` is stored as a coefficient stack ``coeffs`` of shape
``(dim A, D + 1, m, m)``: ``coeffs[i, d]`` is the coefficient of ``x**d`` in
the action matrix of ``b_i``.

For a point ``alpha`` the probe builds the middle term of

    0 -> L(alpha) -> L (x)_R R/((x - alpha)^2) -> L(alpha) -> 0

as ``[[P(alpha), P'(alpha)], [0, P(alpha)]]`` and decides whether it splits.
A retraction has the form ``[I | t]`` and exists iff the linear system
``P_i(alpha) t - t P_i(alpha) = P_i'(alpha)`` is solvable.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import StructureAlgebra
from .field import Field
from .graded import SmashProduct
from .homological import extension_class
from .modules import AlgebraMismatch, FDModule
from .poly import (
    RationalFunctionField,
    poly_matrix_derivative,
    poly_matrix_eval,
    poly_matrix_generic,
    poly_matrix_mul,
)
from .linalg import solve_linear

__all__ = [
    "Lattice1D",
    "LatticeCheck",
    "ExtClassProbe",
    "TransferReport",
    "GENERIC",
    "constant_lattice",
    "validate_lattice",
    "fiber",
    "middle_module",
    "middle_module_quotient_ring",
    "family_ext_probe",
    "probe_via_ext",
    "o1_scan",
    "generic_nonvanishing",
    "lattice_pull_up",
    "lattice_push_down",
    "transfer_check",
    "default_points",
    "base_change",
    "MissingWitness",
]

GENERIC = "generic"


@dataclass(eq=False)
class Lattice1D:
    algebra: StructureAlgebra
    coeffs: np.ndarray  # (dim A, D + 1, m, m)
    name: str = ""

    def __post_init__(self):
        c = self.coeffs
        if c.ndim != 4 or c.shape[0] != self.algebra.dim or c.shape[2] != c.shape[3] or c.shape[1] < 1:
            raise ValueError(f"lattice coefficients must have shape (dim A, D+1, m, m), got {c.shape}")

    @property
    def rank(self) -> int:
        return self.coeffs.shape[2]

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def degree(self) -> int:
        return self.coeffs.shape[1] - 1

    def matrix(self, i: int) -> np.ndarray:
        """Coefficient stack of the action of ``b_i``."""
        return self.coeffs[i]


def constant_lattice(M: FDModule) -> Lattice1D:
    return Lattice1D(M.algebra, M.action.reshape(M.algebra.dim, 1, M.dim, M.dim).copy(), name=f"const({M.name})")


@dataclass
class LatticeCheck:
    ok: bool
    message: str = "ok"

    def __bool__(self):
        return self.ok


def validate_lattice(L: Lattice1D) -> LatticeCheck:
    """Structure-constant relations and the unit axiom as polynomial identities."""
    A, F = L.algebra, L.field
    n, m = A.dim, L.rank
    P = L.coeffs
    D = P.shape[1]
    unit = F.reduce(F.matmul(A.unit.reshape(1, n), P.reshape(n, -1)).reshape(D, m, m))
    want = F.zeros((D, m, m))
    want[0] = F.eye(m)
    if not np.all(unit == want):
        return LatticeCheck(False, "unit does not act as the identity")
    # sum_k c_ijk P_k for all pairs, compared with P_i P_j
    lin = F.matmul(A.constants.reshape(n * n, n), P.reshape(n, -1)).reshape(n, n, D, m, m)
    for i in range(n):
        for j in range(n):
            prod = poly_matrix_mul(F, P[i], P[j])
            rhs = F.zeros(prod.shape)
            rhs[:D] = lin[i, j]
            if not np.all(prod == rhs):
                return LatticeCheck(False, f"relation {A.labels[i]}*{A.labels[j]} fails")
    return LatticeCheck(True)


def base_change(A: StructureAlgebra, K: Field) -> StructureAlgebra:
    """The same structure constants read in an extension field ``K``."""
    cache = A.__dict__.setdefault("_cache", {})
    key = ("base_change", K)
    if key not in cache:
        cache[key] = StructureAlgebra(
            K, list(A.labels), K.array(A.constants), K.array(A.unit), name=f"{A.name}@{K!r}"
        )
    return cache[key]


def _generic_field(L: Lattice1D) -> RationalFunctionField:
    cache = L.__dict__.setdefault("_cache", {})
    if "K" not in cache:
        cache["K"] = RationalFunctionField(L.field)
    return cache["K"]


def _point_data(L: Lattice1D, alpha):
    """Field, algebra and the evaluated matrices P(alpha), P'(alpha)."""
    F = L.field
    n = L.algebra.dim
    dP = np.stack([poly_matrix_derivative(F, L.coeffs[i]) for i in range(n)]) if L.degree else None
    if alpha == GENERIC:
        K = _generic_field(L)
        A = base_change(L.algebra, K)
        M = np.stack([poly_matrix_generic(K, L.coeffs[i]) for i in range(n)])
        if dP is None:
            Md = K.zeros(M.shape)
        else:
            Md = np.stack([poly_matrix_generic(K, dP[i]) for i in range(n)])
        return K, A, M, Md
    a = F(alpha)
    M = np.stack([poly_matrix_eval(F, L.coeffs[i], a) for i in range(n)])
    if dP is None:
        Md = F.zeros(M.shape)
    else:
        Md = np.stack([poly_matrix_eval(F, dP[i], a) for i in range(n)])
    return F, L.algebra, M, Md


def fiber(L: Lattice1D, alpha) -> FDModule:
    """L (x)_R S_alpha."""
    _, A, M, _ = _point_data(L, alpha)
    return FDModule(A, M, name=f"{L.name}({alpha})")


def middle_module(L: Lattice1D, alpha) -> FDModule:
    """Block realisation of L (x)_R R/((x - alpha)^2); the first block is the sub."""
    K, A, M, Md = _point_data(L, alpha)
    m = L.rank
    act = K.zeros((A.dim, 2 * m, 2 * m))
    act[:, :m, :m] = M
    act[:, :m, m:] = Md
    act[:, m:, m:] = M
    return FDModule(A, act, name=f"{L.name}[eps {alpha}]")


def middle_module_quotient_ring(L: Lattice1D, alpha) -> FDModule:
    """L (x)_R Q with Q = k[x]/((x - alpha)^2) built from the multiplication table of Q.

    Basis of Q is (1, x); ``x`` acts on Q by its companion matrix, and
    ``sum_d P[d] x**d`` acts on ``Q^m = k^m (x) Q`` as ``sum_d P[d] (x) C**d``.
    """
    F = L.field
    a = F(alpha)
    # x * 1 = x ; x * x = 2 a x - a^2
    C = F.zeros((2, 2))
    C[1, 0] = F.one
    C[0, 1] = F.neg(F.mul(a, a))
    C[1, 1] = F.add(a, a)
    n, D, m = L.algebra.dim, L.coeffs.shape[1], L.rank
    powers = [F.eye(2)]
    for _ in range(D - 1):
        powers.append(F.matmul(powers[-1], C))
    act = F.zeros((n, 2 * m, 2 * m))
    for i in range(n):
        acc = F.zeros((2 * m, 2 * m))
        for d in range(D):
            acc = F.reduce(acc + np.kron(L.coeffs[i, d], powers[d]))
        act[i] = acc
    return FDModule(L.algebra, act, name=f"{L.name}(x)Q({alpha})")


@dataclass(eq=False)
class ExtClassProbe:
    point: object
    fiber: FDModule
    middle: FDModule
    nonzero: bool


def _retraction_solution(K: Field, M: np.ndarray, Md: np.ndarray):
    """Solve P t - t P = P' for all basis actions; ``None`` if inconsistent."""
    n, m, _ = M.shape
    I = K.eye(m)
    rows = [K.reduce(np.kron(M[i], I) - np.kron(I, M[i].T)) for i in range(n)]
    rhs = [Md[i].reshape(-1) for i in range(n)]
    S = np.concatenate(rows)
    b = np.concatenate(rhs)
    mask = K.nonzero_mask(S).any(axis=1) | K.nonzero_mask(b)
    return solve_linear(K, S[mask], b[mask])


def family_ext_probe(L: Lattice1D, alpha) -> ExtClassProbe:
    """Whether the class of L (x) eps_alpha is nonzero (no retraction of the middle term)."""
    K, A, M, Md = _point_data(L, alpha)
    sol = _retraction_solution(K, M, Md)
    return ExtClassProbe(alpha, fiber(L, alpha), middle_module(L, alpha), sol is None)


def probe_via_ext(L: Lattice1D, alpha) -> bool:
    """Independent route: class of the middle extension in Ext^1 from a minimal resolution."""
    F = L.field
    X = fiber(L, alpha)
    E = middle_module(L, alpha)
    m = L.rank
    iota = F.zeros((2 * m, m))
    iota[:m] = F.eye(m)
    pi = F.zeros((m, 2 * m))
    pi[:, m:] = F.eye(m)
    zero, _ = extension_class(iota, E, pi, X, X)
    return not zero


def default_points(F: Field, count: int = 20) -> list:
    if F.characteristic and F.characteristic < count:
        raise ValueError(f"need {count} distinct points but the field has only {F.characteristic}")
    return [F(i) for i in range(count)]


def o1_scan(L: Lattice1D, points) -> list:
    return [a for a in points if family_ext_probe(L, a).nonzero]


def generic_nonvanishing(L: Lattice1D) -> bool:
    return family_ext_probe(L, GENERIC).nonzero


def lattice_pull_up(sp: SmashProduct, L: Lattice1D) -> Lattice1D:
    """B (x)_A L with the module pull-up block formula applied coefficientwise."""
    if L.algebra is not sp.base:
        raise AlgebraMismatch("lattice_pull_up expects a lattice over the graded algebra")
    F = L.field
    G = sp.group
    g, m, n, D = G.order, L.rank, sp.base.dim, L.coeffs.shape[1]
    out = F.zeros((n * g, D, g * m, g * m))
    for i in range(n):
        s = sp.graded.degree[i]
        for h in range(g):
            t = G.mul(s, h)
            out[sp.index(i, h), :, t * m : (t + 1) * m, h * m : (h + 1) * m] = L.coeffs[i]
    return Lattice1D(sp.algebra, out, name=f"B@{L.name}")


def lattice_push_down(sp: SmashProduct, L: Lattice1D) -> Lattice1D:
    if L.algebra is not sp.algebra:
        raise AlgebraMismatch("lattice_push_down expects a lattice over the smash product")
    F = L.field
    g, n = sp.group.order, sp.base.dim
    c = L.coeffs
    out = F.reduce(c.reshape(n, g, *c.shape[1:]).sum(axis=1))
    return Lattice1D(sp.base, out, name=f"res({L.name})")


@dataclass
class TransferReport:
    points: list
    # direction 1: nonzero for a B-lattice implies nonzero for its push-down
    direction1_violations: list = dc_field(default_factory=list)
    # direction 2: nonzero for an A-lattice implies nonzero for its pull-up
    direction2_checked: bool = False
    direction2_violations: list = dc_field(default_factory=list)
    nonzero_A: list = dc_field(default_factory=list)
    nonzero_B: list = dc_field(default_factory=list)
    nonzero_pushdown: list = dc_field(default_factory=list)
    generic: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.direction1_violations and not self.direction2_violations


class MissingWitness(ValueError):
    pass


def transfer_check(
    sp: SmashProduct,
    L: Lattice1D,
    points,
    separable: bool,
    require_direction2: bool = False,
    include_generic: bool = True,
    extra_B_lattices=(),
) -> TransferReport:
    """Check both lattice inclusions at the sample points (and the generic point).

    Direction 1 runs on the pull-up of ``L`` and on ``extra_B_lattices``;
    direction 2 runs only when ``separable`` is true.
    """
    if require_direction2 and not separable:
        raise MissingWitness("direction 2 needs a separability witness")
    pts = list(points) + ([GENERIC] if include_generic else [])
    rep = TransferReport(list(points), direction2_checked=separable)
    LB = lattice_pull_up(sp, L)
    B_lattices = [LB, *extra_B_lattices]
    for a in pts:
        nzA = family_ext_probe(L, a).nonzero
        nzB = family_ext_probe(LB, a).nonzero
        if a == GENERIC:
            rep.generic = {"A": nzA, "B": nzB}
        else:
            if nzA:
                rep.nonzero_A.append(a)
            if nzB:
                rep.nonzero_B.append(a)
        for k, Lb in enumerate(B_lattices):
            nzb = nzB if k == 0 else family_ext_probe(Lb, a).nonzero
            nzd = family_ext_probe(lattice_push_down(sp, Lb), a).nonzero
            if k == 0 and a != GENERIC and nzd:
                rep.nonzero_pushdown.append(a)
            if nzb and not nzd:
                rep.direction1_violations.append({"point": str(a), "lattice": Lb.name})
        if separable and nzA and not nzB:
            rep.direction2_violations.append({"point": str(a), "lattice": L.name})
    return rep
