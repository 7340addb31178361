import pytest

from gsmash.examples import build_example
from gsmash.field import QQ, PrimeField
from gsmash.functors import pull_up, push_down
from gsmash.modules import check_module, decompose, direct_sum, is_isomorphic
from gsmash.oppermann import (
    GENERIC,
    Lattice1D,
    MissingWitness,
    constant_lattice,
    default_points,
    family_ext_probe,
    fiber,
    generic_nonvanishing,
    lattice_pull_up,
    lattice_push_down,
    middle_module,
    middle_module_quotient_ring,
    o1_scan,
    probe_via_ext,
    transfer_check,
    validate_lattice,
)
from gsmash.poly import poly_matrix_mul
from gsmash.randmod import random_modules

POINTS = list(range(20))


def conjugated(L: Lattice1D, i: int, j: int) -> Lattice1D:
    """T(t) L T(t)^-1 with T = 1 + t E_ij, an isomorphic family."""
    F, m = L.field, L.rank
    T = F.zeros((2, m, m))
    Ti = F.zeros((2, m, m))
    T[0] = Ti[0] = F.eye(m)
    T[1, i, j] = F.one
    Ti[1, i, j] = F.neg(F.one)
    coeffs = []
    for k in range(L.algebra.dim):
        P = poly_matrix_mul(F, poly_matrix_mul(F, T, L.coeffs[k]), Ti)
        coeffs.append(P)
    D = max(P.shape[0] for P in coeffs)
    out = F.zeros((L.algebra.dim, D, m, m))
    for k, P in enumerate(coeffs):
        out[k, : P.shape[0]] = P
    return Lattice1D(L.algebra, out, name=f"conj({L.name})")


def lattice_sum(L1: Lattice1D, L2: Lattice1D) -> Lattice1D:
    F = L1.field
    D = max(L1.coeffs.shape[1], L2.coeffs.shape[1])
    m1, m2 = L1.rank, L2.rank
    out = F.zeros((L1.algebra.dim, D, m1 + m2, m1 + m2))
    out[:, : L1.coeffs.shape[1], :m1, :m1] = L1.coeffs
    out[:, : L2.coeffs.shape[1], m1:, m1:] = L2.coeffs
    return Lattice1D(L1.algebra, out)


def test_validate_examples(kron, loop):
    for L in list(kron.lattices.values()) + list(loop.lattices.values()):
        assert validate_lattice(L).ok
    M = random_modules(kron.algebra, seed=3, count=1)[0]
    assert validate_lattice(constant_lattice(M)).ok
    bad = kron.lattices["kronecker"].coeffs.copy()
    bad[kron.algebra.labels.index("e_1"), 0] = QQ.eye(2)
    assert not validate_lattice(Lattice1D(kron.algebra, bad)).ok


def test_kronecker_fibers(kron):
    L = kron.lattices["kronecker"]
    A = kron.algebra
    a, b = A.labels.index("a"), A.labels.index("b")
    X0, X3 = fiber(L, 0), fiber(L, 3)
    assert X0.action[a][1, 0] == 1 and X0.action[b][1, 0] == 0
    assert X3.action[a][1, 0] == 1 and X3.action[b][1, 0] == 3
    assert not is_isomorphic(X0, X3)
    M = random_modules(A, seed=1, count=1)[0]
    assert (fiber(constant_lattice(M), 5).action == M.action).all()


def test_kronecker_scan_and_generic(kron):
    L, C = kron.lattices["kronecker"], kron.lattices["constant"]
    assert o1_scan(L, POINTS) == POINTS
    assert generic_nonvanishing(L)
    assert o1_scan(C, POINTS) == []
    assert not generic_nonvanishing(C)


def test_nilpotent_loop_lattice(loop):
    L = loop.lattices["nilpotent"]
    assert o1_scan(L, POINTS) == [0]
    assert not generic_nonvanishing(L)
    assert not generic_nonvanishing(loop.lattices["constant"])


def test_semisimple_algebra_never_nonzero():
    from gsmash.algebra import StructureAlgebra

    F = QQ
    c = F.zeros((2, 2, 2))
    c[0, 0, 0] = c[1, 1, 1] = 1
    A = StructureAlgebra(F, ["e_1", "e_2"], c, F.array([1, 1]))
    coeffs = F.zeros((2, 2, 2, 2))
    coeffs[0, 0] = F.array([[1, 0], [0, 0]])
    coeffs[1, 0] = F.array([[0, 0], [0, 1]])
    L = Lattice1D(A, coeffs)
    assert validate_lattice(L).ok
    assert o1_scan(L, POINTS) == [] and not generic_nonvanishing(L)


@pytest.mark.parametrize("name", ["kronecker", "loop-square-z2"])
def test_middle_module_matches_quotient_ring(name):
    doc = build_example(name)
    for L in doc.lattices.values():
        for alpha in (0, 1, 5):
            E = middle_module(L, alpha)
            Q = middle_module_quotient_ring(L, alpha)
            assert check_module(E).ok and check_module(Q).ok
            assert is_isomorphic(E, Q)


@pytest.mark.parametrize("name", ["kronecker", "kronecker-z2", "loop-square-z2"])
def test_probe_agrees_with_ext_route(name):
    doc = build_example(name)
    for L in doc.lattices.values():
        for alpha in (0, 2, 7):
            assert family_ext_probe(L, alpha).nonzero == probe_via_ext(L, alpha)


def test_nonzero_probe_middle_not_split(kron):
    L = kron.lattices["kronecker"]
    for alpha in (0, 4):
        X = fiber(L, alpha)
        E = middle_module(L, alpha)
        assert not is_isomorphic(E, direct_sum(X, X))
        assert len(decompose(E).modules) == 1
    C = kron.lattices["constant"]
    X = fiber(C, 1)
    assert is_isomorphic(middle_module(C, 1), direct_sum(X, X))


@pytest.mark.parametrize("pos", [(0, 1), (1, 0)])
def test_isomorphic_family_classes_vanish(kron, pos):
    C = conjugated(kron.lattices["constant"], *pos)
    assert validate_lattice(C).ok
    assert o1_scan(C, POINTS[:6]) == [] and not generic_nonvanishing(C)
    K = conjugated(kron.lattices["kronecker"], *pos)
    assert validate_lattice(K).ok
    assert o1_scan(K, POINTS[:6]) == POINTS[:6] and generic_nonvanishing(K)
    for alpha in (0, 3):
        assert family_ext_probe(K, alpha).nonzero == probe_via_ext(K, alpha)


def test_sum_of_lattices(kron):
    S = lattice_sum(kron.lattices["kronecker"], kron.lattices["constant"])
    assert validate_lattice(S).ok
    assert o1_scan(S, POINTS[:5]) == POINTS[:5]
    assert generic_nonvanishing(S)


def test_lattice_functors_commute_with_fibers(kron_z2):
    sp = kron_z2.smash()
    L = kron_z2.lattices["kronecker"]
    U = lattice_pull_up(sp, L)
    assert U.rank == 2 * L.rank and validate_lattice(U).ok
    D = lattice_push_down(sp, U)
    assert D.rank == 2 * L.rank and validate_lattice(D).ok
    for alpha in (0, 3):
        assert is_isomorphic(fiber(U, alpha), pull_up(sp, fiber(L, alpha)))
        assert is_isomorphic(fiber(D, alpha), push_down(sp, pull_up(sp, fiber(L, alpha))))
    assert o1_scan(U, POINTS) == POINTS


def test_transfer_check(kron_z2, kron):
    sp = kron_z2.smash()
    rep = transfer_check(sp, kron_z2.lattices["kronecker"], POINTS, separable=True)
    assert rep.ok and rep.direction2_checked
    assert rep.nonzero_A == POINTS and rep.nonzero_B == POINTS
    assert rep.generic == {"A": True, "B": True}
    rep = transfer_check(sp, kron_z2.lattices["constant"], POINTS, separable=True)
    assert rep.ok and rep.nonzero_A == [] and rep.nonzero_B == []
    with pytest.raises(MissingWitness):
        transfer_check(sp, kron_z2.lattices["kronecker"], POINTS, separable=False, require_direction2=True)
    # trivial group: both sides agree pointwise
    spt = kron.smash()
    rep = transfer_check(spt, kron.lattices["kronecker"], POINTS[:5], separable=True)
    assert rep.ok and rep.nonzero_A == rep.nonzero_B == POINTS[:5]


def test_default_points():
    assert default_points(QQ, 20) == [QQ(i) for i in range(20)]
    with pytest.raises(ValueError):
        default_points(PrimeField(7), 20)


def test_generic_point_over_prime_field():
    doc = build_example("kronecker", field="Fp:101")
    assert generic_nonvanishing(doc.lattices["kronecker"])
    assert family_ext_probe(doc.lattices["kronecker"], GENERIC).fiber.dim == 2
