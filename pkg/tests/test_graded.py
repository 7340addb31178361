import numpy as np
import pytest

from gsmash.algebra import check_algebra
from gsmash.examples import GRADED_EXAMPLES, build_example
from gsmash.field import QQ, PrimeField
from gsmash.graded import GradedStructure, GradingError, separable_grading_solve, smash_product, validate_grading, verify_witness
from gsmash.groups import GroupError, FiniteGroup, cyclic_group

from helpers import s3_path_document


def graded_docs():
    out = [build_example(name, **kw) for name, kw in GRADED_EXAMPLES]
    return out + [s3_path_document()]


DOCS = graded_docs()
IDS = [d.name for d in DOCS]


def covering_product(sp, u, v):
    """Product in the G x G matrix model: a p_h (deg a = s) is a placed at (s h, h)."""
    A, G, deg = sp.base, sp.group, sp.graded.degree
    m, n = G.order, A.dim
    F = A.field

    def to_matrix(w):
        Mx = {}
        for k in np.flatnonzero(F.nonzero_mask(w)):
            i, h = divmod(int(k), m)
            key = (G.mul(deg[i], h), h)
            Mx.setdefault(key, F.zeros(n))
            Mx[key][i] = F.add(Mx[key][i], w[k])
        return Mx

    X, Y = to_matrix(u), to_matrix(v)
    out = F.zeros(n * m)
    for (r, c), a in X.items():
        for (r2, c2), b in Y.items():
            if c != r2:
                continue
            ab = A.mul(a, b)
            for i in np.flatnonzero(F.nonzero_mask(ab)):
                assert G.mul(deg[i], c2) == r
                out[sp.index(int(i), c2)] = F.add(out[sp.index(int(i), c2)], ab[i])
    return out


@pytest.mark.parametrize("doc", DOCS, ids=IDS)
def test_smash_matches_covering_matrix_model(doc):
    sp = doc.smash()
    B = sp.algebra
    assert B.dim == doc.algebra.dim * doc.group.order
    for k in range(B.dim):
        for l in range(B.dim):
            assert (B.constants[k, l] == covering_product(sp, B.basis_vector(k), B.basis_vector(l))).all()


@pytest.mark.parametrize("doc", DOCS, ids=IDS)
def test_smash_structure(doc):
    sp = doc.smash()
    B, A, G = sp.algebra, doc.algebra, doc.group
    F = A.field
    assert check_algebra(B).ok
    ps = sp.p
    assert (F.reduce(sum(ps)) == B.unit).all()
    for g, pg in enumerate(ps):
        for h, ph in enumerate(ps):
            prod = B.mul(pg, ph)
            assert (prod == pg).all() if g == h else not F.nonzero_mask(prod).any()
    # embedding is a unital algebra map
    assert (sp.embed(A.unit) == B.unit).all()
    for i in range(A.dim):
        for j in range(A.dim):
            a, b = A.basis_vector(i), A.basis_vector(j)
            assert (sp.embed(A.mul(a, b)) == B.mul(sp.embed(a), sp.embed(b))).all()
    # p_t a = a p_{s^-1 t} for a of degree s
    for i in range(A.dim):
        s = sp.graded.degree[i]
        a = sp.embed(A.basis_vector(i))
        for t in range(G.order):
            rhs = B.mul(a, ps[G.mul(G.inv(s), t)])
            assert (B.mul(ps[t], a) == rhs).all()


@pytest.mark.parametrize("doc", DOCS, ids=IDS)
def test_translation_automorphisms(doc):
    sp = doc.smash()
    B, G = sp.algebra, doc.group
    c = B.constants
    for x in range(G.order):
        perm = sp.translate_permutation(x)
        # rho_x permutes the basis, so it is an automorphism iff it preserves the constants
        assert (c[np.ix_(perm, perm, perm)] == c).all()
        assert (B.unit[perm] == B.unit).all()
        R = sp.translate(x)
        assert all(R[perm[k], k] == 1 for k in range(B.dim))
    # rho_x rho_y = rho_{y x}
    F = B.field
    for x in range(G.order):
        for y in range(G.order):
            assert (F.matmul(sp.translate(x), sp.translate(y)) == sp.translate(G.mul(y, x))).all()


def test_trivial_group_reproduces_structure_constants():
    for name in ["kronecker", "exterior-n"]:
        doc = build_example(name) if name == "kronecker" else build_example(name, n=2)
        gs = GradedStructure(doc.algebra, FiniteGroup.from_table(["e"], [[0]]), [0] * doc.algebra.dim)
        B = smash_product(gs).algebra
        assert (B.constants == doc.algebra.constants).all()
        assert (B.unit == doc.algebra.unit).all()


def test_bad_grading_rejected(a2):
    A = a2.algebra
    gs = GradedStructure(A, cyclic_group(2), [1, 0, 1])  # e_1 in degree 1
    chk = validate_grading(gs)
    assert not chk.ok and "unit" in chk.message
    with pytest.raises(GradingError):
        smash_product(gs)
    with pytest.raises(GradingError):
        GradedStructure(A, cyclic_group(2), [0, 0])


def test_group_validation():
    with pytest.raises(GroupError):
        FiniteGroup.from_table(["a", "b"], [[0, 0], [0, 0]])
    with pytest.raises(GroupError):
        FiniteGroup.from_table(["a", "b", "c"], [[0, 1, 2], [1, 2, 0], [2, 1, 0]])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exterior_separability_witness(n):
    doc = build_example("exterior-n", n=n)
    w = separable_grading_solve(doc.graded)
    assert w is not None and verify_witness(doc.graded, w)
    expected = QQ.zeros(doc.algebra.dim)
    expected[0] = QQ(1) / QQ(n + 1)
    for x in w.vectors:
        assert (x == expected).all()


def test_no_witness_when_order_not_invertible():
    assert separable_grading_solve(build_example("exterior-n", n=1, field="Fp:2").graded) is None
    assert separable_grading_solve(build_example("exterior-n", n=2, field="Fp:3").graded) is None
    assert separable_grading_solve(build_example("exterior-n", n=2, field="Fp:5").graded) is not None


def test_verify_witness_rejects_wrong_vectors(ext2):
    w = separable_grading_solve(ext2.graded)
    bad = type(w)([v.copy() for v in w.vectors])
    bad.vectors[0] = ext2.field.reduce(bad.vectors[0] * 2)
    assert not verify_witness(ext2.graded, bad)


def test_a2_witness_and_prime_field(a2):
    w = separable_grading_solve(a2.graded)
    assert w is not None and verify_witness(a2.graded, w)
    doc = build_example("a2-z2", field=PrimeField(2))
    w2 = separable_grading_solve(doc.graded)
    # with a vertex-supported witness, characteristic 2 need not obstruct
    if w2 is not None:
        assert verify_witness(doc.graded, w2)
