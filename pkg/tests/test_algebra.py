import pytest

from gsmash.algebra import (
    NonSplitBasicError,
    StructureAlgebra,
    check_algebra,
    loewy_length,
    primitive_idempotents,
    quiver_data,
    radical,
    radical_power,
)
from gsmash.examples import EXAMPLES, build_example, exterior_structure
from gsmash.field import QQ, PrimeField
from gsmash.quiver import Arrow, PresentationError, QuiverPresentation, load_quiver_algebra, parse_path


@pytest.mark.parametrize("name", EXAMPLES)
def test_examples_are_associative_unital(name):
    chk = check_algebra(build_example(name).algebra)
    assert chk.ok, chk


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("F", [QQ, PrimeField(7)], ids=lambda F: F.spec())
def test_exterior_loader_matches_wedge_signs(n, F):
    A = build_example("exterior-n", n=n, field=F).algebra
    W = exterior_structure(n, F)
    assert A.labels == W.labels
    assert (A.constants == W.constants).all()
    assert (A.unit == W.unit).all()


@pytest.mark.parametrize(
    "name,dim,rad,ll,verts",
    [
        ("kronecker", 4, 2, 2, 2),
        ("a2-z2", 3, 1, 2, 2),
        ("loop-square-z2", 2, 1, 2, 1),
    ],
)
def test_radical_loewy_vertices(name, dim, rad, ll, verts):
    A = build_example(name).algebra
    assert A.dim == dim
    assert radical(A).dim == rad
    assert loewy_length(A) == ll
    assert len(primitive_idempotents(A)) == verts


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exterior_radical_filtration(n):
    A = build_example("exterior-n", n=n).algebra
    from math import comb

    for k in range(n + 2):
        expected = sum(comb(n, j) for j in range(k, n + 1))
        assert radical_power(A, k).dim == expected
    assert loewy_length(A) == n + 1


def test_idempotents_complete_orthogonal():
    A = build_example("kronecker").algebra
    es = primitive_idempotents(A)
    F = A.field
    assert (F.reduce(sum(es)) == A.unit).all()
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            prod = A.mul(e, f)
            assert (prod == e).all() if i == j else not F.nonzero_mask(prod).any()


def test_quiver_data_recovers_kronecker():
    qd = quiver_data(build_example("kronecker").algebra)
    assert len(qd.idempotents) == 2
    assert len(qd.arrows) == 2
    assert len({(s, t) for s, t, _ in qd.arrows}) == 1


def test_path_composition_order():
    pres = QuiverPresentation(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3")], [], 3)
    A = load_quiver_algebra(pres, QQ)
    assert "a*b" in A.labels
    ab = A.element(**{"a*b": 1})
    # a*b means a then b; as an algebra product that is b . a
    assert (A.mul(A.element(b=1), A.element(a=1)) == ab).all()
    assert not QQ.nonzero_mask(A.mul(A.element(a=1), A.element(b=1))).any()
    assert parse_path(pres, "a*b").arrows == ("a", "b")
    with pytest.raises(PresentationError):
        parse_path(pres, "b*a")


def test_opposite_involution():
    A = build_example("a2-z2").algebra
    Aop = A.opposite()
    u, v = A.element(a=1), A.element(e_1=1)
    assert (Aop.mul(u, v) == A.mul(v, u)).all()
    assert (Aop.opposite().constants == A.constants).all()


def test_non_split_rejected():
    F = PrimeField(3)
    # F_3[x]/(x^2 + 1) is the field with 9 elements
    c = F.zeros((2, 2, 2))
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
    c[1, 1, 0] = F(-1)
    A = StructureAlgebra(F, ["1", "x"], c, F.array([1, 0]))
    assert check_algebra(A).ok
    with pytest.raises(NonSplitBasicError):
        primitive_idempotents(A)


def test_bad_unit_detected():
    F = QQ
    c = F.zeros((2, 2, 2))
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
    good = StructureAlgebra(F, ["1", "x"], c, F.array([1, 0]))
    assert check_algebra(good).ok
    bad = StructureAlgebra(F, ["1", "x"], c, F.array([0, 1]))
    assert not check_algebra(bad).ok


def test_non_associative_detected():
    F = QQ
    c = F.zeros((3, 3, 3))
    for i in range(3):
        c[0, i, i] = c[i, 0, i] = 1
    c[1, 1, 2] = 1  # x*x = y, but x*y = 0 while y*x = x
    c[2, 1, 1] = 1
    A = StructureAlgebra(F, ["1", "x", "y"], c, F.array([1, 0, 0]))
    assert not check_algebra(A).ok
