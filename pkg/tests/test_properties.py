"""Seeded property checks across the graded fixtures."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gsmash.examples import build_example
from gsmash.functors import pull_up, push_down
from gsmash.homological import cosyzygy, ext, is_projective, syzygy
from gsmash.modules import check_module, dual, is_isomorphic
from gsmash.randmod import random_modules

from helpers import hom_oracle_dim, s3_path_document

FP = "Fp:32003"
DOCS = {
    "loop": build_example("loop-square-z2", field=FP),
    "kron": build_example("kronecker-z2", field=FP),
    "ext2": build_example("exterior-n", n=2, field=FP),
    "s3": s3_path_document(FP),
}
names = st.sampled_from(sorted(DOCS))
seeds = st.integers(0, 10**6)
SETTINGS = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(names, seeds)
def test_induction_restriction_adjunction(name, seed):
    doc = DOCS[name]
    sp = doc.smash()
    (M,) = random_modules(doc.algebra, seed, 1, max_dim=4)
    (N,) = random_modules(sp.algebra, seed + 1, 1, max_dim=4)
    assert hom_oracle_dim(pull_up(sp, M), N) == hom_oracle_dim(M, push_down(sp, N))
    # the extension is also coinduced: restriction is left adjoint to pull-up
    assert hom_oracle_dim(push_down(sp, N), M) == hom_oracle_dim(N, pull_up(sp, M))


@SETTINGS
@given(names, seeds)
def test_pull_up_ext_dimension(name, seed):
    doc = DOCS[name]
    sp = doc.smash()
    M, N = random_modules(doc.algebra, seed, 2, max_dim=4)
    # Ext_B(FM, FN) = Ext_A(M, i* F N) = Ext_A(M, N^|G|)
    assert ext(pull_up(sp, M), pull_up(sp, N), 1).dim == ext(M, N, 1).dim * doc.group.order


@SETTINGS
@given(names, seeds)
def test_module_constructions_are_modules(name, seed):
    doc = DOCS[name]
    (M,) = random_modules(doc.algebra, seed, 1, max_dim=5)
    for X in (M, syzygy(M), cosyzygy(M), dual(M), pull_up(doc.smash(), M)):
        assert check_module(X).ok
    assert is_isomorphic(dual(dual(M)), M)
    if not is_projective(M):
        assert syzygy(M).dim > 0 or M.dim == 0
