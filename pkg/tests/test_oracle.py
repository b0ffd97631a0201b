from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from flagmeasure.classifier import classify_instance, instance
from flagmeasure.flags import enumerate_sequences, make_sequence
from flagmeasure.oracle.linalg import I, ONE, ZERO, Subspace, gq, solve_in_basis
from flagmeasure.oracle.parabolic import (OracleContext, apply_involution,
                                          eigenvalue, is_reductive_intersection, meet,
                                          oracle_verdict, superdim)
from flagmeasure.oracle.realize import bracket, realize, supertrace
from flagmeasure.realforms import catalog, make_real_form
from flagmeasure.superroots import build_root_system
from flagmeasure.sweep import verdict_fields

COORDS = list(range(5))
gaussian = st.builds(gq, st.integers(-2, 2), st.integers(-2, 2))
vectors = st.dictionaries(st.sampled_from(COORDS), gaussian, max_size=5)
subspaces = st.lists(vectors, max_size=4).map(lambda vs: Subspace.span(COORDS, vs))


# exact linear algebra --------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(subspaces, subspaces)
def test_dimension_formula(S, T):
    assert S.dim + T.dim == S.intersect(T).dim + S.sum(T).dim
    assert S.intersect(T) <= S and S <= S.sum(T)


@settings(max_examples=80, deadline=None)
@given(subspaces)
def test_self_operations(S):
    assert S.intersect(S) == S
    assert S.sum(S) == S
    assert S.sum(Subspace.zero(COORDS)) == S
    assert S.intersect(Subspace.full(COORDS)) == S


@settings(max_examples=80, deadline=None)
@given(subspaces)
def test_kernel_of_annihilator(S):
    eqs = [{c: a for c, a in zip(COORDS, row) if a} for row in S.annihilator()]
    assert Subspace.kernel(COORDS, eqs) == S


@settings(max_examples=80, deadline=None)
@given(subspaces, st.lists(gaussian, min_size=4, max_size=4))
def test_solve_in_basis(S, coeffs):
    basis = S.basis()
    v = {}
    for c, b in zip(coeffs, basis):
        for k, x in b.items():
            v[k] = v.get(k, ZERO) + c * x
    v = {k: x for k, x in v.items() if x}
    sol = solve_in_basis(basis, v)
    assert sol is not None
    assert list(sol) == coeffs[:len(basis)]


def test_gaussian_entries_are_exact():
    S = Subspace.span(COORDS, [{0: ONE, 1: I}, {0: I, 1: -ONE}])
    assert S.dim == 1
    assert S.contains({0: gq(1, 3), 1: gq(-3, 1)})


# realizations --------------------------------------------------------------------------

@pytest.mark.parametrize("fam,n,m,dims", [
    ("A", 2, 1, (4, 4)), ("A", 2, 2, (7, 8)), ("B", 1, 1, (6, 6)), ("C", 1, 2, (11, 8)),
    ("D", 2, 1, (9, 8)), ("P", 3, 3, (8, 9)), ("Q", 3, 3, (9, 9)),
])
def test_realization_dimensions(fam, n, m, dims):
    assert realize(fam, n, m).superdim() == dims


@pytest.mark.parametrize("fam,n,m", [("A", 2, 1), ("B", 1, 1), ("D", 2, 1), ("P", 2, 2), ("Q", 2, 2)])
def test_brackets_close_and_are_supertraceless(fam, n, m):
    R = realize(fam, n, m)
    basis = [v for _, v in R.basis()]
    for X in basis:
        for Y in basis:
            Z = bracket(X, Y)
            assert R.contains(Z)
            assert not supertrace(Z)


@pytest.mark.parametrize("fam,n,m", [("A", 2, 2), ("B", 2, 1), ("C", 1, 2), ("P", 3, 3), ("Q", 2, 2)])
def test_root_vectors_are_cartan_eigenvectors(fam, n, m):
    R = realize(fam, n, m)
    rs = build_root_system(fam, n, m)
    weights = {w for (w, p) in R.blocks if not w.is_zero()}
    assert weights == {r.weight for r in rs.roots}
    for r in rs.roots:
        keys = [k for k in R.blocks if k[0] == r.weight]
        assert tuple(sum(R.blocks[k].dim for k in keys if k[1] == p) for p in (0, 1)) == r.space_superdim
        for H in R.cartan():
            assert eigenvalue(R, H, keys[0]) is not None


def test_q_root_spaces_are_one_one():
    R = realize("Q", 2)
    for r in build_root_system("Q", 2).roots:
        assert R.blocks[(r.weight, 0)].dim == 1 and R.blocks[(r.weight, 1)].dim == 1


# parabolics and verdicts -------------------------------------------------------------------

def test_empty_flag_gives_everything():
    for rf in catalog("D", 2, 1):
        if rf.quaternionic:
            continue
        ctx = OracleContext(rf)
        p = ctx.parabolic(make_sequence("D", 2, 1, ""))
        assert superdim(p) == ctx.R.superdim()
        assert ctx.run(make_sequence("D", 2, 1, "")).reductive


@pytest.mark.parametrize("n", [3, 4])
def test_grassmannian_intersection_shape(n):
    ctx = OracleContext(make_real_form("A", n, n, "sl-R"))
    p = ctx.parabolic(make_sequence("A", n, n, "1|1"))
    inter = meet(p, apply_involution(ctx.R, ctx.T, p, ctx.full_images))
    # four blocks of shape (a, v, X, w, b), one supertrace condition
    k = (n - 1) ** 2 + 1
    assert superdim(inter) == (2 * k - 1, 2 * k)


@pytest.mark.parametrize("fam,n,m", [("A", 2, 2), ("A", 3, 1), ("B", 1, 1), ("D", 2, 1), ("P", 3, 3), ("Q", 3, 3)])
def test_stabilizer_roots_match_the_level_rule(fam, n, m):
    for rf in catalog(fam, n, m):
        if rf.quaternionic:
            continue
        ctx = OracleContext(rf)
        for d in enumerate_sequences(fam, n, m):
            res = ctx.run(d)
            assert res.phi_weights == frozenset(r.weight for r in instance(fam, n, m, rf, d).pd.phi)


def test_reductivity_examples():
    su = make_real_form("A", 2, 2, "su", (1, 1, 2, 0))
    assert all(is_reductive_intersection(su, d) for d in enumerate_sequences("A", 2, 2))
    for n in (3, 4):
        assert not is_reductive_intersection(make_real_form("A", n, n, "sl-R"), make_sequence("A", n, n, "1|1"))


def test_supertrace_functional_examples():
    for rf in catalog("Q", 3):
        if rf.quaternionic:
            continue
        for d in enumerate_sequences("Q", 3):
            res = oracle_verdict(rf, d)
            assert all(not x for x in res.functional)
    res = oracle_verdict(make_real_form("A", 3, 3, "sl-R"), make_sequence("A", 3, 3, "1|1"))
    assert res.functional and all(not x for x in res.functional)
    # non-open configuration: no functional is evaluated
    res = oracle_verdict(make_real_form("A", 2, 2, "sl-R"), make_sequence("A", 2, 2, "2|0"))
    assert not res.verdict.open and res.functional == []


@pytest.mark.parametrize("fam,n,m", [("A", 2, 1), ("A", 2, 2), ("B", 1, 1), ("C", 1, 1), ("D", 2, 1),
                                     ("P", 2, 2), ("Q", 2, 2)])
def test_oracle_agrees_with_classifier(fam, n, m):
    for rf in catalog(fam, n, m):
        if rf.quaternionic:
            continue
        ctx = OracleContext(rf)
        for d in enumerate_sequences(fam, n, m):
            v = classify_instance(instance(fam, n, m, rf, d))
            assert verdict_fields(ctx.run(d).verdict) == verdict_fields(v), (rf.label, str(d))
