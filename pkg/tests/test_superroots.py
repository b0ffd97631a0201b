from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from flagmeasure.superroots import (InvalidParameters, Parity, Root, Weight, build_root_system,
                                    graded_root_sum, graded_sum_in, normalize_params)

SMALL = [("A", 2, 1), ("A", 2, 2), ("A", 3, 1), ("A", 0, 3), ("B", 1, 1), ("B", 2, 1),
         ("B", 0, 2), ("C", 1, 2), ("D", 2, 1), ("D", 3, 2), ("P", 3, 3), ("Q", 3, 3)]


def x(n, m, i, c=1):
    return Weight.unit(n, m, "x", i, c)


def y(n, m, j, c=1):
    return Weight.unit(n, m, "y", j, c)


def test_sl22_roots():
    rs = build_root_system("A", 2, 2)
    even = {r.weight for r in rs.roots if r.parity is Parity.EVEN}
    odd = {r.weight for r in rs.roots if r.parity is Parity.ODD}
    assert even == {x(2, 2, 1) - x(2, 2, 2), x(2, 2, 2) - x(2, 2, 1),
                    y(2, 2, 1) - y(2, 2, 2), y(2, 2, 2) - y(2, 2, 1)}
    assert odd == {(x(2, 2, i) - y(2, 2, j)).scale(s) for i in (1, 2) for j in (1, 2)
                   for s in (1, -1)}


def test_rank_zero_is_empty():
    assert build_root_system("A", 1, 0).roots == frozenset()


def test_p3_one_sided_roots():
    rs = build_root_system("P", 3)
    for i in range(1, 4):
        assert x(3, 0, i, 2) in rs
        assert x(3, 0, i, -2) not in rs
    for i in range(1, 4):
        for j in range(i + 1, 4):
            assert -(x(3, 0, i) + x(3, 0, j)) in rs


@pytest.mark.parametrize("n,m", [(1, 0), (2, 1), (3, 2), (2, 2), (0, 4)])
def test_type_a_counts(n, m):
    assert build_root_system("A", n, m).counts() == (n * (n - 1) + m * (m - 1), 2 * n * m)


@pytest.mark.parametrize("fam,n,m,expected", [
    ("B", 2, 1, (2 * 4 + 2 * 1, 4 * 2 + 2)),
    ("B", 0, 2, (8, 4)),
    ("D", 3, 2, (2 * 3 * 2 + 2 * 4, 4 * 6)),
    ("C", 1, 2, (8, 8)),
    ("P", 4, 4, (12, 16)),
    ("Q", 3, 3, (6, 6)),
])
def test_closed_form_counts(fam, n, m, expected):
    assert build_root_system(fam, n, m).counts() == expected


@pytest.mark.parametrize("fam,n,m", SMALL)
def test_negation_closure(fam, n, m):
    rs = build_root_system(fam, n, m)
    one_sided = []
    for r in rs.roots:
        if (-r.weight) in rs:
            assert rs.root(-r.weight).parity == r.parity
        else:
            one_sided.append(r)
    if fam == "P":
        assert sorted(r.weight for r in one_sided) == sorted(x(n, 0, i, 2) for i in range(1, n + 1))
    else:
        assert not one_sided


@pytest.mark.parametrize("fam,n,m", SMALL)
def test_full_graded_sum_vanishes(fam, n, m):
    rs = build_root_system(fam, n, m)
    total = graded_sum_in(rs, rs.roots)
    assert rs.is_null(total)
    # P(n): the one-sided roots leave -2(x_1 + ... + x_n), zero on the trace-free Cartan
    assert total.is_zero() == (fam != "P")


def test_graded_sum_examples():
    assert graded_root_sum([], zero=Weight.zero(2, 2)).is_zero()
    w = x(2, 2, 1) - y(2, 2, 1)
    pair = [Root(w, Parity.ODD), Root(-w, Parity.ODD)]
    assert graded_root_sum(pair).is_zero()


def test_grassmannian_complement_sum():
    # sl-R on sl(n|n), Gr_{1|1}: the roots moving the first or last index in either factor
    for n in (3, 4, 5):
        rs = build_root_system("A", n, n)
        ends = {("x", 1), ("x", n), ("y", 1), ("y", n)}
        def touches(r):
            return any(r.weight.x[i - 1] if k == "x" else r.weight.y[i - 1] for k, i in ends)
        assert graded_sum_in(rs, [r for r in rs.roots if touches(r)]).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_graded_sum_is_additive(params, data):
    rs = build_root_system(*params)
    roots = rs.sorted_roots()
    mask = data.draw(st.lists(st.booleans(), min_size=len(roots), max_size=len(roots)))
    a = [r for r, keep in zip(roots, mask) if keep]
    b = [r for r, keep in zip(roots, mask) if not keep]
    assert graded_sum_in(rs, a) + graded_sum_in(rs, b) == graded_sum_in(rs, roots)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_q_sums_always_vanish(n, data):
    rs = build_root_system("Q", n)
    subset = data.draw(st.sets(st.sampled_from(rs.sorted_roots()))) if rs.roots else set()
    assert graded_sum_in(rs, subset).is_zero()


def test_null_direction_and_aliases():
    rs = build_root_system("A", 2, 2)
    assert rs.quotient
    assert rs.is_null(Weight((2, 2), (-2, -2)))
    assert not rs.is_null(Weight((1, 0), (0, 0)))
    assert normalize_params("D(2,1;alpha)", 0) == ("D", 2, 1)
    assert normalize_params("C", 3) == ("C", 1, 3)
    assert normalize_params("P", 2) == ("P", 2, 2)


@pytest.mark.parametrize("args", [("P", 2, 3), ("A", 0, 0), ("B", -1, 1), ("X", 1, 1), ("C", 2, 3), ("D", 2, None)])
def test_invalid_parameters(args):
    with pytest.raises(InvalidParameters):
        build_root_system(*args)


def test_weight_text():
    assert str(x(2, 1, 1) - y(2, 1, 1)) == "x1-y1"
    assert str(Weight.zero(2, 1)) == "0"
