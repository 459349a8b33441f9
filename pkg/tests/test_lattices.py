import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from qschubert.lattices import (
    IntLattice,
    big_L,
    coordinate_lattice,
    hnf,
    kappa_lattice,
    kernel_lattice,
    ltilde,
    ltilde_red,
    m_of_w,
    snf_divisors,
    split_pm,
    split_S_I,
    split_triple,
)
from qschubert.rootsys import cartan_datum, pair_support, simple_reflection, word_to_element

small_matrix = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=1, max_size=4)
)


def sympy_divisors(rows):
    m = sympy.Matrix(rows)
    d = smith_normal_form(m, domain=sympy.ZZ)
    out = [abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0]
    return sorted(out)


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_snf_matches_sympy(rows):
    ours = sorted(snf_divisors(rows))
    assert ours == sympy_divisors(rows)


@given(small_matrix, st.randoms(use_true_random=False))
def test_hnf_is_canonical_under_unimodular_moves(rows, rnd):
    n = len(rows[0])
    base = hnf(rows, n)
    moved = [list(r) for r in rows]
    for _ in range(6):
        i, j = rnd.randrange(len(moved)), rnd.randrange(len(moved))
        if i != j:
            k = rnd.randint(-3, 3)
            moved[i] = [a + k * b for a, b in zip(moved[i], moved[j])]
        rnd.shuffle(moved)
    moved.append([0] * n)
    assert hnf(moved, n) == base


@given(small_matrix, small_matrix)
def test_intersection_and_sum(a, b):
    n = len(a[0])
    b = [(r + [0] * n)[:n] for r in b]
    la, lb = IntLattice.span(n, a), IntLattice.span(n, b)
    meet = la.intersect(lb)
    assert la.contains_lattice(meet) and lb.contains_lattice(meet)
    join = la + lb
    assert join.contains_lattice(la) and join.contains_lattice(lb)
    # rank(A + B) + rank(A & B) = rank A + rank B
    assert join.rank + meet.rank == la.rank + lb.rank


def test_quotient_divisors_and_index():
    full = IntLattice.full(2)
    sub = IntLattice.span(2, [[2, 0], [0, 2]])
    assert full.quotient_divisors(sub) == [2, 2]
    assert full.index_of(sub) == 4
    assert full.quotient_divisors(IntLattice.span(2, [[2, 0]])) == [2, 0]
    assert full.index_of(IntLattice.span(2, [[1, 0]])) is None
    with pytest.raises(ValueError):
        sub.quotient_divisors(full)


def test_kernel_lattice():
    k = kernel_lattice([[1, 1, 1]])
    assert k.rank == 2 and (1, -1, 0) in k and (1, 1, 1) not in k
    assert kernel_lattice([[2, 4]]) == IntLattice.span(2, [[2, -1]])


def test_kappa_sl3_s1():
    a2 = cartan_datum("A2")
    s1 = simple_reflection(a2, 1)
    assert kappa_lattice(a2, s1) == IntLattice.span(2, [[1, 0]])
    assert m_of_w(a2, s1) == 1


@pytest.mark.parametrize("label", ["A2", "B2", "A3", "G2"])
def test_kappa_rank_against_sympy_nullspace(label):
    dat = cartan_datum(label)
    for w in dat.weyl_group:
        m = sympy.Matrix(w.matrix) + sympy.eye(dat.rank)
        assert kappa_lattice(dat, w).rank == len(m.nullspace()) == m_of_w(dat, w)


def test_pair_lattices_frozen():
    a2 = cartan_datum("A2")
    w0 = a2.longest_element()
    e = a2.identity()
    s1 = simple_reflection(a2, 1)
    # w0 swaps w1 and -w2, so ker(w0 - 1) = Z(w1 - w2)
    assert ltilde(a2, w0, e) == IntLattice.span(2, [[1, -1]])
    assert ltilde(a2, s1, s1) == IntLattice.full(2)
    assert ltilde_red(a2, s1, s1) == IntLattice.span(2, [[1, 0]])
    assert big_L(a2, s1, s1) == IntLattice.span(2, [[2, 0], [0, 1]])
    assert big_L(a2, w0, w0) == IntLattice.span(2, [[2, 0], [0, 2]])
    assert big_L(a2, e, e) == IntLattice.full(2)


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_L_over_2ltilde_has_order_two_to_I(label):
    dat = cartan_datum(label)
    for wp in dat.weyl_group:
        for wm in dat.weyl_group:
            _, i = pair_support(dat, wp, wm)
            L = big_L(dat, wp, wm)
            assert L.index_of(ltilde(dat, wp, wm).scale(2)) == 2 ** len(i)


def test_splittings():
    a2 = cartan_datum("A2")
    lam = a2.weight([3, -2])
    plus, minus = split_pm(lam)
    assert list(plus) == [3, 0] and list(minus) == [0, 2]
    w, _ = word_to_element(a2, (1,))
    s_part, i_part = split_S_I(a2, w, w, lam)
    assert s_part + i_part == lam
    wp, _ = word_to_element(a2, (1, 2))
    wm, _ = word_to_element(a2, (2,))
    zero, only_plus, only_minus = split_triple(a2, wp, wm, a2.weight([3, 2]))
    assert (list(zero), list(only_plus), list(only_minus)) == ([0, 2], [3, 0], [0, 0])
    with pytest.raises(ValueError):
        split_triple(a2, wp, wm, lam)


def test_coordinate_lattice():
    assert coordinate_lattice(3, [3, 1]).basis == ((1, 0, 0), (0, 0, 1))
    assert coordinate_lattice(3, []).rank == 0


def test_random_snf_product_equals_determinant():
    rng = random.Random(7)
    for _ in range(50):
        m = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        det = abs(int(sympy.Matrix(m).det()))
        divs = snf_divisors(m)
        prod = 1
        for d in divs:
            prod *= d
        if det:
            assert prod == det
