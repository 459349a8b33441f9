import pytest
from hypothesis import given
from hypothesis import strategies as st

from qschubert.ncengine import build_context
from qschubert.normalia import (
    DeltaSet,
    classify_normals,
    delta_decompose,
    exponent_law,
    find_central,
    find_normal,
    highest_term_exponents,
    j1_generators,
    lead_multidegree,
    predicted_normal_degrees,
    separation_check,
)
from qschubert.qarith import ONE, qpow
from qschubert.rootsys import cartan_datum, word_to_element

A2, B2 = cartan_datum("A2"), cartan_datum("B2")


def test_degree_a1_in_s1s2():
    ctx = build_context(A2, (1, 2))
    f = find_normal(ctx, (1, 0))
    assert f.dimension == 1
    ((c, (v,)),) = f.lines
    # X1 X2 = q X2 X1 from <a1, a1 + a2> = 1
    assert c == (0, 1)
    assert v.coords == {(1, 0): ONE}


def test_two_lines_in_one_degree():
    ctx = build_context(A2, (1, 2, 1))
    f = find_normal(ctx, (1, 1))
    assert f.dimension == 2
    assert sorted(f.exponent_vectors()) == [(-1, 0, 1), (1, 0, -1)]
    by_c = dict(f.lines)
    assert by_c[(-1, 0, 1)][0].coords == {(0, 1, 0): ONE}
    assert sorted(tuple(lam) for lam in f.predicted_eta) == [(0, 1), (1, 0)]


def test_exponent_law_matches_search():
    ctx = build_context(A2, (1, 2, 1))
    w = ctx.w
    for lam in [A2.omega(1), A2.omega(2), A2.omega(1) + A2.omega(2)]:
        gamma = A2.weight_to_root(lam - w.act(lam))
        f = find_normal(ctx, gamma)
        assert exponent_law(ctx, lam) in f.exponent_vectors()
    assert lead_multidegree(ctx, A2.weight([2, 1])) == (2, 1, 2)


def test_highest_term_exponents_single_root_vector():
    ctx = build_context(B2, (1, 2, 1, 2))
    # X_1 alone: c_j = <b_1, b_j> for j > 1
    assert highest_term_exponents(ctx, (1, 0, 0, 0)) == tuple(
        0 if j == 1 else ctx.pair(1, j) for j in range(1, 5)
    )


def test_predicted_degrees_frozen():
    w, _ = word_to_element(A2, (1, 2, 1))
    pred = predicted_normal_degrees(A2, w, 4)
    assert {g: sorted(tuple(l) for l in lams) for g, lams in pred.items()} == {
        (0, 0): [(0, 0)],
        (1, 1): [(0, 1), (1, 0)],
        (2, 2): [(0, 2), (1, 1), (2, 0)],
    }


@pytest.mark.parametrize("word", [(), (1,), (1, 2), (2, 1), (1, 2, 1)])
def test_a2_classification_and_separation(word):
    ctx = build_context(A2, word)
    rep, d = classify_normals(ctx, 5)
    assert rep.passed, rep.failures
    sep = separation_check(ctx, 5, d)
    assert sep.passed, sep.failures


@pytest.mark.parametrize("word", [(1, 2, 1), (2, 1, 2)])
def test_b2_classification(word):
    ctx = build_context(B2, word)
    rep, d = classify_normals(ctx, 5)
    assert rep.passed, rep.failures
    assert separation_check(ctx, 5, d).passed


def test_minus_context_classification():
    ctx = build_context(A2, (1, 2, 1), sign=-1)
    rep, _ = classify_normals(ctx, 4)
    assert rep.passed, rep.failures


def test_center_frozen():
    rep, found = find_central(build_context(A2, (1, 2)), 6)
    assert rep.passed and [g for g, _ in found] == [(0, 0)]
    rep, found = find_central(build_context(A2, (1, 2, 1)), 4)
    assert rep.passed
    assert [g for g, _ in found] == [(0, 0), (2, 2)]
    (v,) = found[1][1]
    q = qpow(1)
    assert v.coords == {(0, 2, 0): ONE, (1, 1, 1): ONE - q * q}


def test_j1_longest_a2():
    w, _ = word_to_element(A2, (1, 2, 1))
    out = j1_generators(A2, w)
    assert out["K_basis"] == [[1, 1]]
    assert out["generators"][0]["n"] == "0"
    assert out["simplified"] == ["1 - d[w1 + w2]"]
    w, _ = word_to_element(A2, (1,))
    assert j1_generators(A2, w)["K_basis"] == [[1, 0]]


@given(st.lists(st.integers(1, 3), max_size=5), st.data())
def test_delta_decomposition_unique(word, data):
    word = tuple(word)
    n = tuple(data.draw(st.lists(st.integers(0, 4), min_size=len(word), max_size=len(word))))
    sigma, delta = delta_decompose(word, n)
    ds = DeltaSet(word)
    assert delta in ds
    assert tuple(a + b for a, b in zip(sigma, delta)) == n
    # sigma is a combination of the indicator vectors e_j
    for j in ds.letters:
        assert len({sigma[k] for k in ds.supp(j)}) == 1
    # and removing any further e_j leaves Delta or goes negative
    for j in ds.letters:
        assert any(delta[k] == 0 for k in ds.supp(j))
