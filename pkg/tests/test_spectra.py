import pytest
import sympy

from qschubert.lattices import IntLattice, big_L
from qschubert.ncengine import build_context
from qschubert.rootsys import cartan_datum, word_to_element
from qschubert.spectra import (
    QuantumTorusPresentation,
    build_Lw,
    build_N,
    build_Nprime,
    leaf_and_ideal_report,
    max_spectrum_report,
    pair_report,
    stabilizer,
    stratification_summary,
    theorem1_generators,
    torus_center,
)

A2, B2 = cartan_datum("A2"), cartan_datum("B2")


def el(datum, word):
    return word_to_element(datum, word)[0]


def test_torus_presentation_validation():
    with pytest.raises(ValueError):
        QuantumTorusPresentation(("x", "y"), ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        QuantumTorusPresentation(("x", "x"), ((0, 0), (0, 0)))
    t = QuantumTorusPresentation(("x", "y", "z"), ((0, 2, 0), (-2, 0, 0), (0, 0, 0)))
    assert torus_center(t) == IntLattice.span(3, [[0, 0, 1]])
    assert t.commutes_with_all((0, 0, 5)) and not t.commutes_with_all((1, 0, 0))


def test_build_N_matches_pbw_commutation():
    w = el(A2, (1, 2))
    n = build_N(A2, w)
    # d_w1 = X1, d_w2 = X2 and X1 X2 = q X2 X1
    assert n.exponents == ((0, 1), (-1, 0))
    ctx = build_context(A2, (1, 2))
    assert ctx.pair(1, 2) == 1
    assert build_N(A2, w, sign=-1).exponents == ((0, -1), (1, 0))


def test_build_N_longest_is_commutative():
    assert build_N(A2, A2.longest_element()).exponents == ((0, 0), (0, 0))


def test_Lw_identity_pair():
    t, raw = build_Lw(A2, A2.identity(), A2.identity())
    assert t.labels == ("c-[w1]", "c-[w2]")
    assert raw == []


def test_Lw_raw_mixed_kept():
    w0 = A2.longest_element()
    t, raw = build_Lw(A2, w0, A2.identity())
    assert raw[0][0] == "1/3"  # -<w0 w1, w1> = <w2, w1>
    assert all(isinstance(x, int) for row in t.exponents for x in row)


def test_Nprime_antisymmetric_integral():
    for wp in B2.weyl_group:
        for wm in B2.weyl_group:
            m = sympy.Matrix(build_Nprime(B2, wp, wm).exponents)
            assert m == -m.T


def test_center_generators_s1_s1_frozen():
    s1 = el(A2, (1,))
    t = theorem1_generators(A2, s1, s1)
    assert t["S"] == [1] and t["I"] == [2] and t["k"] == 1 and t["dimension"] == 2
    names = [g["name"] for g in t["generators"]]
    assert names == ["c+[w2]", "a1"]
    assert [g["character"] for g in t["generators"]] == [[0, 1], [2, 0]]
    assert all(t["checks"].values())


def test_center_generators_w0_e():
    # ker(w0 - 1) = Z(w1 - w2): one a-generator, no c+ generators
    t = theorem1_generators(A2, A2.longest_element(), A2.identity())
    assert t["dimension"] == 1 and t["I"] == [] and t["k"] == 1
    assert [g["lambda"] for g in t["generators"]] == [[1, -1]]
    assert all(t["checks"].values())


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_center_generators_all_pairs(label):
    dat = cartan_datum(label)
    for wp in dat.weyl_group:
        for wm in dat.weyl_group:
            t = theorem1_generators(dat, wp, wm)
            assert all(t["checks"].values()), (wp.word, wm.word, t["checks"])


def test_stabilizer_frozen():
    w0 = A2.longest_element()
    st = stabilizer(A2, w0, w0)
    assert st["divisors"] == [2, 2] and st["order"] == 4 and st["torus_rank"] == 0
    assert st["description"] == "mu_2 x mu_2"
    st = stabilizer(A2, el(A2, (1,)), A2.identity())
    assert st["torus_rank"] == 1 and st["order"] is None
    assert stabilizer(A2, A2.identity(), A2.identity())["description"] == "trivial"


def test_stabilizer_uses_snf_of_L():
    for wp in B2.weyl_group:
        for wm in B2.weyl_group:
            L = big_L(B2, wp, wm)
            st = stabilizer(B2, wp, wm)
            if L.rank == 2:
                det = abs(int(sympy.Matrix(L.basis).det()))
                assert st["order"] == det


@pytest.mark.parametrize("datum,total", [(A2, 30), (B2, 48)], ids=["A2", "B2"])
def test_stratification_total_dimension(datum, total):
    # sum over pairs of dim ker(w+ - w-) = |W| * sum_w dim Fix(w)
    s = stratification_summary(datum)
    assert s["strata"] == len(datum.weyl_group) ** 2
    assert s["total_dimension"] == total


def test_leaf_report_frozen():
    s1 = el(A2, (1,))
    rep = leaf_and_ideal_report(A2, s1, s1)
    assert rep["ideal_generators"] == ["a1 - z1", "c+[w2] - t2"]
    assert rep["k"] == 1 and rep["I_count"] == 1
    assert max_spectrum_report(A2)["parameters"] == ["p1", "p2"]


def test_pair_report_shape():
    rep = pair_report(A2, el(A2, (1,)), el(A2, (1,)))
    assert rep["I"] == [2] and rep["leaf"]["k"] == 1
    assert set(rep["checks"].values()) == {"pass"}
    assert rep["stabilizer"]["divisors"] == [2]
