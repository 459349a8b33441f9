"""Acceptance criteria 1-9, each at its stated tolerance (exact) and time budget.

Every criterion records one PASS/FAIL line; ``conftest.py`` prints them at the
end of the pytest run, and running this file directly prints them as well.
"""

from __future__ import annotations

import filecmp
import json
import sys
import time
from pathlib import Path

import pytest
import sympy

from qschubert.cli import main
from qschubert.lattices import IntLattice, kappa_lattice, m_of_w
from qschubert.ncengine import build_context
from qschubert.normalia import classify_normals, separation_check
from qschubert.rootsys import cartan_datum, simple_reflection
from qschubert.verify import (
    check_braid,
    check_center,
    check_center_generators,
    check_kappa,
    check_ls_highest,
    check_ls_support,
    check_pbw,
    check_rewrite,
    check_roots,
)

GOLDEN = Path(__file__).parent / "golden"
RESULTS: dict[int, str] = {}


def record(n: int, title: str, budget: float | None, passed: bool, seconds: float, detail: str = "") -> None:
    within = budget is None or seconds <= budget
    ok = passed and within
    limit = f"budget {budget:g} s" if budget is not None else "no budget"
    extra = f"; {detail}" if detail else ""
    if passed and not within:
        extra += "; over time budget"
    RESULTS[n] = f"criterion {n} {title}: {'PASS' if ok else 'FAIL'} ({seconds:.2f} s, {limit}{extra})"
    print(RESULTS[n])
    assert passed, RESULTS[n]
    assert within, RESULTS[n]


def failures(reports) -> list:
    return [(r.name, r.failures[:3]) for r in reports if not r.passed]


# -- 1 ----------------------------------------------------------------------------------------


def test_criterion_1_roots_and_lattices():
    t0 = time.perf_counter()
    reps = [check_roots(cartan_datum(t)) for t in ("A2", "B2", "A3")]
    dt = time.perf_counter() - t0
    n = sum(r.instances for r in reps)
    assert n == 6 + 8 + 24
    record(1, "support/span/perp for A2, B2, A3", 5, not failures(reps), dt, f"{n} Weyl elements")


# -- 2 ----------------------------------------------------------------------------------------


def test_criterion_2_kappa():
    t0 = time.perf_counter()
    a2 = cartan_datum("A2")
    s1 = simple_reflection(a2, 1)
    ok = kappa_lattice(a2, s1) == IntLattice.span(2, [[1, 0]]) and m_of_w(a2, s1) == 1
    reps = []
    for t in ("A2", "B2", "A3"):
        dat = cartan_datum(t)
        reps.append(check_kappa(dat))
        for w in dat.weyl_group:
            nullity = len((sympy.Matrix(w.matrix) + sympy.eye(dat.rank)).nullspace())
            ok = ok and kappa_lattice(dat, w).rank == nullity
    dt = time.perf_counter() - t0
    record(2, "K(s1) = Z w1, m = 1, rank K(w) = dim ker(w+1)", 5, ok and not failures(reps), dt)


# -- 3 ----------------------------------------------------------------------------------------


def test_criterion_3_pbw_and_braid():
    t0 = time.perf_counter()
    reps = []
    for t in ("A2", "B2"):
        dat = cartan_datum(t)
        reps.append(check_pbw(dat, 6))
        reps.append(check_braid(dat, 12))
        reps.append(check_rewrite(dat, 12))
    dt = time.perf_counter() - t0
    pieces = reps[0].instances + reps[3].instances
    record(3, "PBW ranks to height 6 and braid relations, A2/B2", 120, not failures(reps), dt, f"{pieces} graded pieces")


# -- 4 ----------------------------------------------------------------------------------------


def test_criterion_4_ls():
    t0 = time.perf_counter()
    reps = []
    for t, word in (("A2", (1, 2, 1)), ("B2", (1, 2, 1, 2))):
        ctx = build_context(cartan_datum(t), word)
        reps.append(check_ls_support(ctx))
        reps.append(check_ls_highest(ctx, samples=50, seed=0))
    dt = time.perf_counter() - t0
    assert [r.instances for r in reps] == [3, 50, 6, 50]
    record(4, "straightening support and highest-term law", 120, not failures(reps), dt)


# -- 5 and 6 share one pass -------------------------------------------------------------------

_NORMAL: dict = {}


def _normal_pass():
    if not _NORMAL:
        t0 = time.perf_counter()
        normal, sep = [], []
        contexts = [(cartan_datum("A2"), w.word, 6) for w in cartan_datum("A2").weyl_group]
        contexts += [(cartan_datum("B2"), w.word, 5) for w in cartan_datum("B2").weyl_group if w.length <= 3]
        for dat, word, h in contexts:
            ctx = build_context(dat, word)
            rep, d = classify_normals(ctx, h, margin=2)
            normal.append(rep)
            sep.append(separation_check(ctx, h, d))
        _NORMAL.update(normal=normal, sep=sep, seconds=time.perf_counter() - t0)
    return _NORMAL


def test_criterion_5_normal_classification():
    res = _normal_pass()
    n = len(res["normal"])
    record(5, "normal elements, A2 all w (H=6), B2 l(w)<=3 (H=5)", 300, not failures(res["normal"]), res["seconds"], f"{n} contexts")


def test_criterion_6_separation():
    res = _normal_pass()
    record(6, "separation of variables on the same contexts", 300, not failures(res["sep"]), res["seconds"], "shares the budget of criterion 5")


# -- 7 ----------------------------------------------------------------------------------------


def test_criterion_7_center():
    t0 = time.perf_counter()
    a2 = cartan_datum("A2")
    reps = [check_center(build_context(a2, w.word), 6) for w in a2.weyl_group]
    dt = time.perf_counter() - t0
    record(7, "central elements match K(w) and dominant weights, A2 (H=6)", None, not failures(reps), dt)


# -- 8 ----------------------------------------------------------------------------------------


def test_criterion_8_center_generators():
    t0 = time.perf_counter()
    reps = [check_center_generators(cartan_datum("A2")), check_center_generators(cartan_datum("B2"))]
    dt = time.perf_counter() - t0
    assert [r.instances for r in reps] == [36, 64]
    record(8, "torus center generators for all 36 + 64 pairs", 10, not failures(reps), dt)


# -- 9 ----------------------------------------------------------------------------------------


def test_criterion_9_determinism(tmp_path, capsys):
    t0 = time.perf_counter()
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = [main(["report", "--type", "A2", "--all-pairs", "--out", str(p)]) for p in (a, b)]
    same = filecmp.cmp(a, b, shallow=False) and len(json.loads(a.read_text())["pairs"]) == 36
    golden_ok = True
    for name, wp, wm in (("A2_s1_s1", "1", "1"), ("A2_w0_w0", "1,2,1", "1,2,1"), ("A2_e_e", "", "")):
        out = tmp_path / f"{name}.json"
        codes.append(main(["report", "--type", "A2", "--wplus", wp, "--wminus", wm, "--out", str(out)]))
        golden_ok = golden_ok and out.read_bytes() == (GOLDEN / f"{name}.json").read_bytes()
    divisors = json.loads((GOLDEN / "A2_w0_w0.json").read_text())["stabilizer"]["divisors"]
    dt = time.perf_counter() - t0
    capsys.readouterr()
    ok = codes == [0] * 5 and same and golden_ok and divisors == [2, 2]
    record(9, "byte-identical all-pairs report and golden files", None, ok, dt)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
