"""Property suites shared by the CLI ``verify`` command and the test-suite."""

from __future__ import annotations

import random
import time
from itertools import product
from typing import Callable, Sequence

from .lattices import (
    coordinate_lattice,
    inversion_perp,
    inversion_span,
    kappa_lattice,
    m_of_w,
)
from .ncengine import PBWContext, build_context, ls_relation, quantum_group
from .normalia import CheckReport, DeltaSet, classify_normals, delta_decompose, find_central, separation_check
from .qarith import matrix_rank
from .rootsys import CartanDatum, WeylElement, inversion_roots, pairing, support_sets, word_to_element
from .spectra import theorem1_generators

__all__ = [
    "reduced_words",
    "check_roots",
    "check_kappa",
    "check_pbw",
    "check_braid",
    "check_ls_support",
    "check_ls_highest",
    "check_normal_and_separation",
    "check_center",
    "check_center_generators",
    "check_complement",
    "check_rewrite",
    "CHECKS",
    "run_checks",
]


def reduced_words(datum: CartanDatum, w: WeylElement) -> list[tuple[int, ...]]:
    """Every reduced word of w."""
    if not w.word:
        return [()]
    out = []
    for i in range(1, datum.rank + 1):
        sw, _ = word_to_element(datum, (i,) + w.word)
        if sw.length < w.length:
            out += [(i,) + rest for rest in reduced_words(datum, sw)]
    return sorted(set(out))


def _label(datum: CartanDatum, word: Sequence[int]) -> str:
    return f"{datum.name} {','.join(map(str, word)) or 'e'}"


def check_roots(datum: CartanDatum) -> CheckReport:
    rep = CheckReport(f"roots[{datum.name}]")
    nroots = len(datum.positive_roots)
    for w in datum.weyl_group:
        rep.instances += 1
        s, i = support_sets(datum, w)
        sets = set()
        for word in reduced_words(datum, w):
            if frozenset(word) != s:
                rep.fail({"w": w.word_str(), "word": list(word), "check": "support"})
            sets.add(frozenset(inversion_roots(datum, word)))
        if len(sets) != 1:
            rep.fail({"w": w.word_str(), "check": "inversion-set"})
        invs = next(iter(sets))
        neg = {b for b in datum.positive_roots if sum(w.inverse().act_root(b)) < 0}
        if set(invs) != neg or len(invs) != w.length or w.length > nroots:
            rep.fail({"w": w.word_str(), "check": "inversions"})
        if inversion_span(datum, w) != coordinate_lattice(datum.rank, s):
            rep.fail({"w": w.word_str(), "check": "span=Q_S"})
        if inversion_perp(datum, w) != coordinate_lattice(datum.rank, i):
            rep.fail({"w": w.word_str(), "check": "perp=P_I"})
    return rep


def check_kappa(datum: CartanDatum) -> CheckReport:
    rep = CheckReport(f"kappa[{datum.name}]")
    for w in datum.weyl_group:
        rep.instances += 1
        s, i = support_sets(datum, w)
        kap = kappa_lattice(datum, w)
        if kap.rank != m_of_w(datum, w):
            rep.fail({"w": w.word_str(), "rank": kap.rank, "m": m_of_w(datum, w)})
        ps, pi = coordinate_lattice(datum.rank, s), coordinate_lattice(datum.rank, i)
        betas = [datum.root_to_weight(b) for b in inversion_roots(datum, w.word)]
        for mu in kap.weights():
            img = w.act(mu) + mu
            if tuple(mu) not in ps or tuple(img) not in pi:
                rep.fail({"w": w.word_str(), "mu": list(mu), "check": "membership"})
            # independent route: (w+1)mu is orthogonal to every inversion root
            if any(pairing(datum, img, b) for b in betas):
                rep.fail({"w": w.word_str(), "mu": list(mu), "check": "orthogonality"})
    return rep


def _contexts(datum: CartanDatum, words: Sequence[Sequence[int]] | None, cap: int):
    if words is None:
        words = [w.word for w in datum.weyl_group]
    return [build_context(datum, wd, cap=cap) for wd in words]


def check_pbw(datum: CartanDatum, height: int, words=None, cap: int = 12) -> CheckReport:
    rep = CheckReport(f"pbw[{datum.name} h<={height}]")
    for ctx in _contexts(datum, words, cap):
        for g in ctx.degrees_up_to(height):
            rep.instances += 1
            ns, _, mat = ctx.piece(g)
            rk = matrix_rank(mat, len(ns))
            if rk != len(ns):
                rep.fail({"word": list(ctx.word), "degree": list(g), "monomials": len(ns), "rank": rk})
    return rep


def check_braid(datum: CartanDatum, cap: int = 12) -> CheckReport:
    rep = CheckReport(f"braid[{datum.name}]")
    g = quantum_group(datum, cap)
    order = {0: 2, 1: 3, 2: 4, 3: 6}
    for i in range(1, datum.rank + 1):
        for j in range(i + 1, datum.rank + 1):
            m = order[datum.c(i, j) * datum.c(j, i)]
            w1 = tuple((i, j) * m)[:m]
            w2 = tuple((j, i) * m)[:m]
            for k in range(1, datum.rank + 1):
                for kind in "EFK":
                    for p in ((1, -1) if kind == "K" else (1,)):
                        rep.instances += 1
                        x = g.gen(kind, k, p)
                        if g.braid_word(w1, x) != g.braid_word(w2, x):
                            rep.fail({"i": i, "j": j, "generator": f"{kind}{k}^{p}"})
    return rep


def check_ls_support(ctx: PBWContext) -> CheckReport:
    rep = CheckReport(f"ls-support[{_label(ctx.datum, ctx.word)}]")
    for i in range(1, ctx.l + 1):
        for j in range(i + 1, ctx.l + 1):
            rep.instances += 1
            v = ls_relation(ctx, i, j)
            for n in v.coords:
                if any(n[k] for k in range(ctx.l) if k + 1 <= i or k + 1 >= j):
                    rep.fail({"i": i, "j": j, "term": list(n)})
    return rep


def _random_monomial(rng: random.Random, ctx: PBWContext, budget: int) -> tuple[int, ...]:
    n = [0] * ctx.l
    left = rng.randint(1, budget)
    while left > 0:
        k = rng.randrange(ctx.l)
        if ctx.heights[k] <= left:
            n[k] += 1
            left -= ctx.heights[k]
        elif min(ctx.heights) > left:
            break
    return tuple(n)


def check_ls_highest(ctx: PBWContext, samples: int = 50, seed: int = 0, height: int = 6) -> CheckReport:
    """Highest term of X^n X^n' is q^m X^{n+n'} on random pairs."""
    rep = CheckReport(f"ls-highest[{_label(ctx.datum, ctx.word)}]")
    rng = random.Random(seed)
    for _ in range(samples):
        n = _random_monomial(rng, ctx, height // 2)
        n2 = _random_monomial(rng, ctx, height - sum(a * h for a, h in zip(n, ctx.heights)))
        rep.instances += 1
        prod = ctx.express(ctx.hmul(ctx.monomial(n), ctx.monomial(n2)))
        top, coef = prod.highest()
        target = tuple(a + b for a, b in zip(n, n2))
        if top != target or coef.monomial_exponent() is None:
            rep.fail({"n": list(n), "n2": list(n2), "top": list(top), "coefficient": str(coef)})
    return rep


def check_normal_and_separation(ctx: PBWContext, height: int, margin: int = 2) -> list[CheckReport]:
    rep, d = classify_normals(ctx, height, margin)
    return [rep, separation_check(ctx, height, d)]


def check_center(ctx: PBWContext, height: int) -> CheckReport:
    return find_central(ctx, height)[0]


def check_center_generators(datum: CartanDatum) -> CheckReport:
    rep = CheckReport(f"center-generators[{datum.name}]")
    for wp in datum.weyl_group:
        for wm in datum.weyl_group:
            rep.instances += 1
            t = theorem1_generators(datum, wp, wm)
            bad = [k for k, v in t["checks"].items() if not v]
            if bad:
                rep.fail({"w_plus": wp.word_str(), "w_minus": wm.word_str(), "failed": bad, "generators": t["generators"]})
    return rep


def check_complement(word: Sequence[int], box: int = 4) -> CheckReport:
    """Unique n = sigma + delta over {0..box}^l."""
    rep = CheckReport(f"complement[{','.join(map(str, word)) or 'e'}]")
    ds = DeltaSet(tuple(word))
    letters = ds.letters
    for n in product(range(box + 1), repeat=len(word)):
        rep.instances += 1
        found = []
        for ms in product(*[range(min(n[k] for k in ds.supp(j)) + 1) for j in letters]):
            sigma = [0] * len(word)
            for m, j in zip(ms, letters):
                for k in ds.supp(j):
                    sigma[k] += m
            delta = tuple(a - b for a, b in zip(n, sigma))
            if delta in ds:
                found.append((tuple(sigma), delta))
        if len(found) != 1 or found[0] != delta_decompose(word, n):
            rep.fail({"n": list(n), "decompositions": [list(map(list, f)) for f in found]})
    return rep


def check_rewrite(datum: CartanDatum, cap: int = 12) -> CheckReport:
    rep = CheckReport(f"rewrite[{datum.name} D={cap}]")
    gb = quantum_group(datum, cap).gb
    rep.instances = 1
    if not gb.check_confluence(cap):
        rep.fail({"check": "confluence"})
    return rep


# -- driver ---------------------------------------------------------------------------------

CHECKS = (
    "roots",
    "kappa",
    "rewrite",
    "braid",
    "pbw",
    "ls-support",
    "ls-highest",
    "normal",
    "separation",
    "center",
    "complement",
    "center-generators",
)


def run_checks(
    datum: CartanDatum,
    names: Sequence[str] | None = None,
    words: Sequence[Sequence[int]] | None = None,
    height: int = 6,
    cap: int = 12,
    margin: int = 2,
) -> list[dict]:
    """Run the named suites; ``words=None`` means every Weyl group element."""
    names = list(names or CHECKS)
    for n in names:
        if n not in CHECKS:
            raise ValueError(f"unknown check {n!r}; choose from {', '.join(CHECKS)}")
    ctx_words = [w.word for w in datum.weyl_group] if words is None else [tuple(w) for w in words]
    out: list[dict] = []

    def record(fn: Callable[[], list[CheckReport] | CheckReport]):
        t0 = time.perf_counter()
        res = fn()
        dt = time.perf_counter() - t0
        for r in res if isinstance(res, list) else [res]:
            out.append(dict(r.to_json(), seconds=round(dt, 3)))

    ctxs = None

    def contexts():
        nonlocal ctxs
        if ctxs is None:
            ctxs = [build_context(datum, wd, cap=cap) for wd in ctx_words]
        return ctxs

    for name in names:
        if name == "roots":
            record(lambda: check_roots(datum))
        elif name == "kappa":
            record(lambda: check_kappa(datum))
        elif name == "rewrite":
            record(lambda: check_rewrite(datum, cap))
        elif name == "braid":
            record(lambda: check_braid(datum, cap))
        elif name == "pbw":
            record(lambda: check_pbw(datum, height, ctx_words, cap))
        elif name == "ls-support":
            for c in contexts():
                if c.l >= 2:
                    record(lambda c=c: check_ls_support(c))
        elif name == "ls-highest":
            for c in contexts():
                if c.l >= 1:
                    record(lambda c=c: check_ls_highest(c, height=height))
        elif name in ("normal", "separation"):
            if name == "separation" and "normal" in names:
                continue  # already produced alongside "normal"
            want = {"normal", "separation"} & set(names)
            for c in contexts():
                record(
                    lambda c=c: [
                        r
                        for r, tag in zip(check_normal_and_separation(c, height, margin), ("normal", "separation"))
                        if tag in want
                    ]
                )
        elif name == "center":
            for c in contexts():
                record(lambda c=c: check_center(c, height))
        elif name == "complement":
            for c in contexts():
                record(lambda c=c: check_complement(c.word))
        elif name == "center-generators":
            record(lambda: check_center_generators(datum))
    return out
