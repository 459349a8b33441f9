"""Quantum tori, center generators, stabilizers and spectrum reports for Weyl pairs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattices import (
    IntLattice,
    big_L,
    coordinate_lattice,
    kernel_lattice,
    ltilde,
    ltilde_red,
    rational_rank,
    split_pm,
)
from .rootsys import CartanDatum, Weight, WeylElement, pair_support, pairing, support_sets

__all__ = [
    "QuantumTorusPresentation",
    "torus_center",
    "build_Lw",
    "build_N",
    "build_Nprime",
    "theorem1_generators",
    "stabilizer",
    "leaf_and_ideal_report",
    "max_spectrum_report",
    "stratification_summary",
    "pair_report",
]


def _int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"non-integral exponent in {what}: {x}")
    return int(x)


@dataclass(frozen=True)
class QuantumTorusPresentation:
    """Generators x_a with x_a x_b = q^{M_ab} x_b x_a."""

    labels: tuple[str, ...]
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("labels must be unique")
        m = self.exponents
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError("exponent matrix has the wrong shape")
        for a in range(n):
            for b in range(n):
                if m[a][b] != -m[b][a]:
                    raise ValueError("exponent matrix is not antisymmetric")

    @property
    def size(self) -> int:
        return len(self.labels)

    def commutes_with_all(self, v: Sequence[int]) -> bool:
        """Is the monomial x^v central?"""
        return all(sum(row[b] * v[b] for b in range(self.size)) == 0 for row in self.exponents)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "exponents": [list(r) for r in self.exponents]}


def torus_center(t: QuantumTorusPresentation) -> IntLattice:
    if t.size == 0:
        return IntLattice.zero(0)
    return kernel_lattice([list(r) for r in t.exponents], t.size)


def _om(datum: CartanDatum, i: int) -> Weight:
    return datum.omega(i)


def build_Lw(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> tuple[QuantumTorusPresentation, list[list[str]]]:
    """L_w on c+_{w+, w_i} (i in S) and c-_{w-, w_j} (all j).

    The mixed exponent is -<w+ w_i, w- w_j> + <w_i, w_j>; the second list
    returns the raw -<w+ w_i, w- w_j> values for audit.
    """
    s, _ = pair_support(datum, wp, wm)
    S = sorted(s)
    r = datum.rank
    labels = [f"c+[w{i}]" for i in S] + [f"c-[w{j}]" for j in range(1, r + 1)]
    n = len(labels)
    m = [[0] * n for _ in range(n)]
    raw = []
    for a, i in enumerate(S):
        row = []
        for j in range(1, r + 1):
            b = len(S) + j - 1
            disp = -pairing(datum, wp.act(_om(datum, i)), wm.act(_om(datum, j)))
            row.append(str(disp))
            val = _int(disp + pairing(datum, _om(datum, i), _om(datum, j)), "L_w")
            m[a][b] = val
            m[b][a] = -val
        raw.append(row)
    return QuantumTorusPresentation(tuple(labels), tuple(tuple(x) for x in m)), raw


def build_N(datum: CartanDatum, w: WeylElement, sign: int = 1, full: bool = False) -> QuantumTorusPresentation:
    """d_{w_i} d_{w_j} = q^{+-(<w w_i, w_j> - <w_i, w w_j>)} d_{w_j} d_{w_i}."""
    s, _ = support_sets(datum, w)
    idx = list(range(1, datum.rank + 1)) if full else sorted(s)
    sg = 1 if sign > 0 else -1
    m = []
    for i in idx:
        row = []
        for j in idx:
            e = pairing(datum, w.act(_om(datum, i)), _om(datum, j)) - pairing(datum, _om(datum, i), w.act(_om(datum, j)))
            row.append(sg * _int(e, "N"))
        m.append(tuple(row))
    return QuantumTorusPresentation(tuple(f"d[w{i}]" for i in idx), tuple(m))


def build_Nprime(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> QuantumTorusPresentation:
    """y_{w_i} y_{w_j} = q^{<w- w_i, w+ w_j> - <w+ w_i, w- w_j>} y_{w_j} y_{w_i}, i, j in S."""
    s, _ = pair_support(datum, wp, wm)
    idx = sorted(s)
    m = []
    for i in idx:
        row = []
        for j in idx:
            oi, oj = _om(datum, i), _om(datum, j)
            e = pairing(datum, wm.act(oi), wp.act(oj)) - pairing(datum, wp.act(oi), wm.act(oj))
            row.append(_int(e, "N'"))
        m.append(tuple(row))
    return QuantumTorusPresentation(tuple(f"y[w{i}]" for i in idx), tuple(m))


def _character(datum: CartanDatum, S: list[int], v: Sequence[int]) -> tuple[int, ...]:
    """Torus weight of the L_w monomial with exponent vector v (c+ -> w_i, c- -> -w_j)."""
    out = [0] * datum.rank
    for a, i in enumerate(S):
        out[i - 1] += v[a]
    for j in range(datum.rank):
        out[j] -= v[len(S) + j]
    return tuple(out)


def theorem1_generators(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> dict:
    """Center generators c+_{w+,w_i} (i in I) and a_j = c+_{lam_j} (c-_{lam_j})^{-1}, with checks."""
    s, i_set = pair_support(datum, wp, wm)
    S, I = sorted(s), sorted(i_set)
    r = datum.rank
    torus, raw = build_Lw(datum, wp, wm)
    n = torus.size
    lred = ltilde_red(datum, wp, wm)
    lt = ltilde(datum, wp, wm)
    gens = []
    for i in I:
        v = [0] * n
        v[len(S) + i - 1] = -1  # y_{w_i} = 1 identifies c+_{w_i} with (c-_{w_i})^{-1}
        gens.append({"name": f"c+[w{i}]", "weight": list(datum.omega(i)), "exponents": v})
    for j, lam in enumerate(lred.weights(), 1):
        v = [0] * n
        for a, k in enumerate(S):
            v[a] += lam[k - 1]
        for k in range(r):
            v[len(S) + k] -= lam[k]
        plus, minus = split_pm(lam)
        gens.append(
            {
                "name": f"a{j}",
                "lambda": list(lam),
                "lambda_plus": list(plus),
                "lambda_minus": list(minus),
                "weight": list(lam),
                "exponents": v,
            }
        )
    for g in gens:
        g["central"] = torus.commutes_with_all(g["exponents"])
        g["character"] = list(_character(datum, S, g["exponents"]))
    dim_q = r - rational_rank([[x - y for x, y in zip(a, b)] for a, b in zip(wp.matrix, wm.matrix)])
    L = big_L(datum, wp, wm)
    span = IntLattice.span(r, [g["character"] for g in gens]) if gens else IntLattice.zero(r)
    two_lt = lt.scale(2)
    index = L.index_of(two_lt) if L.contains_lattice(two_lt) else None
    checks = {
        "generators-central": all(g["central"] for g in gens),
        "dimension": len(gens) == dim_q,
        "lattice-equals-L": span == L,
        "index-2^|I|": index == 2 ** len(I),
        "ltilde-splits": lt == lred + coordinate_lattice(r, I) and lred.rank == lt.rank - len(I),
    }
    return {
        "S": S,
        "I": I,
        "k": lred.rank,
        "dimension": dim_q,
        "generators": gens,
        "torus": torus.to_json(),
        "raw_mixed": raw,
        "index": index,
        "checks": checks,
    }


def stabilizer(datum: CartanDatum, wp: WeylElement, wm: WeylElement, L: IntLattice | None = None) -> dict:
    """{t in T^r : t^lam = 1 for lam in L(w)} as finite cyclic factors times a subtorus."""
    if L is None:
        L = big_L(datum, wp, wm)
    full = IntLattice.full(datum.rank)
    divs = full.quotient_divisors(L)
    finite = sorted(d for d in divs if d)
    return {
        "character_lattice": L.to_json(),
        "divisors": finite,
        "torus_rank": datum.rank - L.rank,
        "order": (None if datum.rank - L.rank else _prod(finite)),
        "description": _stab_text(finite, datum.rank - L.rank),
    }


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _stab_text(divs: list[int], torus: int) -> str:
    parts = [f"mu_{d}" for d in divs]
    if torus:
        parts.append(f"(C*)^{torus}")
    return " x ".join(parts) if parts else "trivial"


def leaf_and_ideal_report(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> dict:
    s, i_set = pair_support(datum, wp, wm)
    I = sorted(i_set)
    lred = ltilde_red(datum, wp, wm)
    lt = ltilde(datum, wp, wm)
    lams = lred.weights()
    bj = []
    for j, lam in enumerate(lams, 1):
        plus, minus = split_pm(lam)
        bj.append(
            {
                "lambda": list(lam),
                "lambda_plus": list(plus),
                "lambda_minus": list(minus),
                "b": f"b{j}(z{j}) = c+[{plus.label()}] c-[{minus.label()}] - z{j} c+[{minus.label()}] c-[{plus.label()}]",
            }
        )
    equations = [f"~a{j} = z{j}" for j in range(1, len(lams) + 1)]
    equations += [f"~c+[w{i}] = t{i}" for i in I]
    ideal = [f"a{j} - z{j}" for j in range(1, len(lams) + 1)] + [f"c+[w{i}] - t{i}" for i in I]
    return {
        "k": lred.rank,
        "I_count": len(I),
        "parameters": [f"z{j}" for j in range(1, len(lams) + 1)] + [f"t{i}" for i in I],
        "b": bj,
        "equations": equations,
        "ideal_generators": ideal,
        "Tw": {"lattice": lt.to_json(), "dimension": datum.rank - lt.rank},
    }


def max_spectrum_report(datum: CartanDatum) -> dict:
    r = datum.rank
    params = [f"p{i}" for i in range(1, r + 1)]
    gens = " + ".join(f"(c+[1,w{i}] - p{i})R" for i in range(1, r + 1))
    return {
        "datum": datum.name,
        "parameters": params,
        "statement": f"Max R_q[G] = Prim_(1,1) R_q[G], parametrized by (p1..p{r}) in (C*)^{r}",
        "ideal": f"I_(1,1) + {gens}",
        "finite_codimension": True,
    }


def stratification_summary(datum: CartanDatum) -> dict:
    rows = []
    for wp in datum.weyl_group:
        for wm in datum.weyl_group:
            s, i_set = pair_support(datum, wp, wm)
            dim = datum.rank - rational_rank([[x - y for x, y in zip(a, b)] for a, b in zip(wp.matrix, wm.matrix)])
            rows.append(
                {
                    "w_plus": wp.word_str(),
                    "w_minus": wm.word_str(),
                    "l_plus": wp.length,
                    "l_minus": wm.length,
                    "S": sorted(s),
                    "I": sorted(i_set),
                    "dimension": dim,
                    "k": dim - len(i_set),
                }
            )
    return {"datum": datum.name, "strata": len(rows), "rows": rows, "total_dimension": sum(r["dimension"] for r in rows)}


def pair_report(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> dict:
    """The per-pair JSON report."""
    t1 = theorem1_generators(datum, wp, wm)
    L = big_L(datum, wp, wm)
    stab = stabilizer(datum, wp, wm, L)
    again = stabilizer(datum, wp, wm, IntLattice.span(datum.rank, L.basis))
    leaf = leaf_and_ideal_report(datum, wp, wm)
    nprime = build_Nprime(datum, wp, wm)
    checks = {name: ("pass" if ok else "fail") for name, ok in t1["checks"].items()}
    checks["stabilizer-from-L"] = "pass" if again == stab else "fail"
    checks["leaf-parameter-count"] = "pass" if len(leaf["parameters"]) == t1["dimension"] else "fail"
    return {
        "datum": datum.name,
        "w_plus": wp.word_str(),
        "w_minus": wm.word_str(),
        "S": t1["S"],
        "I": t1["I"],
        "lattices": {
            "ltilde": ltilde(datum, wp, wm).to_json(),
            "ltilde_red": ltilde_red(datum, wp, wm).to_json(),
            "L": L.to_json(),
        },
        "center_dimension": t1["dimension"],
        "center_generators": [
            {k: g[k] for k in ("name", "weight", "exponents", "character", "central") if k in g} for g in t1["generators"]
        ],
        "torus_Lw": dict(t1["torus"], raw_mixed=t1["raw_mixed"]),
        "torus_Nprime": nprime.to_json(),
        "stabilizer": stab,
        "leaf": leaf,
        "checks": checks,
    }
