"""Normal, central and prime elements of U^w, and separation of variables.

Normality is searched in q-power form: u X_j = q^{c_j} X_j u for every root
vector X_j.  A normal element of degree -(w-1)lam (lam dominant on S(w)) has
highest PBW term of multidegree n_k = <lam, alpha_{i_k}^vee>, and comparing
highest terms on both sides gives

    c_j = sum_{i<j} n_i <b_i, b_j> - sum_{i>j} n_i <b_i, b_j> = <(w+1) lam, b_j>.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .lattices import kappa_lattice, split_pm
from .ncengine import PBWContext, PBWVector, _add_into
from .qarith import ONE, ZERO, RatFunc, kernel_basis, matrix_rank, qpow, row_reduce
from .rootsys import CartanDatum, Weight, WeylElement, pairing, support_sets

__all__ = [
    "NormalFinding",
    "DeltaSet",
    "exponent_law",
    "lead_multidegree",
    "predicted_normal_degrees",
    "find_normal",
    "classify_normals",
    "find_central",
    "delta_decompose",
    "separation_check",
    "j1_generators",
]


@dataclass
class NormalFinding:
    """Normal elements of one degree, grouped by exponent vector."""

    degree: tuple[int, ...]
    lines: list[tuple[tuple[int, ...], list[PBWVector]]]
    predicted_eta: list[Weight] = field(default_factory=list)
    bound: int = 0

    @property
    def dimension(self) -> int:
        return sum(len(b) for _, b in self.lines)

    def exponent_vectors(self) -> list[tuple[int, ...]]:
        return [c for c, _ in self.lines]

    def to_json(self) -> dict:
        return {
            "degree": list(self.degree),
            "dimension": self.dimension,
            "bound": self.bound,
            "predicted_eta": [list(e) for e in self.predicted_eta],
            "lines": [{"exponents": list(c), "basis": [v.to_json() for v in b]} for c, b in self.lines],
        }


def _weight_of_root(datum: CartanDatum, beta: Sequence[int]) -> Weight:
    return datum.root_to_weight(beta)


def exponent_law(ctx: PBWContext, lam: Weight) -> tuple[int, ...]:
    """c_j = <(w+1) lam, b_j> for the normal element attached to lam."""
    d = ctx.datum
    v = ctx.w.act(lam) + lam
    out = []
    for b in ctx.betas:
        x = pairing(d, v, _weight_of_root(d, b))
        if x.denominator != 1:
            raise AssertionError("non-integral exponent")
        out.append(int(x))
    return tuple(out)


def highest_term_exponents(ctx: PBWContext, n: Sequence[int]) -> tuple[int, ...]:
    """Exponents forced on a normal element whose highest PBW term is X^n."""
    out = []
    for j in range(ctx.l):
        s = 0
        for i in range(ctx.l):
            if n[i] and i != j:
                p = ctx.pair(i + 1, j + 1)
                s += n[i] * p if i < j else -n[i] * p
        out.append(s)
    return tuple(out)


def lead_multidegree(ctx: PBWContext, lam: Weight) -> tuple[int, ...]:
    """(<lam, alpha_{i_1}^vee>, ..., <lam, alpha_{i_l}^vee>)."""
    return tuple(lam[i - 1] for i in ctx.word)


def normal_degree(datum: CartanDatum, w: WeylElement, lam: Weight) -> tuple[int, ...]:
    """-(w-1)lam in alpha coordinates."""
    return datum.weight_to_root(lam - w.act(lam))


def predicted_normal_degrees(datum: CartanDatum, w: WeylElement, height: int) -> dict[tuple[int, ...], list[Weight]]:
    """{-(w-1)lam : lam in P^+_S}, truncated by height, listing the lam's per degree."""
    s, _ = support_sets(datum, w)
    idx = sorted(s)
    hts = {i: sum(normal_degree(datum, w, datum.omega(i))) for i in idx}
    out: dict[tuple[int, ...], list[Weight]] = {(0,) * datum.rank: [datum.zero()]}
    ranges = [range(height // hts[i] + 1) for i in idx]
    for coeffs in product(*ranges):
        if not any(coeffs) or sum(c * hts[i] for c, i in zip(coeffs, idx)) > height:
            continue
        lam = datum.zero()
        for c, i in zip(coeffs, idx):
            lam = lam + datum.omega(i) * c
        out.setdefault(normal_degree(datum, w, lam), []).append(lam)
    return out


# -- linear search ---------------------------------------------------------------


def _commutator_rows(ctx: PBWContext, gamma: tuple[int, ...], j: int):
    """Word-coordinate matrices of u -> u X_j and u -> X_j u on the piece of degree gamma."""
    ns, _, _ = ctx.piece(gamma)
    xj = ctx.root_vectors[j]
    right = [ctx.hmul(ctx.monomial(n), xj) for n in ns]
    left = [ctx.hmul(xj, ctx.monomial(n)) for n in ns]
    words = sorted({w for col in right + left for w in col})
    idx = {w: i for i, w in enumerate(words)}
    A = [[ZERO] * len(ns) for _ in words]
    B = [[ZERO] * len(ns) for _ in words]
    for c, col in enumerate(right):
        for w, v in col.items():
            A[idx[w]][c] = v
    for c, col in enumerate(left):
        for w, v in col.items():
            B[idx[w]][c] = v
    return A, B


def _restrict(A, B, qc: RatFunc, basis: list[list[RatFunc]]) -> list[list[RatFunc]]:
    """Sub-basis of span(basis) killed by A - q^c B."""
    if not basis:
        return []
    rows = []
    for ra, rb in zip(A, B):
        row_full = [a - qc * b if b else a for a, b in zip(ra, rb)]
        rows.append([sum((x * v[k] for k, x in enumerate(row_full) if x and v[k]), ZERO) for v in basis])
    kern = kernel_basis(rows, len(basis))
    out = []
    for kv in kern:
        vec = [ZERO] * len(basis[0])
        for coef, v in zip(kv, basis):
            if coef:
                vec = [a + coef * b if b else a for a, b in zip(vec, v)]
        out.append(vec)
    return out


def _normalize(ctx: PBWContext, ns, vec: list[RatFunc]) -> PBWVector:
    v = PBWVector(ctx, {n: c for n, c in zip(ns, vec) if c})
    low = v.lowest()
    return v.scaled(low[1].inverse()) if low else v


def _span_basis(vectors: list[list[RatFunc]], ncols: int) -> list[list[RatFunc]]:
    red, _ = row_reduce(vectors, ncols)
    return red


def find_normal(
    ctx: PBWContext,
    gamma: Sequence[int],
    bound: int | None = None,
    margin: int = 2,
    only: Sequence[int] | None = None,
) -> NormalFinding:
    """All (exponent vector, basis) with u X_j = q^{c_j} X_j u, |c_j| <= bound.

    When ``only`` is given, only that exponent vector is tried (used for the center).
    """
    gamma = tuple(gamma)
    datum = ctx.datum
    ns, _, _ = ctx.piece(gamma) if any(gamma) else ([(0,) * ctx.l], None, None)
    pred = predicted_normal_degrees(datum, ctx.w, sum(gamma)).get(gamma, [])
    if not any(gamma):
        return NormalFinding(gamma, [((0,) * ctx.l, [ctx.unit((0,) * ctx.l)])], pred, 0)
    if not ns:
        return NormalFinding(gamma, [], pred, 0)
    if bound is None:
        cand = [abs(c) for lam in pred for c in exponent_law(ctx, lam)]
        cand += [abs(c) for n in ns for c in highest_term_exponents(ctx, n)]
        bound = max(cand, default=0) + margin
    mats = [_commutator_rows(ctx, gamma, j) for j in range(ctx.l)]
    ident = [[ONE if a == b else ZERO for b in range(len(ns))] for a in range(len(ns))]
    states: list[tuple[tuple[int, ...], list[list[RatFunc]]]] = [((), ident)]
    for j in range(ctx.l):
        A, B = mats[j]
        nxt = []
        for cs, basis in states:
            choices = [only[j]] if only is not None else range(-bound, bound + 1)
            for c in choices:
                sub = _restrict(A, B, qpow(c), basis)
                if sub:
                    nxt.append((cs + (c,), sub))
        states = nxt
        if not states:
            break
    lines = []
    for cs, basis in sorted(states):
        red = _span_basis(basis, len(ns))
        lines.append((cs, [_normalize(ctx, ns, v) for v in red]))
    return NormalFinding(gamma, lines, pred, bound)


# -- classification ----------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    instances: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def fail(self, payload: dict) -> None:
        self.passed = False
        self.failures.append(payload)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "instances": self.instances,
            "failures": self.failures,
            "notes": self.notes,
        }


def _proportional(x: dict, y: dict) -> bool:
    if not x or not y or set(x) != set(y):
        return False
    k = next(iter(x))
    r = x[k] / y[k]
    return all(x[w] == r * y[w] for w in x)


def classify_normals(ctx: PBWContext, height: int, margin: int = 2) -> tuple[CheckReport, dict]:
    """Per-degree normal dimensions against the prediction, exponent law, prime generators.

    Returns the report and the map lam -> normalized d-element (as a half-algebra dict).
    """
    datum, w = ctx.datum, ctx.w
    rep = CheckReport(f"normal-classification[{datum.name} {','.join(map(str, ctx.word)) or 'e'}]")
    pred = predicted_normal_degrees(datum, w, height)
    s, _ = support_sets(datum, w)
    d_elems: dict[Weight, dict] = {}
    degrees = [(0,) * datum.rank] + ctx.degrees_up_to(height)
    for gamma in degrees:
        found = find_normal(ctx, gamma, margin=margin)
        lams = pred.get(gamma, [])
        rep.instances += 1
        expected = {exponent_law(ctx, lam): lam for lam in lams}
        got = {c: b for c, b in found.lines}
        if len(lams) > 1:
            rep.notes.append({"degree": list(gamma), "multiplicity": len(lams), "lams": [list(l) for l in lams]})
        if set(got) != set(expected) or any(len(b) != 1 for b in got.values()):
            rep.fail(
                {
                    "degree": list(gamma),
                    "expected": {",".join(map(str, c)): list(l) for c, l in expected.items()},
                    "found": found.to_json(),
                }
            )
            continue
        for c, lam in expected.items():
            d_elems[lam] = ctx.to_half(got[c][0])
    # products of prime generators
    prim = {i: d_elems.get(datum.omega(i)) for i in sorted(s)}
    for lam, half in d_elems.items():
        if sum(lam) <= 1:
            continue
        prod = {(): ONE}
        for i in sorted(s):
            for _ in range(lam[i - 1]):
                if prim[i] is None:
                    prod = None
                    break
                prod = ctx.hmul(prod, prim[i])
            if prod is None:
                break
        if prod is None:
            continue
        if not _proportional(half, prod):
            rep.fail({"check": "prime-product", "lam": list(lam)})
    # q-commutation of the prime generators
    for i in sorted(s):
        for j in sorted(s):
            if i >= j or prim[i] is None or prim[j] is None:
                continue
            e = pairing(datum, w.act(datum.omega(i)), datum.omega(j)) - pairing(datum, datum.omega(i), w.act(datum.omega(j)))
            lhs = ctx.hmul(prim[i], prim[j])
            rhs = ctx.hmul(prim[j], prim[i])
            if e.denominator != 1:
                rep.fail({"check": "dij-integrality", "i": i, "j": j})
                continue
            diff = dict(lhs)
            for wd, c in rhs.items():
                _add_into(diff, wd, -qpow(int(e)) * c)
            if diff:
                rep.fail({"check": "dij", "i": i, "j": j, "exponent": int(e)})
    return rep, d_elems


def find_central(ctx: PBWContext, height: int) -> tuple[CheckReport, list[tuple[tuple[int, ...], list[PBWVector]]]]:
    datum, w = ctx.datum, ctx.w
    rep = CheckReport(f"center[{datum.name} {','.join(map(str, ctx.word)) or 'e'}]")
    s, _ = support_sets(datum, w)
    kap = kappa_lattice(datum, w)
    pred = predicted_normal_degrees(datum, w, height)
    expected = {}
    for gamma, lams in pred.items():
        cnt = sum(1 for lam in lams if tuple(lam) in kap)
        if cnt:
            expected[gamma] = cnt
    out = []
    for gamma in [(0,) * datum.rank] + ctx.degrees_up_to(height):
        rep.instances += 1
        f = find_normal(ctx, gamma, only=(0,) * ctx.l)
        dim = f.dimension
        if dim:
            out.append((gamma, [v for _, b in f.lines for v in b]))
        if dim != expected.get(gamma, 0):
            rep.fail({"degree": list(gamma), "found": dim, "expected": expected.get(gamma, 0)})
    return rep, out


# -- separation of variables -------------------------------------------------------


@dataclass(frozen=True)
class DeltaSet:
    word: tuple[int, ...]

    @property
    def letters(self) -> list[int]:
        return sorted(set(self.word))

    def supp(self, j: int) -> list[int]:
        """0-based positions k with i_k = j."""
        return [k for k, i in enumerate(self.word) if i == j]

    def e(self, j: int) -> tuple[int, ...]:
        pos = set(self.supp(j))
        return tuple(int(k in pos) for k in range(len(self.word)))

    def __contains__(self, n: Sequence[int]) -> bool:
        return all(any(n[k] == 0 for k in self.supp(j)) for j in self.letters)


def delta_decompose(word: Sequence[int], n: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """n = sigma + delta with sigma in sum N e_j and delta in Delta."""
    ds = DeltaSet(tuple(word))
    sigma = [0] * len(word)
    for j in ds.letters:
        m = min(n[k] for k in ds.supp(j))
        for k in ds.supp(j):
            sigma[k] += m
    delta = tuple(a - b for a, b in zip(n, sigma))
    return tuple(sigma), delta


def separation_check(ctx: PBWContext, height: int, d_elems: dict) -> CheckReport:
    """Products X^delta * d_lam over each graded piece form a basis; leading-degree law."""
    datum = ctx.datum
    rep = CheckReport(f"separation[{datum.name} {','.join(map(str, ctx.word)) or 'e'}]")
    ds = DeltaSet(ctx.word)
    for lam, half in d_elems.items():
        v = ctx.express(half) if half != {(): ONE} else ctx.unit((0,) * ctx.l)
        lead = v.highest()[0]
        if lead != lead_multidegree(ctx, lam):
            rep.fail({"check": "lead", "lam": list(lam), "lead": list(lead), "expected": list(lead_multidegree(ctx, lam))})
    for gamma in ctx.degrees_up_to(height):
        rep.instances += 1
        ns, words, _ = ctx.piece(gamma)
        idx = {wd: i for i, wd in enumerate(words)}
        cols = []
        labels = []
        for n in ns:
            sigma, delta = delta_decompose(ctx.word, n)
            lam = datum.zero()
            for j in ds.letters:
                lam = lam + datum.omega(j) * min(n[k] for k in ds.supp(j))
            if lam not in d_elems:
                rep.fail({"degree": list(gamma), "missing_normal": list(lam)})
                continue
            cols.append(ctx.hmul(ctx.monomial(delta), d_elems[lam]))
            labels.append((delta, tuple(lam)))
        rows = [[ZERO] * len(cols) for _ in words]
        for c, col in enumerate(cols):
            for wd, v in col.items():
                rows[idx[wd]][c] = v
        rank = matrix_rank(rows, len(cols)) if cols else 0
        dim = matrix_rank(ctx.piece(gamma)[2], len(ns)) if ns else 0
        if len(cols) != len(ns) or rank != dim or dim != len(ns):
            rep.fail({"degree": list(gamma), "products": len(cols), "rank": rank, "dim": dim})
    return rep


# -- J_{w,1} generators --------------------------------------------------------------


def lo_exponent(datum: CartanDatum, basis: list[Weight], lam: Weight, k: Sequence[int], sign: int = 1) -> Fraction:
    """n^pm_{lam, lam'} for lam' - lam = sum k_i mu^(i)."""
    s = Fraction(0)
    m = len(basis)
    for i in range(m):
        s -= 2 * k[i] * pairing(datum, basis[i], lam)
        for j in range(i):
            s -= 2 * k[i] * k[j] * pairing(datum, basis[j], basis[i])
        s -= abs(k[i]) * (abs(k[i]) - 1) * pairing(datum, basis[i], basis[i])
        if k[i]:
            plus, minus = split_pm(basis[i])
            part = minus if k[i] > 0 else plus
            s += 2 * k[i] * pairing(datum, basis[i], part)
    return s * sign


def j1_generators(datum: CartanDatum, w: WeylElement, sign: int = 1) -> dict:
    kap = kappa_lattice(datum, w)
    basis = kap.weights()
    gens = []
    for i, mu in enumerate(basis):
        plus, minus = split_pm(mu)
        k = [int(t == i) for t in range(len(basis))]
        n = lo_exponent(datum, basis, minus, k, sign)
        gens.append(
            {
                "mu": list(mu),
                "mu_plus": list(plus),
                "mu_minus": list(minus),
                "n": str(n),
                "generator": f"d[{minus.label()}] - q^({n})*d[{plus.label()}]",
            }
        )
    disjoint = all(b.is_dominant() for b in basis) and all(
        not (basis[a].support & basis[b].support) for a in range(len(basis)) for b in range(a)
    )
    out = {"K_basis": [list(b) for b in basis], "generators": gens, "simplified": None}
    if disjoint:
        out["simplified"] = [f"1 - d[{b.label()}]" for b in basis]
    return out
