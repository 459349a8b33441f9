"""Noncommutative core: U_q(g) in triangular normal form, braid action, PBW bases.

Elements of U_q(g) are stored as dicts ``(fword, kvec, eword) -> RatFunc``
where fword/eword are tuples of 1-based generator indices (already reduced
modulo the Serre relations) and kvec is the exponent vector of K_1..K_r.
The Serre ideal of U_+ is handled by a degree-truncated noncommutative
Groebner basis (Bergman/Buchberger completion); U_- uses the same rules on
F-letters.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .qarith import ONE, ZERO, LaurentPoly, RatFunc, qbinom, qfact, qpow, solve_linear
from .rootsys import CartanDatum, inversion_roots, root_pairing, word_to_element

__all__ = [
    "CapOverflow",
    "NotInSubalgebra",
    "NCPoly",
    "RewriteSystem",
    "QuantumGroup",
    "quantum_group",
    "PBWContext",
    "PBWVector",
    "E",
    "F",
    "K",
    "normal_form",
    "braid_T",
    "braid_word",
    "build_context",
    "express_in_pbw",
    "pbw_multiply",
    "ls_relation",
    "lex_key",
]

Word = tuple[int, ...]
Half = dict  # Word -> RatFunc
Key = tuple  # (fword, kvec, eword)


class CapOverflow(ArithmeticError):
    """A word exceeded the configured degree cap."""


class NotInSubalgebra(ValueError):
    """Element has no PBW expansion in the requested context."""


# -- free-algebra polynomials -------------------------------------------------

Letter = tuple  # (kind, index, power): ("E", i, 1), ("F", i, 1), ("K", i, e)


def _letter_str(l: Letter) -> str:
    kind, i, p = l
    if kind == "K" and p != 1:
        return f"K{i}^{p}"
    return f"{kind}{i}"


class NCPoly:
    """Element of the free algebra on E_i, F_i, K_i^{+-1} with coefficients in Q(q)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        out: dict[tuple, RatFunc] = {}
        for w, c in (terms or {}).items():
            c = RatFunc.coerce(c)
            if c:
                out[tuple(w)] = out.get(tuple(w), ZERO) + c
        self.terms = {w: c for w, c in out.items() if c}

    @classmethod
    def scalar(cls, c) -> "NCPoly":
        return cls({(): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, RatFunc, LaurentPoly)):
            other = NCPoly.scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, ZERO) + c
        return NCPoly(t)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "NCPoly":
        return NCPoly.scalar(other) - self

    def __mul__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            c = RatFunc.coerce(other)
            return NCPoly({w: x * c for w, x in self.terms.items()})
        out: dict[tuple, RatFunc] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return NCPoly(out)

    def __rmul__(self, other) -> "NCPoly":
        c = RatFunc.coerce(other)
        return NCPoly({w: c * x for w, x in self.terms.items()})

    def __pow__(self, n: int) -> "NCPoly":
        out = NCPoly.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def degree(self, rank: int) -> tuple[int, ...] | None:
        """Q-degree in alpha coordinates if homogeneous, else None."""
        degs = set()
        for w in self.terms:
            d = [0] * rank
            for kind, i, _ in w:
                if kind == "E":
                    d[i - 1] += 1
                elif kind == "F":
                    d[i - 1] -= 1
            degs.add(tuple(d))
        if len(degs) > 1:
            return None
        return degs.pop() if degs else (0,) * rank

    def generator_degree(self) -> int:
        return max((sum(1 for l in w if l[0] != "K") for w in self.terms), default=0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: _word_sort_key(t[0])):
            mono = "*".join(_letter_str(l) for l in w)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            elif c.is_laurent() and len(c.as_laurent().terms) == 1:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    __repr__ = __str__


def _word_sort_key(w: tuple):
    order = {"F": 0, "K": 1, "E": 2}
    return (len([l for l in w if l[0] != "K"]), [(order[k], i, p) for k, i, p in w])


def E(i: int) -> NCPoly:
    return NCPoly({(("E", i, 1),): 1})


def F(i: int) -> NCPoly:
    return NCPoly({(("F", i, 1),): 1})


def K(i: int, p: int = 1) -> NCPoly:
    return NCPoly({(("K", i, p),): 1})


# -- Groebner basis of the Serre ideal ----------------------------------------


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    if v is None:
        if c:
            acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


class RewriteSystem:
    """Degree-truncated Groebner basis for the Serre ideal of U_+.

    Words are tuples of letter indices; the order is length first, then
    lexicographic with 1 < 2 < ... < r.  Completion is lazy: ``ensure(d)``
    processes every critical pair of degree <= d.
    """

    def __init__(self, datum: CartanDatum, cap: int = 12):
        self.datum = datum
        self.cap = cap
        self.rules: dict[Word, Half] = {}
        self.complete_degree = 0
        self._queue: list = []
        self._tick = itertools.count()
        self._memo: dict[Word, Half] = {}
        self._lens: set[int] = set()
        for i in range(1, datum.rank + 1):
            for j in range(1, datum.rank + 1):
                if i != j:
                    rel = self.serre(i, j)
                    self._push(rel)

    def serre(self, i: int, j: int) -> Half:
        d = self.datum
        n = 1 - d.c(i, j)
        out: Half = {}
        for k in range(n + 1):
            c = RatFunc.from_laurent(qbinom(n, k, d.d(i)) * (-1) ** k)
            _add_into(out, (i,) * k + (j,) + (i,) * (n - k), c)
        return out

    def _push(self, poly: Half) -> None:
        if poly:
            deg = len(next(iter(poly)))
            heapq.heappush(self._queue, (deg, next(self._tick), poly))

    def ensure(self, d: int) -> None:
        if d <= self.complete_degree:
            return
        if d > self.cap:
            raise CapOverflow(f"degree {d} exceeds cap {self.cap}")
        while self._queue and self._queue[0][0] <= d:
            deg, _, poly = heapq.heappop(self._queue)
            # everything shorter than deg is already final
            self.complete_degree = max(self.complete_degree, deg - 1)
            red = self._reduce_poly(poly)
            if red:
                self._add_rule(red)
        self.complete_degree = d

    def _add_rule(self, poly: Half) -> None:
        lead = max(poly)
        inv = poly[lead].inverse()
        rhs = {w: -c * inv for w, c in poly.items() if w != lead}
        self.rules[lead] = rhs
        self._lens.add(len(lead))
        self._memo = {w: v for w, v in self._memo.items() if len(w) < len(lead)}
        # overlaps with every rule, in both orders (self-overlaps included)
        for other in list(self.rules):
            for u, v in ((lead, other), (other, lead)) if other != lead else ((lead, lead),):
                for k in range(1, min(len(u), len(v))):
                    if u[-k:] == v[:k]:
                        self._push(self._spoly(u, v, k))

    def _spoly(self, u: Word, v: Word, k: int) -> Half:
        out: Half = {}
        tail = v[k:]
        head = u[: len(u) - k]
        for w, c in self.rules[u].items():
            _add_into(out, w + tail, -c)
        for w, c in self.rules[v].items():
            _add_into(out, head + w, c)
        return out

    def _find(self, w: Word) -> tuple[int, Word] | None:
        for L in self._lens:
            if L > len(w):
                continue
            for p in range(len(w) - L + 1):
                if w[p : p + L] in self.rules:
                    return p, w[p : p + L]
        return None

    def _nf_word(self, w: Word) -> Half:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        f = self._find(w)
        if f is None:
            out = {w: ONE}
        else:
            p, lhs = f
            pre, post = w[:p], w[p + len(lhs) :]
            out = {}
            for m, c in self.rules[lhs].items():
                for x, cx in self._nf_word(pre + m + post).items():
                    _add_into(out, x, c * cx)
        self._memo[w] = out
        return out

    def _reduce_poly(self, poly: Half) -> Half:
        out: Half = {}
        for w, c in poly.items():
            for x, cx in self._nf_word(w).items():
                _add_into(out, x, c * cx)
        return out

    # public -----------------------------------------------------------------
    def nf_word(self, w: Word) -> Half:
        if len(w) > self.cap:
            raise CapOverflow(f"word of length {len(w)} exceeds cap {self.cap}")
        self.ensure(len(w))
        return self._nf_word(w)

    def reduce(self, poly: Mapping[Word, RatFunc]) -> Half:
        out: Half = {}
        for w, c in poly.items():
            for x, cx in self.nf_word(w).items():
                _add_into(out, x, c * cx)
        return out

    def is_standard(self, w: Word) -> bool:
        self.ensure(len(w))
        return self._find(w) is None

    def standard_words(self, counts: Sequence[int]) -> list[Word]:
        """Irreducible words with the given letter multiplicities, in increasing order."""
        n = sum(counts)
        self.ensure(n)
        out: list[Word] = []
        left = list(counts)

        def rec(prefix: tuple):
            if len(prefix) == n:
                out.append(prefix)
                return
            for i in range(len(left)):
                if left[i]:
                    w = prefix + (i + 1,)
                    if any(w[-L:] in self.rules for L in self._lens if L <= len(w)):
                        continue
                    left[i] -= 1
                    rec(w)
                    left[i] += 1

        rec(())
        return out

    def check_confluence(self, d: int) -> bool:
        """Every critical pair of degree <= d reduces to zero."""
        self.ensure(d)
        for u in self.rules:
            for v in self.rules:
                for k in range(1, min(len(u), len(v))):
                    if u[-k:] == v[:k] and len(u) + len(v) - k <= d:
                        if self._reduce_poly(self._spoly(u, v, k)):
                            return False
        return True


# -- the full algebra ------------------------------------------------------------


def _sum_into(acc: dict, other: Mapping, scale: RatFunc | None = None) -> None:
    for k, c in other.items():
        _add_into(acc, k, c if scale is None else c * scale)


class QuantumGroup:
    """U_q(g) for a Cartan datum, with normal forms cached per instance."""

    def __init__(self, datum: CartanDatum, cap: int = 12):
        self.datum = datum
        self.r = datum.rank
        self.cap = cap
        self.gb = RewriteSystem(datum, cap)
        r = self.r
        # <alpha_i, alpha_j> = d_i c_ij
        self.form = tuple(tuple(datum.d(i + 1) * datum.c(i + 1, j + 1) for j in range(r)) for i in range(r))
        self.zero_k = (0,) * r
        self._ef: dict = {}
        self._braid: dict = {}
        self._qd = [RatFunc.from_laurent(LaurentPoly({datum.d(i): 1, -datum.d(i): -1})).inverse() for i in range(1, r + 1)]

    # degree helpers
    def _kpair(self, kvec: Sequence[int], word: Word) -> int:
        """<sum_i k_i alpha_i, sum of alpha_w over letters of word>."""
        s = 0
        for j in word:
            col = j - 1
            for i, k in enumerate(kvec):
                if k:
                    s += k * self.form[i][col]
        return s

    # --- elements --------------------------------------------------------
    def one(self) -> dict:
        return {((), self.zero_k, ()): ONE}

    def gen(self, kind: str, i: int, p: int = 1) -> dict:
        if kind == "E":
            return {((), self.zero_k, (i,)): ONE}
        if kind == "F":
            return {((i,), self.zero_k, ()): ONE}
        if kind == "K":
            kv = tuple(p if j == i - 1 else 0 for j in range(self.r))
            return {((), kv, ()): ONE}
        raise ValueError(kind)

    def from_half(self, x: Mapping[Word, RatFunc], sign: int = 1) -> dict:
        if sign > 0:
            return {((), self.zero_k, w): c for w, c in x.items()}
        return {(w, self.zero_k, ()): c for w, c in x.items()}

    def to_half(self, x: Mapping[Key, RatFunc], sign: int = 1) -> Half | None:
        out = {}
        for (f, k, e), c in x.items():
            if any(k):
                return None
            if sign > 0 and f:
                return None
            if sign < 0 and e:
                return None
            out[e if sign > 0 else f] = c
        return out

    # --- E-word times F-word ----------------------------------------------
    def _ef_single(self, i: int, f: Word) -> dict:
        out = {(f, self.zero_k, (i,)): ONE}
        for p, j in enumerate(f):
            if j != i:
                continue
            rest = f[p + 1 :]
            a = sum(self.form[i - 1][x - 1] for x in rest)
            newf = f[:p] + rest
            for s in (1, -1):
                kv = tuple(s if t == i - 1 else 0 for t in range(self.r))
                c = self._qd[i - 1] * qpow(-s * a) * s
                _add_into(out, (newf, kv, ()), c)
        return out

    def ef(self, e: Word, f: Word) -> dict:
        """Triangular expansion of E_e * F_f (words not yet Serre-reduced)."""
        if not e or not f:
            return {(f, self.zero_k, e): ONE}
        key = (e, f)
        hit = self._ef.get(key)
        if hit is not None:
            return hit
        inner = self.ef(e[1:], f)
        out: dict = {}
        for (f1, k1, e1), c1 in inner.items():
            for (f2, k2, e2), c2 in self._ef_single(e[0], f1).items():
                # e2 K^{k1} = q^{-<k1, deg e2>} K^{k1} e2
                ex = -self._kpair(k1, e2) if e2 else 0
                kv = tuple(a + b for a, b in zip(k2, k1))
                c = c1 * c2
                if ex:
                    c = c * qpow(ex)
                _add_into(out, (f2, kv, e2 + e1), c)
        self._ef[key] = out
        return out

    # --- multiplication -------------------------------------------------
    def mul_raw(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for (f1, k1, e1), c1 in a.items():
            for (f2, k2, e2), c2 in b.items():
                c12 = c1 * c2
                for (fp, kp, ep), cp in self.ef(e1, f2).items():
                    ex = 0
                    if fp and any(k1):
                        ex -= self._kpair(k1, fp)
                    if ep and any(k2):
                        ex -= self._kpair(k2, ep)
                    c = c12 * cp
                    if ex:
                        c = c * qpow(ex)
                    kv = tuple(x + y + z for x, y, z in zip(k1, kp, k2))
                    _add_into(out, (f1 + fp, kv, ep + e2), c)
        return out

    def reduce(self, x: Mapping) -> dict:
        out: dict = {}
        for (f, k, e), c in x.items():
            nf_f = self.gb.nf_word(f)
            nf_e = self.gb.nf_word(e)
            for fw, cf in nf_f.items():
                cfc = c * cf
                for ew, ce in nf_e.items():
                    _add_into(out, (fw, k, ew), cfc * ce)
        return out

    def mul(self, a: Mapping, b: Mapping) -> dict:
        return self.reduce(self.mul_raw(a, b))

    def add(self, a: Mapping, b: Mapping, scale: RatFunc | None = None) -> dict:
        out = dict(a)
        _sum_into(out, b, scale)
        return out

    def scale(self, a: Mapping, c: RatFunc) -> dict:
        return {k: v * c for k, v in a.items()} if c else {}

    # --- NCPoly conversion ----------------------------------------------
    def from_ncpoly(self, x: NCPoly) -> dict:
        out: dict = {}
        for w, c in x.terms.items():
            if sum(1 for l in w if l[0] != "K") > self.cap:
                raise CapOverflow(f"term of generator-degree > {self.cap}")
            el = self.one()
            for kind, i, p in w:
                if not 1 <= i <= self.r:
                    raise ValueError(f"generator index {i} out of range")
                el = self.mul(el, self.gen(kind, i, p))
            _sum_into(out, el, c)
        return out

    def to_ncpoly(self, x: Mapping) -> NCPoly:
        terms = {}
        for (f, k, e), c in x.items():
            w = tuple(("F", i, 1) for i in f)
            w += tuple(("K", i + 1, p) for i, p in enumerate(k) if p)
            w += tuple(("E", i, 1) for i in e)
            terms[w] = c
        return NCPoly(terms)

    def normal_form(self, x: NCPoly) -> NCPoly:
        return self.to_ncpoly(self.from_ncpoly(x))

    # --- braid action -----------------------------------------------------
    def _divided(self, i: int, n: int) -> RatFunc:
        return RatFunc.from_laurent(qfact(n, self.datum.d(i))).inverse()

    def braid_image(self, i: int, kind: str, j: int, p: int = 1) -> dict:
        key = (i, kind, j, p)
        hit = self._braid.get(key)
        if hit is not None:
            return hit
        d = self.datum
        r = self.r
        di = d.d(i)
        if kind == "K":
            kv = [0] * r
            kv[j - 1] += p
            kv[i - 1] -= p * d.c(i, j)
            out = {((), tuple(kv), ()): ONE}
        elif j == i:
            kv = tuple(1 if t == i - 1 else 0 for t in range(r))
            if kind == "E":  # -F_i K_i
                out = {((i,), kv, ()): -ONE}
            else:  # -K_i^{-1} E_i
                out = {((), tuple(-x for x in kv), (i,)): -ONE}
        else:
            m = -d.c(i, j)
            terms: dict = {}
            for k in range(m + 1):
                c = self._divided(i, m - k) * self._divided(i, k)
                if kind == "E":
                    c = c * qpow(-di * k) * (-1) ** k
                    _add_into(terms, (i,) * (m - k) + (j,) + (i,) * k, c)
                else:
                    c = c * qpow(di * k) * (-1) ** k
                    _add_into(terms, (i,) * k + (j,) + (i,) * (m - k), c)
            out = self.reduce(self.from_half(terms, 1 if kind == "E" else -1))
        self._braid[key] = out
        return out

    def _braid_word(self, i: int, kind: str, w: Word) -> dict:
        key = (i, kind, w)
        hit = self._braid.get(key)
        if hit is not None:
            return hit
        if not w:
            out = self.one()
        else:
            out = self.mul(self._braid_word(i, kind, w[:-1]), self.braid_image(i, kind, w[-1]))
        self._braid[key] = out
        return out

    def braid_T(self, i: int, x: Mapping) -> dict:
        if not 1 <= i <= self.r:
            raise ValueError(f"index {i} out of range")
        out: dict = {}
        for (f, k, e), c in x.items():
            tk = self.one()
            for j, p in enumerate(k):
                if p:
                    tk = self.mul(tk, self.braid_image(i, "K", j + 1, p))
            el = self.mul(self.mul(self._braid_word(i, "F", f), tk), self._braid_word(i, "E", e))
            _sum_into(out, el, c)
        return out

    def braid_word(self, word: Sequence[int], x: Mapping) -> dict:
        """T_{i_1} ... T_{i_n}(x): the last letter acts first."""
        for i in reversed(list(word)):
            x = self.braid_T(i, x)
        return x


# -- module-level conveniences ---------------------------------------------------

_GROUPS: dict = {}


def quantum_group(datum: CartanDatum, cap: int = 12) -> QuantumGroup:
    key = (datum.name, cap)
    g = _GROUPS.get(key)
    if g is None:
        g = _GROUPS[key] = QuantumGroup(datum, cap)
    return g


def normal_form(datum: CartanDatum, x: NCPoly, cap: int = 12) -> NCPoly:
    return quantum_group(datum, cap).normal_form(x)


def braid_T(datum: CartanDatum, i: int, x: NCPoly, cap: int = 12) -> NCPoly:
    g = quantum_group(datum, cap)
    return g.to_ncpoly(g.braid_T(i, g.from_ncpoly(x)))


def braid_word(datum: CartanDatum, word: Sequence[int], x: NCPoly, cap: int = 12) -> NCPoly:
    g = quantum_group(datum, cap)
    return g.to_ncpoly(g.braid_word(word, g.from_ncpoly(x)))


# -- PBW bases -----------------------------------------------------------------------


def lex_key(n: Sequence[int]) -> tuple[int, ...]:
    """Sort key for the PBW order: compare from the last coordinate down."""
    return tuple(reversed(tuple(n)))


@dataclass
class PBWVector:
    ctx: "PBWContext" = field(repr=False)
    coords: dict  # multidegree tuple -> RatFunc

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PBWVector) and self.coords == other.coords

    def highest(self) -> tuple[tuple[int, ...], RatFunc] | None:
        if not self.coords:
            return None
        n = max(self.coords, key=lex_key)
        return n, self.coords[n]

    def lowest(self) -> tuple[tuple[int, ...], RatFunc] | None:
        if not self.coords:
            return None
        n = min(self.coords, key=lex_key)
        return n, self.coords[n]

    def scaled(self, c: RatFunc) -> "PBWVector":
        return PBWVector(self.ctx, {n: v * c for n, v in self.coords.items()} if c else {})

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.coords, key=lex_key)

    def to_json(self) -> dict:
        return {",".join(map(str, n)): str(self.coords[n]) for n in self.support()}

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for n in reversed(self.support()):
            mono = "*".join(
                (f"X{k + 1}" if e == 1 else f"X{k + 1}^{e}") for k, e in reversed(list(enumerate(n))) if e
            ) or "1"
            parts.append(f"({self.coords[n]})*{mono}")
        return " + ".join(parts)


class PBWContext:
    """Root vectors and PBW monomials for a reduced word, sign +1 (E) or -1 (F)."""

    def __init__(self, group: QuantumGroup, word: Sequence[int], sign: int = 1):
        datum = group.datum
        self.group = group
        self.datum = datum
        self.word = tuple(word)
        self.sign = 1 if sign > 0 else -1
        w, red = word_to_element(datum, self.word)
        if not red:
            raise ValueError(f"word {list(word)} is not reduced")
        self.w = w
        self.betas = [tuple(b) for b in inversion_roots(datum, self.word)]
        self.l = len(self.word)
        kind = "E" if self.sign > 0 else "F"
        self.root_vectors: list[Half] = []
        for k, i in enumerate(self.word):
            x = group.braid_word(self.word[:k], group.gen(kind, i))
            half = group.to_half(x, self.sign)
            if half is None:
                raise AssertionError(f"root vector {k + 1} left U_{'+' if self.sign > 0 else '-'}")
            for wd in half:
                if tuple(wd.count(t) for t in range(1, datum.rank + 1)) != self.betas[k]:
                    raise AssertionError(f"root vector {k + 1} is not homogeneous of degree beta_{k + 1}")
            self.root_vectors.append(half)
        self.heights = [sum(b) for b in self.betas]
        self._mono: dict = {(0,) * self.l: {(): ONE}}
        self._piece: dict = {}

    # --- half-algebra arithmetic -----------------------------------------
    def hmul(self, x: Half, y: Half) -> Half:
        out: Half = {}
        gb = self.group.gb
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                c = c1 * c2
                for w, cw in gb.nf_word(w1 + w2).items():
                    _add_into(out, w, c * cw)
        return out

    def monomial(self, n: Sequence[int]) -> Half:
        """(X)^n = X_l^{n_l} ... X_1^{n_1}."""
        n = tuple(n)
        hit = self._mono.get(n)
        if hit is not None:
            return hit
        top = max(k for k in range(self.l) if n[k])
        rest = list(n)
        rest[top] -= 1
        out = self.hmul(self.root_vectors[top], self.monomial(rest))
        self._mono[n] = out
        return out

    def degree_of(self, n: Sequence[int]) -> tuple[int, ...]:
        r = self.datum.rank
        return tuple(sum(n[k] * self.betas[k][i] for k in range(self.l)) for i in range(r))

    def multidegrees(self, gamma: Sequence[int]) -> list[tuple[int, ...]]:
        """All n in N^l with sum n_k beta_k = gamma, in increasing PBW order."""
        gamma = tuple(gamma)
        out = []
        r = self.datum.rank

        def rec(k: int, left: list[int], acc: list[int]):
            if k == self.l:
                if not any(left):
                    out.append(tuple(acc))
                return
            b = self.betas[k]
            m = min((left[i] // b[i] for i in range(r) if b[i]), default=0)
            for e in range(m + 1):
                rec(k + 1, [left[i] - e * b[i] for i in range(r)], acc + [e])

        if all(x >= 0 for x in gamma):
            rec(0, list(gamma), [])
        return sorted(out, key=lex_key)

    def degrees_up_to(self, height: int) -> list[tuple[int, ...]]:
        """Nonzero degrees sum n_k beta_k of height <= height."""
        seen = set()

        def rec(k: int, left: int, acc: tuple):
            if k == self.l:
                seen.add(acc)
                return
            for e in range(left // self.heights[k] + 1):
                rec(k + 1, left - e * self.heights[k], tuple(a + e * b for a, b in zip(acc, self.betas[k])))

        rec(0, height, (0,) * self.datum.rank)
        seen.discard((0,) * self.datum.rank)
        return sorted(seen, key=lambda g: (sum(g), g))

    def piece(self, gamma: Sequence[int]):
        """(multidegrees, standard words, matrix rows=words cols=monomials) for degree gamma."""
        gamma = tuple(gamma)
        hit = self._piece.get(gamma)
        if hit is not None:
            return hit
        ns = self.multidegrees(gamma)
        words = self.group.gb.standard_words(gamma) if ns else []
        idx = {w: i for i, w in enumerate(words)}
        cols = [self.monomial(n) for n in ns]
        mat = [[ZERO] * len(ns) for _ in words]
        for j, col in enumerate(cols):
            for w, c in col.items():
                mat[idx[w]][j] = c
        hit = (ns, words, mat)
        self._piece[gamma] = hit
        return hit

    def half_degree(self, x: Half) -> tuple[int, ...] | None:
        degs = {tuple(w.count(t) for t in range(1, self.datum.rank + 1)) for w in x}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else None

    def express(self, x: Half, gamma: Sequence[int] | None = None) -> PBWVector:
        if not x:
            return PBWVector(self, {})
        deg = self.half_degree(x)
        if deg is None:
            raise ValueError("element is not homogeneous")
        if gamma is not None and tuple(gamma) != deg:
            raise ValueError("degree mismatch")
        ns, words, mat = self.piece(deg)
        idx = {w: i for i, w in enumerate(words)}
        b = [ZERO] * len(words)
        for w, c in x.items():
            if w not in idx:
                raise NotInSubalgebra("element has a non-standard or off-degree word")
            b[idx[w]] = c
        if not ns:
            raise NotInSubalgebra(f"no PBW monomials of degree {deg}")
        sol = solve_linear(mat, b)
        if not sol.consistent:
            raise NotInSubalgebra(f"element of degree {deg} is not in U^w")
        return PBWVector(self, {n: c for n, c in zip(ns, sol.solution) if c})

    def to_half(self, v: PBWVector) -> Half:
        out: Half = {}
        for n, c in v.coords.items():
            _sum_into(out, self.monomial(n), c)
        return out

    def unit(self, n: Sequence[int]) -> PBWVector:
        return PBWVector(self, {tuple(n): ONE})

    def to_ncpoly(self, x: Half) -> NCPoly:
        kind = "E" if self.sign > 0 else "F"
        return NCPoly({tuple((kind, i, 1) for i in w): c for w, c in x.items()})

    def from_ncpoly(self, x: NCPoly) -> Half:
        full = self.group.from_ncpoly(x)
        half = self.group.to_half(full, self.sign)
        if half is None:
            raise NotInSubalgebra("element does not lie in the half algebra")
        return half

    def pair(self, i: int, j: int) -> int:
        """<beta_i, beta_j>, 1-based."""
        return root_pairing(self.datum, self.betas[i - 1], self.betas[j - 1])


def build_context(datum: CartanDatum, word: Sequence[int], sign: int = 1, cap: int = 12) -> PBWContext:
    return PBWContext(quantum_group(datum, cap), word, sign)


def express_in_pbw(ctx: PBWContext, x: NCPoly | Half) -> PBWVector:
    if isinstance(x, NCPoly):
        x = ctx.from_ncpoly(x)
    return ctx.express(x)


def pbw_multiply(ctx: PBWContext, u: PBWVector, v: PBWVector) -> PBWVector:
    prod = ctx.hmul(ctx.to_half(u), ctx.to_half(v))
    return ctx.express(prod)


def ls_relation(ctx: PBWContext, i: int, j: int) -> PBWVector:
    """Straightening of X_i X_j - q^{<b_i,b_j>} X_j X_i (1-based, i < j)."""
    if not 1 <= i < j <= ctx.l:
        raise ValueError("need 1 <= i < j <= l")
    xi, xj = ctx.root_vectors[i - 1], ctx.root_vectors[j - 1]
    lhs = ctx.hmul(xi, xj)
    _sum_into(lhs, ctx.hmul(xj, xi), -qpow(ctx.pair(i, j)))
    return ctx.express(lhs) if lhs else PBWVector(ctx, {})
