"""Finite root systems, weights in the fundamental basis, and Weyl groups."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "CartanDatum",
    "Weight",
    "WeylElement",
    "cartan_datum",
    "simple_reflection",
    "word_to_element",
    "inversion_roots",
    "support_sets",
    "pairing",
    "parse_word",
]

Matrix = tuple[tuple[int, ...], ...]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0]) if b else 0
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(n)) for i in range(len(a)))


def _identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def _apply(m: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in m)


def _inverse_rational(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class Weight:
    """Integral weight sum n_i w_i, stored by its fundamental coordinates."""

    coords: tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def support(self) -> frozenset[int]:
        """1-based indices with nonzero coordinate."""
        return frozenset(i + 1 for i, c in enumerate(self.coords) if c)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def label(self, sym: str = "w") -> str:
        parts = []
        for i, c in enumerate(self.coords, 1):
            if not c:
                continue
            term = f"{sym}{i}" if abs(c) == 1 else f"{abs(c)}{sym}{i}"
            parts.append(("-" if c < 0 else "+", term))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, t in parts[1:]:
            s += f" {sg} {t}"
        return s


@dataclass(frozen=True)
class CartanDatum:
    type_label: str
    rank: int
    cartan_matrix: Matrix
    sym_d: tuple[int, ...]

    def __post_init__(self):
        c, d, r = self.cartan_matrix, self.sym_d, self.rank
        if len(c) != r or any(len(row) != r for row in c) or len(d) != r:
            raise ValueError("Cartan matrix shape does not match rank")
        for i in range(r):
            if c[i][i] != 2:
                raise ValueError("diagonal entries must be 2")
            for j in range(r):
                if i != j and (c[i][j] > 0 or (c[i][j] == 0) != (c[j][i] == 0)):
                    raise ValueError("off-diagonal sign/zero pattern violated")
                if d[i] * c[i][j] != d[j] * c[j][i]:
                    raise ValueError("(d_i c_ij) is not symmetric")

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def c(self, i: int, j: int) -> int:
        """Cartan entry c_ij, 1-based."""
        return self.cartan_matrix[i - 1][j - 1]

    def d(self, i: int) -> int:
        return self.sym_d[i - 1]

    # -- weights and roots ---------------------------------------------
    def omega(self, i: int) -> Weight:
        return Weight(tuple(int(k == i - 1) for k in range(self.rank)))

    def zero(self) -> Weight:
        return Weight((0,) * self.rank)

    def weight(self, coords: Iterable[int]) -> Weight:
        w = Weight(tuple(int(x) for x in coords))
        if len(w) != self.rank:
            raise ValueError("weight has wrong length")
        return w

    def alpha(self, i: int) -> Weight:
        """Simple root alpha_i = sum_j c_ji w_j."""
        return Weight(tuple(self.cartan_matrix[j][i - 1] for j in range(self.rank)))

    def root_to_weight(self, beta: Sequence[int]) -> Weight:
        """Root-lattice coordinates (in the alpha basis) to fundamental coordinates."""
        return Weight(tuple(sum(self.cartan_matrix[j][i] * beta[i] for i in range(self.rank)) for j in range(self.rank)))

    @cached_property
    def _cinv(self) -> list[list[Fraction]]:
        return _inverse_rational(self.cartan_matrix)

    def weight_to_root(self, lam: Weight | Sequence[int]) -> tuple[int, ...]:
        """Alpha-basis coordinates of an element of the root lattice."""
        v = [sum(self._cinv[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank)]
        if any(x.denominator != 1 for x in v):
            raise ValueError(f"{tuple(lam)} is not in the root lattice")
        return tuple(int(x) for x in v)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """<w_i, w_j> = (D C^{-1})_ij in the convention <w_i, alpha_j> = d_j delta_ij."""
        # <w_i, alpha_j> = sum_k c_kj G_ik = d_j delta_ij, so G C = D, G = D C^{-1}
        ci = self._cinv
        g = tuple(tuple(self.sym_d[i] * ci[i][j] for j in range(self.rank)) for i in range(self.rank))
        assert all(g[i][j] == g[j][i] for i in range(self.rank) for j in range(self.rank))
        return g

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in alpha coordinates, sorted by height then lexicographically."""
        r = self.rank
        simple = [tuple(int(k == i) for k in range(r)) for i in range(r)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for b in frontier:
                for i in range(r):
                    pair = sum(self.cartan_matrix[i][j] * b[j] for j in range(r))  # <b, alpha_i^vee>
                    nb = tuple(b[k] - (pair if k == i else 0) for k in range(r))
                    if all(x >= 0 for x in nb) and any(nb) and nb not in seen:
                        seen.add(nb)
                        nxt.append(nb)
            frontier = nxt
        return tuple(sorted(seen, key=lambda b: (sum(b), b)))

    def height(self, beta: Sequence[int]) -> int:
        return sum(beta)

    # -- Weyl group ------------------------------------------------------
    @cached_property
    def reflection_matrices(self) -> tuple[Matrix, ...]:
        out = []
        for i in range(self.rank):
            # (s_i lam)_j = lam_j - lam_i c_ji
            m = [[int(j == k) for k in range(self.rank)] for j in range(self.rank)]
            for j in range(self.rank):
                m[j][i] -= self.cartan_matrix[j][i]
            out.append(tuple(tuple(row) for row in m))
        return tuple(out)

    def length_of(self, m: Matrix) -> int:
        """Number of positive roots sent to negative roots."""
        cnt = 0
        for b in self.positive_roots:
            img = self.weight_to_root(_apply(m, tuple(self.root_to_weight(b))))
            if sum(img) < 0:
                cnt += 1
        return cnt

    def element(self, m: Matrix) -> "WeylElement":
        return WeylElement(self, m, tuple(self._lex_word(m)))

    def _lex_word(self, m: Matrix) -> list[int]:
        word = []
        cur = m
        while cur != _identity(self.rank):
            inv = _int_inverse(cur)
            for i in range(1, self.rank + 1):
                # i is a left descent iff w^{-1}(alpha_i) < 0
                img = self.weight_to_root(_apply(inv, tuple(self.alpha(i))))
                if sum(img) < 0:
                    word.append(i)
                    cur = _matmul(self.reflection_matrices[i - 1], cur)
                    break
            else:  # pragma: no cover
                raise RuntimeError("no left descent found for a non-identity element")
        return word

    def identity(self) -> "WeylElement":
        return WeylElement(self, _identity(self.rank), ())

    @cached_property
    def weyl_group(self) -> tuple["WeylElement", ...]:
        """All elements, sorted by (length, canonical word).  Only for |W| <= 384."""
        seen = {_identity(self.rank)}
        frontier = [_identity(self.rank)]
        while frontier:
            nxt = []
            for m in frontier:
                for s in self.reflection_matrices:
                    p = _matmul(s, m)
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
                        if len(seen) > 384:
                            raise ValueError("Weyl group too large to enumerate")
            frontier = nxt
        elems = [self.element(m) for m in seen]
        return tuple(sorted(elems, key=lambda w: (len(w.word), w.word)))

    def longest_element(self) -> "WeylElement":
        return max(self.weyl_group, key=lambda w: len(w.word))


def _int_inverse(m: Matrix) -> Matrix:
    inv = _inverse_rational(m)
    return tuple(tuple(int(x) for x in row) for row in inv)


@dataclass(frozen=True)
class WeylElement:
    datum: CartanDatum = field(repr=False, compare=False, hash=False)
    matrix: Matrix
    word: tuple[int, ...] = field(compare=False)

    @property
    def canonical_word(self) -> tuple[int, ...]:
        return self.word

    @property
    def length(self) -> int:
        return len(self.word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.datum.element(_matmul(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        return self.datum.element(_int_inverse(self.matrix))

    def act(self, lam: Weight) -> Weight:
        return Weight(_apply(self.matrix, tuple(lam)))

    def act_root(self, beta: Sequence[int]) -> tuple[int, ...]:
        return self.datum.weight_to_root(self.act(self.datum.root_to_weight(beta)))

    def label(self) -> str:
        return "e" if not self.word else "s" + "s".join(str(i) for i in self.word)

    def word_str(self) -> str:
        return ",".join(str(i) for i in self.word)


# -- constructors ------------------------------------------------------------


def _cartan(type_label: str, r: int) -> tuple[list[list[int]], list[int]]:
    c = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for i in range(r - 1):
        c[i][i + 1] = c[i + 1][i] = -1
    d = [1] * r
    t = type_label
    if t == "A":
        pass
    elif t == "B":
        if r < 2:
            raise ValueError("B_n needs n >= 2")
        c[r - 1][r - 2] = -2  # alpha_r short
        d = [2] * (r - 1) + [1]
    elif t == "C":
        if r < 2:
            raise ValueError("C_n needs n >= 2")
        c[r - 2][r - 1] = -2  # alpha_r long
        d = [1] * (r - 1) + [2]
    elif t == "D":
        if r < 3:
            raise ValueError("D_n needs n >= 3")
        c[r - 2][r - 1] = c[r - 1][r - 2] = 0
        c[r - 3][r - 1] = c[r - 1][r - 3] = -1
    elif t == "G":
        if r != 2:
            raise ValueError("G has rank 2 only")
        c = [[2, -3], [-1, 2]]  # alpha_1 short
        d = [1, 3]
    else:
        raise ValueError(f"unsupported type {t!r}")
    return c, d


_LABEL = re.compile(r"^\s*([ABCDG])\s*(\d+)\s*$")


def cartan_datum(label: str) -> CartanDatum:
    """Parse labels such as "A2", "B3", "G2" (Bourbaki numbering)."""
    m = _LABEL.match(label or "")
    if not m:
        raise ValueError(f"cannot parse Cartan type {label!r}")
    t, r = m.group(1), int(m.group(2))
    if r < 1:
        raise ValueError("rank must be positive")
    c, d = _cartan(t, r)
    return CartanDatum(t, r, tuple(tuple(row) for row in c), tuple(d))


def parse_word(datum: CartanDatum, text: str) -> tuple[int, ...]:
    """Parse "1,2,1"; the empty string (or "e") is the identity."""
    text = (text or "").strip()
    if text in ("", "e"):
        return ()
    try:
        word = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse Weyl word {text!r}") from None
    for i in word:
        if not 1 <= i <= datum.rank:
            raise ValueError(f"index {i} out of range for {datum.name}")
    return word


def simple_reflection(datum: CartanDatum, i: int) -> WeylElement:
    if not 1 <= i <= datum.rank:
        raise ValueError(f"index {i} out of range 1..{datum.rank}")
    return WeylElement(datum, datum.reflection_matrices[i - 1], (i,))


def word_to_element(datum: CartanDatum, word: Sequence[int]) -> tuple[WeylElement, bool]:
    m = _identity(datum.rank)
    for i in word:
        if not 1 <= i <= datum.rank:
            raise ValueError(f"index {i} out of range 1..{datum.rank}")
        m = _matmul(m, datum.reflection_matrices[i - 1])
    el = datum.element(m)
    return el, len(word) == el.length


def inversion_roots(datum: CartanDatum, word: Sequence[int]) -> list[tuple[int, ...]]:
    """beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}), in alpha coordinates."""
    _, red = word_to_element(datum, word)
    if not red:
        raise ValueError(f"word {list(word)} is not reduced")
    out = []
    m = _identity(datum.rank)
    for i in word:
        out.append(datum.weight_to_root(_apply(m, tuple(datum.alpha(i)))))
        m = _matmul(m, datum.reflection_matrices[i - 1])
    return out


def support_sets(datum: CartanDatum, w: WeylElement) -> tuple[frozenset[int], frozenset[int]]:
    """(S(w), I(w)) from the fundamental weights fixed by w; cross-checked against the word."""
    fixed = frozenset(i for i in range(1, datum.rank + 1) if w.act(datum.omega(i)) == datum.omega(i))
    s = frozenset(range(1, datum.rank + 1)) - fixed
    if s != frozenset(w.word):
        raise AssertionError(f"support mismatch for {w.word}: {sorted(s)} vs letters")
    return s, fixed


def pair_support(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> tuple[frozenset[int], frozenset[int]]:
    sp, ip = support_sets(datum, wp)
    sm, im = support_sets(datum, wm)
    return sp | sm, ip & im


def pairing(datum: CartanDatum, lam: Weight | Sequence[int], mu: Weight | Sequence[int]) -> Fraction:
    """Symmetric form with <alpha_i, alpha_j> = d_i c_ij, on fundamental coordinates."""
    g = datum.gram
    r = datum.rank
    return sum((lam[i] * g[i][j] * mu[j] for i in range(r) for j in range(r) if lam[i] and mu[j]), Fraction(0))


def root_pairing(datum: CartanDatum, a: Sequence[int], b: Sequence[int]) -> int:
    """<a, b> for root-lattice vectors in alpha coordinates; always an integer."""
    r = datum.rank
    return sum(a[i] * datum.sym_d[i] * datum.cartan_matrix[i][j] * b[j] for i in range(r) for j in range(r))
