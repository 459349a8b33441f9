"""Integer lattices: HNF, SNF, kernels, and the weight lattices attached to Weyl pairs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rootsys import CartanDatum, Weight, WeylElement, inversion_roots, pair_support, support_sets

__all__ = [
    "IntLattice",
    "hnf",
    "snf_divisors",
    "rational_rank",
    "kernel_lattice",
    "coordinate_lattice",
    "ltilde",
    "ltilde_red",
    "big_L",
    "kappa_lattice",
    "m_of_w",
    "split_pm",
    "split_S_I",
    "split_triple",
]

IntMatrix = list[list[int]]


def _echelon(rows: Sequence[Sequence[int]], ncols: int, track: bool = False):
    """Unimodular row reduction to echelon form.

    Returns (H, U) with U*A = H when ``track`` is set; zero rows of H are kept
    at the bottom so the matching rows of U span the left kernel.
    """
    a = [list(r) for r in rows]
    m = len(a)
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            if track:
                u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    f = a[i][c] // a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    if track:
                        u[i] = [x - f * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if any(a[i][c] for i in range(r, m)):
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                if track:
                    u[r] = [-x for x in u[r]]
            r += 1
    return a, u, r


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Row Hermite normal form (positive pivots, entries above pivots reduced), zero rows dropped."""
    rows = [list(map(int, r)) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    a, _, r = _echelon(rows, ncols)
    a = a[:r]
    pivcols = []
    for i, row in enumerate(a):
        c = next(k for k, x in enumerate(row) if x)
        pivcols.append(c)
        for j in range(i):
            f = a[j][c] // row[c]
            if f:
                a[j] = [x - f * y for x, y in zip(a[j], row)]
    return a


def rational_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    n = len(a[0])
    rank = 0
    for c in range(n):
        p = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for i in range(rank + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def snf_divisors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith invariant factors d_1 | d_2 | ..."""
    a = [list(map(int, r)) for r in rows]
    a = [r for r in a if any(r)]
    if not a:
        return []
    n = len(a[0])
    out = []
    t = 0
    m = len(a)
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    f = a[i][t] // a[t][t]
                    a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    f = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= f * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if changed:
                continue
            # enforce divisibility of the rest by the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        out.append(abs(a[t][t]))
        t += 1
    return out


@dataclass(frozen=True)
class IntLattice:
    """Sublattice of Z^n with canonical (HNF) row basis."""

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, n: int, gens: Iterable[Sequence[int]]) -> "IntLattice":
        gens = [list(g) for g in gens]
        for g in gens:
            if len(g) != n:
                raise ValueError("generator has wrong length")
        return cls(n, tuple(tuple(r) for r in hnf(gens, n)))

    @classmethod
    def full(cls, n: int) -> "IntLattice":
        return cls.span(n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "IntLattice":
        return cls(n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __add__(self, other: "IntLattice") -> "IntLattice":
        return IntLattice.span(self.ambient_rank, list(self.basis) + list(other.basis))

    def scale(self, k: int) -> "IntLattice":
        return IntLattice.span(self.ambient_rank, [[k * x for x in r] for r in self.basis])

    def coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Integer coordinates of v in the HNF basis, or None if v is not in the lattice."""
        rem = list(v)
        coeffs = []
        for row in self.basis:
            c = next(k for k, x in enumerate(row) if x)
            if rem[c] % row[c]:
                return None
            f = rem[c] // row[c]
            coeffs.append(f)
            rem = [x - f * y for x, y in zip(rem, row)]
        return coeffs if not any(rem) else None

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "IntLattice") -> bool:
        return all(r in self for r in other.basis)

    def intersect(self, other: "IntLattice") -> "IntLattice":
        # x B1 = y B2  <=>  (x, -y) in the left kernel of [B1; B2]
        k1 = self.rank
        if k1 == 0 or other.rank == 0:
            return IntLattice.zero(self.ambient_rank)
        stacked = [list(r) for r in self.basis] + [list(r) for r in other.basis]
        kern = left_kernel(stacked, self.ambient_rank)
        gens = []
        for row in kern:
            x = row[:k1]
            gens.append([sum(x[i] * self.basis[i][j] for i in range(k1)) for j in range(self.ambient_rank)])
        return IntLattice.span(self.ambient_rank, gens)

    def quotient_divisors(self, sub: "IntLattice") -> list[int]:
        """Invariant factors of self/sub (sub must be contained in self); 0 marks a free summand."""
        rows = []
        for r in sub.basis:
            c = self.coordinates(r)
            if c is None:
                raise ValueError("not a sublattice")
            rows.append(c)
        divs = [d for d in snf_divisors(rows) if d != 1] if rows else []
        return divs + [0] * (self.rank - sub.rank)

    def index_of(self, sub: "IntLattice") -> int | None:
        """[self : sub], or None when infinite."""
        divs = self.quotient_divisors(sub)
        if 0 in divs:
            return None
        out = 1
        for d in divs:
            out *= d
        return out

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.basis]

    def weights(self) -> list[Weight]:
        return [Weight(r) for r in self.basis]


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Z-basis of {x : x A = 0} (rows of the transform matching zero rows)."""
    a, u, r = _echelon(rows, ncols, track=True)
    return [u[i] for i in range(r, len(a))]


def kernel_lattice(M: Sequence[Sequence[int]], ncols: int | None = None) -> IntLattice:
    """{v in Z^n : M v = 0}."""
    M = [list(map(int, r)) for r in M]
    if ncols is None:
        if not M:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(M[0])
    if not M:
        return IntLattice.full(ncols)
    mt = [[M[i][j] for i in range(len(M))] for j in range(ncols)]
    return IntLattice.span(ncols, left_kernel(mt, len(M)))


def coordinate_lattice(n: int, indices: Iterable[int]) -> IntLattice:
    """P_I: span of the basis vectors with 1-based indices in I."""
    idx = sorted(set(indices))
    return IntLattice.span(n, [[int(j == i - 1) for j in range(n)] for i in idx])


# -- lattices of Weyl pairs --------------------------------------------------


def _diff(a: WeylElement, b: WeylElement) -> IntMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a.matrix, b.matrix)]


def ltilde(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> IntLattice:
    """ker(w_+ - w_-) on P."""
    return kernel_lattice(_diff(wp, wm), datum.rank)


def ltilde_red(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> IntLattice:
    """ker(w_+ - w_-) on P_S."""
    s, i = pair_support(datum, wp, wm)
    return ltilde(datum, wp, wm).intersect(coordinate_lattice(datum.rank, s))


def big_L(datum: CartanDatum, wp: WeylElement, wm: WeylElement) -> IntLattice:
    """2 L~_red + P_I."""
    _, i = pair_support(datum, wp, wm)
    return ltilde_red(datum, wp, wm).scale(2) + coordinate_lattice(datum.rank, i)


def kappa_lattice(datum: CartanDatum, w: WeylElement) -> IntLattice:
    """K(w) = {mu in P_S : (w + 1) mu in P_I}."""
    s, i = support_sets(datum, w)
    r = datum.rank
    rows = [[int(j == k - 1) for j in range(r)] for k in sorted(i)]
    for k in sorted(s):
        rows.append([w.matrix[k - 1][j] + int(j == k - 1) for j in range(r)])
    return kernel_lattice(rows, r) if rows else IntLattice.full(r)


def m_of_w(datum: CartanDatum, w: WeylElement) -> int:
    """dim ker(w + 1), by rational rank."""
    r = datum.rank
    return r - rational_rank([[w.matrix[a][b] + int(a == b) for b in range(r)] for a in range(r)])


def inversion_perp(datum: CartanDatum, w: WeylElement) -> IntLattice:
    """{lam in P : <lam, beta> = 0 for all inversion roots beta}."""
    betas = inversion_roots(datum, w.word)
    if not betas:
        return IntLattice.full(datum.rank)
    # <w_i, beta> = d_i beta_i
    rows = [[datum.sym_d[i] * b[i] for i in range(datum.rank)] for b in betas]
    return kernel_lattice(rows, datum.rank)


def inversion_span(datum: CartanDatum, w: WeylElement) -> IntLattice:
    """Z-span of the inversion roots, in alpha coordinates."""
    return IntLattice.span(datum.rank, inversion_roots(datum, w.word))


# -- splittings ----------------------------------------------------------------


def split_pm(lam: Weight) -> tuple[Weight, Weight]:
    return Weight(tuple(max(c, 0) for c in lam)), Weight(tuple(max(-c, 0) for c in lam))


def split_S_I(datum: CartanDatum, wp: WeylElement, wm: WeylElement, lam: Weight) -> tuple[Weight, Weight]:
    s, _ = pair_support(datum, wp, wm)
    bar = Weight(tuple(c if k + 1 in s else 0 for k, c in enumerate(lam)))
    return bar, lam - bar


def split_triple(datum: CartanDatum, wp: WeylElement, wm: WeylElement, lam: Weight) -> tuple[Weight, Weight, Weight]:
    """((lam)_0, (lam)_+, (lam)_-) on S(w+)&S(w-), S(w+)-S(w-), S(w-)-S(w+)."""
    sp, _ = support_sets(datum, wp)
    sm, _ = support_sets(datum, wm)
    if not lam.is_dominant() or not lam.support <= (sp | sm):
        raise ValueError(f"{lam.label()} is not dominant in P_S")

    def part(idx):
        return Weight(tuple(c if k + 1 in idx else 0 for k, c in enumerate(lam)))

    return part(sp & sm), part(sp - sm), part(sm - sp)
