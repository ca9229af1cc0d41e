"""Hermitian lattices over the Eisenstein integers.

A lattice is stored through its Gram matrix with respect to some O-basis;
the form is conjugate-linear in the first argument.  Vectors are coordinate
tuples of EisensteinInt relative to that basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .eisenstein import EisensteinInt, ZERO, ONE, OMEGA, eis, canonical_associate
from . import eismat


def herm_inner(gram, x, y) -> EisensteinInt:
    """<x, y> = x^dagger G y (conjugate-linear in x)."""
    n = len(gram)
    s = ZERO
    for i in range(n):
        xi = x[i].conj()
        if xi == ZERO:
            continue
        for j in range(n):
            if y[j] != ZERO:
                s = s + xi * gram[i][j] * y[j]
    return s


def herm_norm(gram, x) -> int:
    v = herm_inner(gram, x, x)
    if v.b != 0:
        raise ValueError("norm is not rational; gram not Hermitian?")
    return v.a


@dataclass(frozen=True)
class HermitianLattice:
    gram: tuple  # tuple of tuples of EisensteinInt

    def __post_init__(self):
        if not eismat.is_hermitian(self.gram):
            raise ValueError("gram matrix is not Hermitian")

    @staticmethod
    def from_gram(rows) -> "HermitianLattice":
        return HermitianLattice(tuple(tuple(x if isinstance(x, EisensteinInt)
                                            else eis(x) for x in row)
                                      for row in rows))

    @staticmethod
    def standard(n: int) -> "HermitianLattice":
        return HermitianLattice.from_gram(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        d = eismat.eis_det([list(r) for r in self.gram])
        if d.b != 0:
            raise ValueError("determinant of Hermitian gram must be rational")
        return d.a

    @cached_property
    def invariant_factors(self) -> tuple:
        return tuple(eismat.smith_invariants([list(r) for r in self.gram]))

    def discriminant(self) -> tuple:
        """Norms of the elementary divisors of the Gram matrix."""
        return tuple(f.norm() for f in self.invariant_factors)

    def is_unimodular(self) -> bool:
        return all(f.is_unit() for f in self.invariant_factors)

    def is_sqrt3_modular(self) -> bool:
        s3 = canonical_associate(EisensteinInt(1, 2))
        return all(canonical_associate(f) == s3 for f in self.invariant_factors)

    def dual_gram_scaled(self):
        """(adjugate, det): dual lattice gram is adjugate/det, entrywise."""
        n = self.rank
        d = self.det
        adj = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [[self.gram[r][c] for c in range(n) if c != i]
                         for r in range(n) if r != j]
                m = eismat.eis_det(minor) if n > 1 else ONE
                if (i + j) % 2:
                    m = -m
                row.append(m)
            adj.append(row)
        return adj, d

    def trace_gram(self):
        """Gram of the rank-2n Z-lattice under Tr<x, y>.

        Z-basis ordering: e_1, w e_1, e_2, w e_2, ...
        """
        n = self.rank
        T = [[0] * (2 * n) for _ in range(2 * n)]
        pows = (ONE, OMEGA)
        for i in range(n):
            for j in range(n):
                g = self.gram[i][j]
                for s in range(2):
                    for t in range(2):
                        z = pows[s].conj() * pows[t] * g
                        T[2 * i + s][2 * j + t] = 2 * z.a - z.b
        return T

    @cached_property
    def minimum(self) -> int:
        m = 1
        while True:
            vs = self.short_vectors(m)
            if vs:
                return min(herm_norm(self.gram, v) for v in vs)
            m *= 2

    def short_vectors(self, max_norm: int):
        """All nonzero vectors of Hermitian norm <= max_norm, up to sign.

        One representative of each +-v pair is returned (unit multiples other
        than -1 are listed separately).
        """
        T = self.trace_gram()
        out = []
        for zvec in _fincke_pohst(T, 2 * max_norm):
            v = tuple(EisensteinInt(zvec[2 * i], zvec[2 * i + 1])
                      for i in range(self.rank))
            out.append(v)
        return out

    def vectors_of_norm(self, m: int):
        """All vectors of exact Hermitian norm m (including unit multiples)."""
        out = []
        for v in self.short_vectors(m):
            if herm_norm(self.gram, v) == m:
                out.append(v)
                out.append(tuple(-x for x in v))
        return out

    def norm_histogram(self, max_norm: int):
        hist = {}
        for v in self.short_vectors(max_norm):
            m = herm_norm(self.gram, v)
            hist[m] = hist.get(m, 0) + 2
        return dict(sorted(hist.items()))

    def rebase(self, cols, denominator: int = 1) -> "HermitianLattice":
        """Gram after the basis change with the given columns / denominator.

        Columns are coordinates in the current basis; entries EisensteinInt.
        """
        B = [[cols[i][j] for j in range(len(cols[0]))] for i in range(len(cols))]
        Bh = eismat.conj_transpose(B)
        G = eismat.emat_mul(Bh, eismat.emat_mul([list(r) for r in self.gram], B))
        d2 = denominator * denominator
        out = []
        for row in G:
            orow = []
            for x in row:
                if x.a % d2 or x.b % d2:
                    raise ValueError("rebased gram is not integral")
                orow.append(EisensteinInt(x.a // d2, x.b // d2))
            out.append(tuple(orow))
        return HermitianLattice(tuple(out))

    # --- JSON -----------------------------------------------------------
    def to_json_dict(self):
        return {"rank": self.rank,
                "gram": [[[x.a, x.b] for x in row] for row in self.gram]}

    @staticmethod
    def from_json_dict(d) -> "HermitianLattice":
        if set(d) - {"rank", "gram", "label"}:
            raise ValueError(f"unexpected keys {sorted(set(d) - {'rank', 'gram'})}")
        gram = tuple(tuple(EisensteinInt(a, b) for a, b in row)
                     for row in d["gram"])
        if len(gram) != d["rank"] or any(len(r) != d["rank"] for r in gram):
            raise ValueError("rank does not match gram dimensions")
        return HermitianLattice(gram)

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)

    @staticmethod
    def load(path) -> "HermitianLattice":
        with open(path) as fh:
            return HermitianLattice.from_json_dict(json.load(fh))

    def fingerprint(self, depth: int = 4):
        """Cheap isometry invariant: discriminant and short-norm counts.

        Only basis-independent data may appear here (the genus machinery
        buckets by fingerprint before running full isometry tests).
        """
        return (self.discriminant(),
                tuple(sorted(self.norm_histogram(depth).items())))


class _EFrac:
    """a + b*omega with Fraction coordinates; just enough for LLL."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=Fraction(0)):
        self.a, self.b = Fraction(a), Fraction(b)

    @staticmethod
    def of(x: EisensteinInt) -> "_EFrac":
        return _EFrac(x.a, x.b)

    def __add__(self, o):
        return _EFrac(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return _EFrac(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        return _EFrac(self.a * o.a - self.b * o.b,
                      self.a * o.b + self.b * o.a - self.b * o.b)

    def conj(self) -> "_EFrac":
        return _EFrac(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def div_real(self, r: Fraction) -> "_EFrac":
        return _EFrac(self.a / r, self.b / r)

    def round(self) -> EisensteinInt:
        best = None
        ra, rb = round(self.a), round(self.b)
        for da in (-1, 0, 1):
            for db in (-1, 0, 1):
                z = EisensteinInt(ra + da, rb + db)
                d = (self - _EFrac.of(z)).norm()
                if best is None or d < best[0]:
                    best = (d, z)
        return best[1]


def hermitian_lll(L: HermitianLattice, delta=Fraction(3, 4)):
    """LLL-reduce the basis over O_E; returns (reduced lattice, transform U)
    with reduced gram = U^dagger G U."""
    n = L.rank
    from . import eismat

    U = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    G0 = [list(r) for r in L.gram]

    def current_gram():
        return eismat.emat_mul(eismat.conj_transpose(U),
                               eismat.emat_mul(G0, U))

    def gso(G):
        mu = [[None] * n for _ in range(n)]
        B = [None] * n
        star = [[None] * n for _ in range(n)]  # star[j][i] = <b_j*, b_i>
        for j in range(n):
            for i in range(n):
                s = _EFrac.of(G[j][i])
                for k in range(j):
                    s = s - mu[j][k].conj() * star[k][i]
                star[j][i] = s
            B[j] = star[j][j].a
            if B[j] <= 0:
                raise ValueError("gram is not positive definite")
            for i in range(j + 1, n):
                mu[i][j] = star[j][i].div_real(B[j])
        return mu, B

    def col_op(k, j, r: EisensteinInt):
        # b_k <- b_k - r * b_j
        for i in range(n):
            U[i][k] = U[i][k] - r * U[i][j]

    def swap(k):
        for i in range(n):
            U[i][k], U[i][k - 1] = U[i][k - 1], U[i][k]

    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 10000:
            raise RuntimeError("LLL failed to terminate")
        G = current_gram()
        mu, B = gso(G)
        reduced_any = False
        for j in range(k - 1, -1, -1):
            r = mu[k][j].round()
            if r != ZERO:
                col_op(k, j, r)
                reduced_any = True
        if reduced_any:
            G = current_gram()
            mu, B = gso(G)
        if B[k] >= (delta - mu[k][k - 1].norm()) * B[k - 1]:
            k += 1
        else:
            swap(k)
            k = max(1, k - 1)
    G = current_gram()
    return HermitianLattice(tuple(tuple(r) for r in G)), \
        [[U[i][j] for j in range(n)] for i in range(n)]


def direct_sum(*lattices) -> HermitianLattice:
    n = sum(L.rank for L in lattices)
    G = [[ZERO] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                G[off + i][off + j] = L.gram[i][j]
        off += L.rank
    return HermitianLattice(tuple(tuple(r) for r in G))


def _fincke_pohst(T, bound: int):
    """Nonzero integer vectors x with x^T T x <= bound, up to sign.

    T is a positive-definite integer Gram matrix; exact Fraction Cholesky.
    """
    n = len(T)
    q = [[Fraction(T[i][j]) for j in range(n)] for i in range(n)]
    # q[i][i] = diagonal coefficient, q[i][j] (j>i) = off-diagonal ratios
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("gram is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] = q[k][l] - q[k][i] * q[i][l]
    results = []
    x = [0] * n
    B = Fraction(bound)

    def recurse(i, remaining, center_terms):
        # Q = sum_i q_ii (x_i + U_i)^2 with U_i = sum_{j>i} q_ij x_j
        U = sum(q[i][j] * x[j] for j in range(i + 1, n))
        # |x_i + U| <= sqrt(remaining / q_ii)
        lim = remaining / q[i][i]
        lo, hi = _integer_range(-U, lim)
        for xi in range(lo, hi + 1):
            x[i] = xi
            term = q[i][i] * (xi + U) ** 2
            if i == 0:
                if any(x):
                    # canonical sign: first nonzero from the top is positive
                    lead = next(v for v in reversed(x) if v)
                    if lead > 0:
                        results.append(tuple(x))
            else:
                recurse(i - 1, remaining - term, None)
        x[i] = 0

    recurse(n - 1, B, None)
    return results


import math


def _integer_range(center: Fraction, lim: Fraction):
    """All integers t with (t - center)^2 <= lim, as an inclusive (lo, hi)."""
    if lim < 0:
        return 1, 0
    # sqrt(lim) = isqrt(a*b)/b exactly when rounding down, for lim = a/b
    a, b = lim.numerator, lim.denominator
    s_up = Fraction(math.isqrt(a * b) + 1, b)  # strictly > sqrt(lim)
    hi = math.floor(center + s_up)
    floor_lo = math.ceil(center - s_up)
    while hi >= floor_lo and (hi - center) ** 2 > lim:
        hi -= 1
    lo = floor_lo
    while lo <= hi and (lo - center) ** 2 > lim:
        lo += 1
    if lo > hi:
        return 1, 0
    return lo, hi
