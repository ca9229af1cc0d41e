"""Isometry testing and automorphism groups of Hermitian lattices.

Backtracking over images of basis vectors (Plesken-Souvignier style,
adapted to the O_E-linear setting): a candidate image for the k-th basis
vector must have the right norm and the right inner products with the
images already chosen.  Group orders come from the orbit-stabilizer chain,
so huge groups are never enumerated element by element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .eisenstein import EisensteinInt, ZERO
from .lattice import HermitianLattice, herm_inner


@dataclass(frozen=True)
class IsometryCertificate:
    """Columns give the images of the source basis in target coordinates."""
    columns: tuple

    def verify(self, source: HermitianLattice, target: HermitianLattice) -> bool:
        n = source.rank
        for i in range(n):
            for j in range(n):
                if herm_inner(target.gram, self.columns[i], self.columns[j]) \
                        != source.gram[i][j]:
                    return False
        return True


class _Searcher:
    """Shared state for backtracking searches into a fixed target lattice."""

    def __init__(self, source: HermitianLattice, target: HermitianLattice):
        self.G1 = source.gram
        self.target = target
        self.n = source.rank
        self._by_norm = {}
        self._gw = {}  # w -> target.gram @ w, for O(n) inner products

    def candidates(self, norm: int):
        if norm not in self._by_norm:
            self._by_norm[norm] = self.target.vectors_of_norm(norm)
        return self._by_norm[norm]

    def _gram_times(self, w):
        gw = self._gw.get(w)
        if gw is None:
            G = self.target.gram
            gw = tuple(sum((G[i][j] * w[j] for j in range(self.n)), ZERO)
                       for i in range(self.n))
            self._gw[w] = gw
        return gw

    def inner(self, v, w) -> EisensteinInt:
        gw = self._gram_times(w)
        return sum((v[i].conj() * gw[i] for i in range(self.n)), ZERO)

    def compatible(self, images, level, w) -> bool:
        for j in range(level):
            if self.inner(images[j], w) != self.G1[j][level]:
                return False
        return True

    def complete(self, images, level):
        """Extend a partial assignment to a full one; None if impossible."""
        if level == self.n:
            return list(images)
        norm = self.G1[level][level].a
        for w in self.candidates(norm):
            if self.compatible(images, level, w):
                images.append(w)
                full = self.complete(images, level + 1)
                if full is not None:
                    return full
                images.pop()
        return None


def is_isometric(L1: HermitianLattice, L2: HermitianLattice):
    """An IsometryCertificate mapping L1 onto L2, or None.

    Images of a basis with matching Gram span a finite-index sublattice of
    L2 of the same determinant, hence all of L2.
    """
    if L1.rank != L2.rank:
        return None
    if L1.det != L2.det or L1.discriminant() != L2.discriminant():
        return None
    searcher = _Searcher(L1, L2)
    full = searcher.complete([], 0)
    if full is None:
        return None
    cert = IsometryCertificate(tuple(full))
    assert cert.verify(L1, L2)
    return cert


def automorphism_order(L: HermitianLattice) -> int:
    """|Aut(L)| as O_E-linear isometries, via the orbit-stabilizer chain.

    At level k the group under consideration is the stabilizer of the first
    k basis vectors; its order is the orbit size of basis vector k times
    the order one level down.
    """
    n = L.rank
    searcher = _Searcher(L, L)
    basis = [tuple(EisensteinInt(1 if i == j else 0, 0) for i in range(n))
             for j in range(n)]
    order = 1
    prefix = []
    for k in range(n):
        orbit = 0
        for w in searcher.candidates(L.gram[k][k].a):
            if not searcher.compatible(prefix, k, w):
                continue
            # does some automorphism fixing the prefix send e_k to w?
            if searcher.complete(prefix + [w], k + 1) is not None:
                orbit += 1
        order *= orbit
        prefix.append(basis[k])
    return order
