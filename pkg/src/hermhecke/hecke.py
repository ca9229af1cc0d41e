"""Hecke operator matrices on M(triv, K_L) from neighbour data.

Two routes: direct neighbour counting (t_ij = #neighbours of L_i isometric
to L_j) and the intertwining method through the second genus of
intersections (T = S S' - d I).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .eisenstein import EisIdeal
from .neighbour import (GenusEnumeration, iter_neighbours, iter_lines_with_data,
                        _kernel_columns, _hermite_key, intersection_lattice,
                        _classify, sublattice_genus, automorphism_order)
from .isometry import is_isometric


class OrphanLatticeError(RuntimeError):
    """A neighbour matched no representative: the genus list is incomplete."""


@dataclass
class HeckeMatrix:
    prime: EisIdeal
    entries: list           # h x h list of lists of int
    method_tag: str         # direct | intertwining | fixture
    genus: GenusEnumeration = None

    @property
    def size(self):
        return len(self.entries)

    def row_sums(self):
        return [sum(row) for row in self.entries]

    def check_row_sums_constant(self) -> int:
        sums = set(self.row_sums())
        if len(sums) != 1:
            raise AssertionError(f"row sums not constant: {sorted(sums)}")
        return sums.pop()

    def check_self_adjoint(self, aut_orders) -> bool:
        h = self.size
        t = self.entries
        for i in range(h):
            for j in range(h):
                if t[i][j] * aut_orders[j] != t[j][i] * aut_orders[i]:
                    return False
        return True

    def to_json_dict(self):
        return {"prime": str(self.prime), "size": self.size,
                "rows": self.entries, "method": self.method_tag}

    @staticmethod
    def from_json_dict(d, prime: EisIdeal = None) -> "HeckeMatrix":
        rows = [[int(x) for x in row] for row in d["rows"]]
        if len(rows) != d["size"] or any(len(r) != d["size"] for r in rows):
            raise ValueError("size does not match rows")
        return HeckeMatrix(prime if prime is not None else d["prime"],
                           rows, d.get("method", "fixture"))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)

    @staticmethod
    def load(path) -> "HeckeMatrix":
        with open(path) as fh:
            return HeckeMatrix.from_json_dict(json.load(fh))


@dataclass
class IntertwiningData:
    S: list                 # h x h' int
    S_prime: list           # h' x h int
    d: int
    aut_L: list
    aut_Lprime: list

    def verify(self) -> bool:
        h, h2 = len(self.S), len(self.S[0])
        for i in range(h):
            if sum(self.S[i]) != self.d:
                return False
        for j in range(h2):
            for i in range(h):
                lhs = Fraction(self.aut_Lprime[j] * self.S[i][j], self.aut_L[i])
                if lhs != self.S_prime[j][i]:
                    return False
        return True


def hecke_direct(genus: GenusEnumeration, ideal: EisIdeal,
                 progress=None) -> HeckeMatrix:
    h = genus.class_number
    reps = genus.representatives
    fps = {}
    for idx, L in enumerate(reps):
        fps.setdefault(L.fingerprint(), []).append(idx)
    entries = [[0] * h for _ in range(h)]
    for i, L in enumerate(reps):
        done = 0
        for _, lat in iter_neighbours(L, ideal):
            j = _classify(lat, reps, fps)
            if j is None:
                raise OrphanLatticeError(
                    f"neighbour of class {i} matches no representative: "
                    f"{lat.to_json_dict()}")
            entries[i][j] += 1
            done += 1
            if progress and done % 10000 == 0:
                progress(i, done)
    T = HeckeMatrix(ideal, entries, "direct", genus)
    T.check_row_sums_constant()
    return T


def sprime_from_s(S, aut_L, aut_Lprime):
    """S' = diag(aut_L') . S^T . diag(aut_L)^-1; all entries must be
    nonnegative integers."""
    h, h2 = len(S), len(S[0])
    out = []
    for j in range(h2):
        row = []
        for i in range(h):
            v = Fraction(aut_Lprime[j] * S[i][j], aut_L[i])
            if v.denominator != 1 or v < 0:
                raise AssertionError(
                    f"S' entry ({j},{i}) = {v} is not a nonnegative integer")
            row.append(int(v))
        out.append(row)
    return out


def s_from_sprime(S_prime, aut_L, aut_Lprime):
    """Invert the diagonal scaling: s_ij = s'_ji * aut_i / aut'_j."""
    h2, h = len(S_prime), len(S_prime[0])
    out = []
    for i in range(h):
        row = []
        for j in range(h2):
            v = Fraction(S_prime[j][i] * aut_L[i], aut_Lprime[j])
            if v.denominator != 1 or v < 0:
                raise AssertionError(
                    f"S entry ({i},{j}) = {v} is not a nonnegative integer")
            row.append(int(v))
        out.append(row)
    return out


def assemble_intertwining(S, aut_L, aut_Lprime):
    """T = S S' - d I from the incidence matrix and automorphism orders."""
    S_prime = sprime_from_s(S, aut_L, aut_Lprime)
    d_values = {sum(row) for row in S}
    if len(d_values) != 1:
        raise AssertionError(f"rows of S do not sum to a constant: {d_values}")
    d = d_values.pop()
    h, h2 = len(S), len(S[0])
    T = [[sum(S[i][k] * S_prime[k][j] for k in range(h2)) - (d if i == j else 0)
          for j in range(h)] for i in range(h)]
    data = IntertwiningData(S, S_prime, d, list(aut_L), list(aut_Lprime))
    return T, data


def hecke_intertwining(genus: GenusEnumeration, ideal: EisIdeal):
    sub_genus, S = sublattice_genus(genus, ideal)
    T, data = assemble_intertwining(S, genus.aut_orders, sub_genus.aut_orders)
    M = HeckeMatrix(ideal, T, "intertwining", genus)
    M.check_row_sums_constant()
    return M, data, sub_genus
