"""Degree-1 Hermitian theta series: representation numbers r(n) of integral
lattices, and the automorphism-weighted theta map on genus combinations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import HermitianLattice


@dataclass(frozen=True)
class ThetaSeries:
    coefficients: tuple        # (r(0), r(1), ..., r(precision))
    precision: int

    def r(self, n: int):
        return self.coefficients[n]

    def __add__(self, other):
        if self.precision != other.precision:
            raise ValueError("precision mismatch")
        return ThetaSeries(tuple(a + b for a, b in
                                 zip(self.coefficients, other.coefficients)),
                           self.precision)

    def scale(self, c) -> "ThetaSeries":
        return ThetaSeries(tuple(c * a for a in self.coefficients), self.precision)

    def convolve(self, other) -> "ThetaSeries":
        prec = min(self.precision, other.precision)
        out = [sum(self.coefficients[k] * other.coefficients[n - k]
                   for k in range(n + 1)
                   if k <= self.precision and n - k <= other.precision)
               for n in range(prec + 1)]
        return ThetaSeries(tuple(out), prec)

    def to_json_dict(self):
        return {"precision": self.precision,
                "coefficients": [str(c) if isinstance(c, Fraction) else c
                                 for c in self.coefficients]}


def theta_degree1(L: HermitianLattice, precision: int) -> ThetaSeries:
    """r(n) = #{x in L : <x,x> = n} for n <= precision."""
    if precision < 0:
        raise ValueError("precision must be >= 0")
    counts = [0] * (precision + 1)
    counts[0] = 1
    if L.rank > 0 and precision >= 1:
        for nrm, cnt in L.norm_histogram(precision).items():
            counts[nrm] += cnt
    return ThetaSeries(tuple(counts), precision)


def theta_of_combination(weights, genus, precision: int) -> ThetaSeries:
    """Theta of sum_j x_j F_j = sum_j (x_j / |Aut L_j|) theta(L_j)."""
    reps = genus.representatives
    auts = genus.aut_orders
    if len(weights) != len(reps):
        raise ValueError(f"{len(weights)} weights for {len(reps)} classes")
    total = ThetaSeries(tuple([Fraction(0)] * (precision + 1)), precision)
    for w, L, aut in zip(weights, reps, auts):
        if w == 0:
            continue
        t = theta_degree1(L, precision)
        total = total + t.scale(Fraction(w) / aut)
    return total
