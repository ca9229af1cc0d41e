"""Elements a + b*sqrt(D) of quadratic extensions of Q, with exact arithmetic.

D = 1 encodes plain rationals.  Mixing distinct D in one operation is a
programming error and raises rather than coercing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class MixedFieldError(TypeError):
    pass


class UnsupportedCaseError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to Fraction")


@dataclass(frozen=True)
class QuadExtElem:
    rational_part: Fraction
    surd_part: Fraction
    D: int = 1

    @staticmethod
    def of(a, b=0, D=1) -> "QuadExtElem":
        a, b = _frac(a), _frac(b)
        if b == 0:
            D = 1 if D == 1 else D
        return QuadExtElem(a, b, 1 if b == 0 else D)

    def _match(self, other) -> "QuadExtElem":
        if isinstance(other, (int, Fraction)):
            other = QuadExtElem(_frac(other), Fraction(0), 1)
        if not isinstance(other, QuadExtElem):
            raise TypeError(f"cannot coerce {other!r}")
        if other.D != self.D and other.D != 1 and self.D != 1:
            raise MixedFieldError(f"mixed discriminants {self.D} and {other.D}")
        return other

    def _lift(self, D: int) -> "QuadExtElem":
        return QuadExtElem(self.rational_part, self.surd_part, D) if self.D == 1 else self

    def __add__(self, other):
        other = self._match(other)
        D = self.D if self.D != 1 else other.D
        x, y = self._lift(D), other._lift(D)
        return QuadExtElem.of(x.rational_part + y.rational_part,
                              x.surd_part + y.surd_part, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(-self.rational_part, -self.surd_part, self.D)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return self._match(other) + (-self)

    def __mul__(self, other):
        other = self._match(other)
        D = self.D if self.D != 1 else other.D
        x, y = self._lift(D), other._lift(D)
        a, b, c, d = x.rational_part, x.surd_part, y.rational_part, y.surd_part
        return QuadExtElem.of(a * c + D * b * d, a * d + b * c, D)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExtElem":
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("zero element")
        return QuadExtElem.of(self.rational_part / n, -self.surd_part / n, self.D)

    def __truediv__(self, other):
        return self * self._match(other)._lift(self.D).inverse()

    def __rtruediv__(self, other):
        return self._match(other) * self.inverse()

    def conjugate(self) -> "QuadExtElem":
        return QuadExtElem(self.rational_part, -self.surd_part, self.D)

    def field_norm(self) -> Fraction:
        return self.rational_part ** 2 - self.D * self.surd_part ** 2

    def trace(self) -> Fraction:
        return 2 * self.rational_part

    def is_zero(self) -> bool:
        return self.rational_part == 0 and self.surd_part == 0

    def is_rational(self) -> bool:
        return self.surd_part == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.rational_part

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.surd_part == 0 and self.rational_part == other
        if isinstance(other, QuadExtElem):
            if self.surd_part == 0 and other.surd_part == 0:
                return self.rational_part == other.rational_part
            return (self.D == other.D and self.rational_part == other.rational_part
                    and self.surd_part == other.surd_part)
        return NotImplemented

    def __hash__(self):
        if self.surd_part == 0:
            return hash(self.rational_part)
        return hash((self.rational_part, self.surd_part, self.D))

    def __str__(self):
        if self.surd_part == 0:
            return str(self.rational_part)
        return f"{self.rational_part}{'+' if self.surd_part >= 0 else ''}{self.surd_part}*sqrt({self.D})"

    __repr__ = __str__


def rational(x) -> QuadExtElem:
    return QuadExtElem(_frac(x), Fraction(0), 1)


def parse_quad(text, D_hint=None) -> QuadExtElem:
    """Parse 'a+b*sqrt(D)' (or a bare rational)."""
    if isinstance(text, int):
        return rational(text)
    t = str(text).replace(" ", "")
    if "sqrt" not in t:
        return rational(Fraction(t))
    body, _, tail = t.partition("*sqrt(")
    D = int(tail.rstrip(")"))
    if D_hint is not None and D != D_hint:
        raise ValueError(f"expected sqrt({D_hint}), got sqrt({D})")
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "+-*/":
            return QuadExtElem.of(Fraction(body[:i]), Fraction(body[i:]), D)
    return QuadExtElem.of(0, Fraction(body or "1"), D)


def _valuation(n: int, q: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def sqrt_mod(D: int, q: int):
    """A square root of D mod q, or None.  Deterministic: smallest root."""
    d = D % q
    for r in range((q + 1) // 2 + 1):
        if r * r % q == d:
            return r
    return None


def ideal_valuation(x: QuadExtElem, q: int, D: int):
    """Valuations of x at the primes of Q(sqrt(D)) above an odd unramified q.

    Returns a list of (tag, valuation) pairs; tags are 'q' (inert),
    'q1'/'q2' (split, q1 the prime at which sqrt(D) = sqrt_mod(D, q)).
    """
    if q == 2 or (2 * D) % q == 0:
        raise UnsupportedCaseError(f"prime {q} is even or ramified in Q(sqrt({D}))")
    if x.is_zero():
        raise ValueError("valuation of 0")
    if x.D not in (1, D):
        raise MixedFieldError(f"element lies in Q(sqrt({x.D})), not Q(sqrt({D}))")
    a, b = x.rational_part, x.surd_part
    den = math.lcm(a.denominator, b.denominator)
    vden = _valuation(den, q) if den % q == 0 else 0
    na, nb = int(a * den), int(b * den)
    r = sqrt_mod(D, q)
    if r is None:
        # inert: v(x) = v_q(field norm)/2, and norm has even valuation
        vn = _valuation(na * na - D * nb * nb, q) if (na, nb) != (0, 0) else 0
        if (na, nb) == (0, 0):
            raise ValueError("valuation of 0")
        assert vn % 2 == 0
        return [("q", vn // 2 - vden)]
    # split: localize at q1 = (q, sqrt(D) - r) and q2 = (q, sqrt(D) + r)
    v1 = _split_val(na, nb, D, q, r)
    v2 = _split_val(na, nb, D, q, (q - r) % q)
    return [("q1", v1 - vden), ("q2", v2 - vden)]


def _split_val(na: int, nb: int, D: int, q: int, r: int) -> int:
    """v at the prime where sqrt(D) specializes to the q-adic lift of r."""
    if na == 0 and nb == 0:
        raise ValueError("valuation of 0")
    K = 1
    # enough precision to see past v_q(norm)
    norm = na * na - D * nb * nb
    bound = (_valuation(norm, q) if norm % q == 0 else 0) + 2 if norm else 64
    root = _hensel_root(D, q, r, bound)
    val = (na + nb * root) % (q ** bound)
    if val == 0:
        return bound  # only reachable when norm = 0, i.e. never for D nonsquare
    v = 0
    while val % q == 0:
        val //= q
        v += 1
    return v


def _hensel_root(D: int, q: int, r: int, K: int) -> int:
    """Lift r with r^2 = D (mod q) to a root of X^2 - D mod q^K."""
    mod = q
    x = r % q
    while mod < q ** K:
        mod = mod * mod
        # Newton step: x <- x - (x^2 - D)/(2x)
        inv = pow(2 * x, -1, mod)
        x = (x - (x * x - D) * inv) % mod
    return x % (q ** K)
