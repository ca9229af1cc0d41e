"""Exact linear algebra over Q and quadratic extensions.

Matrices are plain lists of lists.  Entries may be int, Fraction, or
QuadExtElem; everything stays exact.  Characteristic polynomials and their
factorizations over Q are delegated to sympy.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .quadfield import QuadExtElem


def identity_matrix(n, one=1):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scalar(c, A):
    return [[c * a for a in row] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def _is_zero(x) -> bool:
    if isinstance(x, QuadExtElem):
        return x.is_zero()
    return x == 0


def kernel_basis(A):
    """Basis of the right kernel of A, by fraction-free-ish Gauss-Jordan.

    Works over any field whose elements support +, -, *, / and compare to 0.
    Free variables are set to 1 in turn.
    """
    if not A:
        return []
    m, n = len(A), len(A[0])
    M = [list(row) for row in A]
    pivots = []
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, m):
            if not _is_zero(M[r][col]):
                piv = r
                break
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = M[row][col]
        M[row] = [x / inv for x in M[row]]
        for r in range(m):
            if r != row and not _is_zero(M[r][col]):
                c = M[r][col]
                M[r] = [x - c * y for x, y in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -M[r][fc]
        basis.append(v)
    return basis


def matrix_rank(A):
    if not A:
        return 0
    return len(A[0]) - len(kernel_basis(A))


def solve_right(A, b):
    """One solution x of A x = b over a field, or None."""
    m = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    n = len(A[0])
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if not _is_zero(aug[r][col])), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = aug[row][col]
        aug[row] = [x / inv for x in aug[row]]
        for r in range(m):
            if r != row and not _is_zero(aug[r][col]):
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if not _is_zero(aug[r][n]):
            return None
    x = [0] * n
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][n]
    return x


def charpoly_coeffs(A):
    """Coefficients [c_0, ..., c_n] of det(X I - A), integer matrix input."""
    M = sympy.Matrix([[int(x) for x in row] for row in A])
    p = M.charpoly()
    coeffs = list(reversed(p.all_coeffs()))
    return [int(c) for c in coeffs]


def charpoly_factors(A):
    """Irreducible factors of the char poly over Q, as (coeff-list, mult).

    Coefficient lists are low-degree first with integer entries, primitive,
    positive leading coefficient.
    """
    M = sympy.Matrix([[int(x) for x in row] for row in A])
    x = sympy.Symbol("x")
    p = M.charpoly(x).as_expr()
    _, factors = sympy.factor_list(p)
    out = []
    for poly, mult in factors:
        cs = list(reversed(sympy.Poly(poly, x).all_coeffs()))
        out.append(([int(c) for c in cs], int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def int_sqrt_exact(n: int):
    import math
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def roots_of_factor(coeffs):
    """Roots of a degree <= 2 integer polynomial as QuadExtElem pairs.

    Returns a list of roots; for an irreducible quadratic both conjugate
    roots over Q(sqrt(disc_core)) with squarefree disc_core.
    """
    if len(coeffs) == 2:
        c0, c1 = coeffs
        return [QuadExtElem.of(Fraction(-c0, c1))]
    if len(coeffs) == 3:
        c0, c1, c2 = coeffs
        disc = c1 * c1 - 4 * c2 * c0
        s = int_sqrt_exact(disc)
        if s is not None:
            return [QuadExtElem.of(Fraction(-c1 + s, 2 * c2)),
                    QuadExtElem.of(Fraction(-c1 - s, 2 * c2))]
        core, square = squarefree_decomposition(disc)
        half = Fraction(1, 2 * c2)
        return [QuadExtElem.of(Fraction(-c1, 2 * c2), Fraction(square, 2 * c2), core),
                QuadExtElem.of(Fraction(-c1, 2 * c2), Fraction(-square, 2 * c2), core)]
    raise ValueError("only degree <= 2 factors supported")


def squarefree_decomposition(n: int):
    """n = core * square^2 with core squarefree (sign carried by core)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    core, square = sign, 1
    for p, e in sympy.factorint(n).items():
        square *= p ** (e // 2)
        if e % 2:
            core *= p
    return core, square


def saturate_columns(B):
    """Basis of the saturation of the column lattice of an integer matrix B.

    Diagonalizes B by integer row and column operations while tracking the
    inverse row transform; the saturation is spanned by its first rank(B)
    columns.  Returns a list of column vectors.
    """
    n = len(B)
    k = len(B[0])
    M = [list(row) for row in B]
    # columns of Rinv; row op E on M updates Rinv <- Rinv * E^{-1}
    rinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        for r in range(n):
            rinv[r][i], rinv[r][j] = rinv[r][j], rinv[r][i]

    def row_add(i, j, c):  # row_i += c * row_j
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        for r in range(n):
            rinv[r][j] -= c * rinv[r][i]

    def col_swap(i, j):
        for r in range(n):
            M[r][i], M[r][j] = M[r][j], M[r][i]

    def col_add(i, j, c):  # col_i += c * col_j
        for r in range(n):
            M[r][i] += c * M[r][j]

    rank = 0
    for t in range(k):
        while True:
            piv = min(((abs(M[r][c]), r, c) for r in range(t, n)
                       for c in range(t, k) if M[r][c] != 0), default=None)
            if piv is None:
                break
            _, r, c = piv
            row_swap(t, r)
            col_swap(t, c)
            clean = True
            for r in range(t + 1, n):
                if M[r][t]:
                    row_add(r, t, -(M[r][t] // M[t][t]))
                    clean = clean and M[r][t] == 0
            for c in range(t + 1, k):
                if M[t][c]:
                    q = M[t][c] // M[t][t]
                    col_add(c, t, -q)
                    clean = clean and M[t][c] == 0
            if clean:
                break
        if t < n and t < k and M[t][t] != 0:
            rank += 1
    return [[rinv[r][j] for r in range(n)] for j in range(rank)]


def integer_kernel_basis(A):
    """Saturated basis of {x in Z^n : A x = 0} for an integer matrix A."""
    import math
    rat = kernel_basis([[Fraction(x) for x in row] for row in A])
    if not rat:
        return []
    cols = [normalize_primitive(v) for v in rat]
    B = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]
    sat = saturate_columns(B)
    for v in sat:
        assert all(x == 0 for x in mat_vec(A, v))
    return sat


def normalize_primitive(vec):
    """Scale a rational vector to integer entries with content 1.

    First nonzero entry is made positive.  Input entries: int/Fraction.
    """
    import math
    fr = [Fraction(x) for x in vec]
    den = math.lcm(*[f.denominator for f in fr]) if fr else 1
    ints = [int(f * den) for f in fr]
    g = math.gcd(*ints) if any(ints) else 1
    ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return ints
