from hypothesis import given, strategies as st

from hermhecke.eisenstein import (EisensteinInt, canonical_associate,
                                  canonical_residue, classify_prime, eis,
                                  eis_gcd, ideal_above, parse_eis,
                                  to_sqrt3_form, from_sqrt3_form)

small = st.integers(-50, 50)
nonzero = st.tuples(small, small).filter(lambda t: t != (0, 0))


@given(small, small, small, small)
def test_norm_multiplicative(a, b, c, d):
    x, y = eis(a, b), eis(c, d)
    assert (x * y).norm() == x.norm() * y.norm()


@given(small, small)
def test_conj_norm(a, b):
    x = eis(a, b)
    assert (x * x.conj()).norm() == x.norm() ** 2
    assert x.conj().conj() == x


@given(st.tuples(small, small), nonzero)
def test_divmod_reduces_norm(xt, yt):
    x, y = eis(*xt), eis(*yt)
    q, r = divmod(x, y)
    assert q * y + r == x
    assert r.norm() < y.norm()


@given(st.tuples(small, small), nonzero)
def test_gcd_divides(xt, yt):
    x, y = eis(*xt), eis(*yt)
    g = eis_gcd(x, y)
    assert g.divides(x) and g.divides(y)


@given(nonzero)
def test_canonical_associate_idempotent(t):
    x = eis(*t)
    c = canonical_associate(x)
    assert c.norm() == x.norm()
    assert canonical_associate(c) == c
    # exactly one associate among the six units is canonical
    w = eis(0, 1)
    units, u = [], eis(1)
    for _ in range(6):
        units.append(u)
        u = u * w
    assert {canonical_associate(x * u) for u in units} == {c}


def test_classify_primes():
    assert classify_prime(3)[0] == "ramified"
    for p in (7, 13, 19, 31, 37, 43, 61):
        assert classify_prime(p)[0] == "split"
        assert len(classify_prime(p)[1]) == 2
    for p in (2, 5, 11, 17, 23, 29, 41, 47):
        assert classify_prime(p)[0] == "inert"


def test_ideal_above():
    P3 = ideal_above(3)
    assert P3.residue_norm == 3
    assert (P3.generator * P3.generator.conj()).norm() == 9
    P2 = ideal_above(2)
    assert P2.residue_norm == 4
    P7 = ideal_above(7)
    assert P7.residue_norm == 7
    assert P7.generator * P7.generator.conj() == eis(7)
    assert canonical_associate(P7.conjugate().generator) == \
        canonical_associate(P7.generator.conj())


def test_sqrt3_form_roundtrip():
    # a + b*omega = (a - b/2) + (b/2) sqrt(-3)
    x = eis(5, 4)
    u, v = to_sqrt3_form(x)
    assert (u, v) == (3, 2)
    assert from_sqrt3_form(u, v) == x


def test_parse_eis():
    assert parse_eis("1+2*w") == eis(1, 2)
    assert parse_eis("-3") == eis(-3)


@given(small, small, nonzero)
def test_canonical_residue(a, b, gt):
    g = eis(*gt)
    x = eis(a, b)
    r = canonical_residue(x, g)
    assert g.divides(x - r)
    # canonical representative is stable on the residue class
    assert canonical_residue(r, g) == r
