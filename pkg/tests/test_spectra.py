import math
import random

import pytest

from hermhecke import spectra
from hermhecke.quadfield import QuadExtElem, parse_quad


def test_twenty_labels(system):
    assert sorted(system.labels) == list(range(1, 21))
    assert system.residual_blocks() == [(19, 20)]
    one_dim = [lab for lab, rec in system.labels.items() if rec.block == ()]
    assert len(one_dim) == 18


def test_quadratic_pair(system):
    assert system.eigenvalue(12, "t2") == parse_quad("23319+162*sqrt(193)")
    assert system.eigenvalue(13, "t2") == parse_quad("23319-162*sqrt(193)")
    assert system.eigenvalue(12, "t3") == parse_quad("4148+36*sqrt(193)")


def test_exactness_and_conjugacy(system):
    assert system.check_exactness()
    v12, v13 = system.labels[12].vector, system.labels[13].vector
    assert all(a.conjugate() == b for a, b in zip(v12, v13))


def test_vector_content_reduced(system):
    for lab in range(1, 19):
        vec = system.labels[lab].vector
        if system.labels[lab].field_tag == 1:
            assert math.gcd(*[int(x) for x in vec]) == 1


def test_content_reduce_quadratic_unit():
    # (3 + sqrt(193))/2 and 2 generate a content ideal of norm > 1 at 2? no:
    # use a vector with an obvious rational content
    vec = [QuadExtElem.of(6, 0, 193), QuadExtElem.of(0, 6, 193)]
    out = spectra._content_reduce_quadratic(vec, 193)
    assert out[0] == QuadExtElem.of(1, 0, 193)
    assert out[1] == QuadExtElem.of(0, 1, 193)


def test_scan_stable_under_probe_permutation(system):
    base = spectra.scan_congruences_lemma(system, q_min=11)
    n = system.size
    probes = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    random.Random(3).shuffle(probes)
    shuffled = spectra.scan_congruences_lemma(system, probes=probes, q_min=11)
    assert [r.key() for r in base] == [r.key() for r in shuffled]


def test_scan_stable_under_probe_rebasing(system):
    # random unimodular integer combinations preserve the span
    n = system.size
    rng = random.Random(11)
    probes = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(40):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        probes[i] = [a + c * b for a, b in zip(probes[i], probes[j])]
    base = spectra.scan_congruences_lemma(system, q_min=11)
    rebased = spectra.scan_congruences_lemma(system, probes=probes, q_min=11)
    assert {r.key() for r in base} == {r.key() for r in rebased}


def test_every_report_reverifies(system):
    for r in spectra.scan_congruences_lemma(system, q_min=11):
        j = r.j[0] if isinstance(r.j, tuple) else r.j
        assert spectra._eig_congruent(system, r.i, j, r.q, r.prime_tag)


def test_commutation_precondition():
    with pytest.raises(spectra.PreconditionError):
        spectra.eigensystem([[[1, 1], [0, 1]], [[1, 0], [1, 1]]])


def test_unnamed_labels_sorted():
    # without a reference, labels follow decreasing first-operator eigenvalue
    sys2 = spectra.eigensystem([[[2, 0], [0, 5]], [[1, 0], [0, 1]]])
    assert sys2.eigenvalue(1, "T0").as_fraction() == 5
    assert sys2.eigenvalue(2, "T0").as_fraction() == 2


def test_difference_gcd_sentinel(system):
    assert spectra.difference_gcd(system, 19, 20).infinite
    assert spectra.difference_gcd(system, 2, 1).value == 691
