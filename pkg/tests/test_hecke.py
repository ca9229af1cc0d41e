import pytest

from hermhecke.eisenstein import ideal_above
from hermhecke.hecke import (HeckeMatrix, assemble_intertwining, hecke_direct,
                             hecke_intertwining, s_from_sprime, sprime_from_s)
from hermhecke.lattice import HermitianLattice
from hermhecke.neighbour import enumerate_genus


def test_s_sprime_roundtrip(fx):
    S = s_from_sprime(fx.sprime2_25x5, fx.aut_5, fx.aut_25)
    assert sprime_from_s(S, fx.aut_5, fx.aut_25) == fx.sprime2_25x5
    assert all(sum(row) == fx.d for row in S)


def test_assemble_intertwining_matches_fixture(fx):
    S = s_from_sprime(fx.sprime2_25x5, fx.aut_5, fx.aut_25)
    T, data = assemble_intertwining(S, fx.aut_5, fx.aut_25)
    assert T == fx.t2_5x5
    assert data.verify()
    assert data.d == fx.d


def test_sprime_rejects_bad_aut(fx):
    with pytest.raises(AssertionError):
        s_from_sprime(fx.sprime2_25x5, [7] * 5, fx.aut_25)


def test_hecke_direct_rank4(genus_o4):
    T = hecke_direct(genus_o4, ideal_above(2))
    # single class: T is 1x1 and the entry is the total neighbour count
    assert T.size == 1
    assert T.check_row_sums_constant() == T.entries[0][0]


def test_hecke_intertwining_rank4_agrees(genus_o4):
    Td = hecke_direct(genus_o4, ideal_above(2))
    Ti, data, sub = hecke_intertwining(genus_o4, ideal_above(2))
    assert Ti.entries == Td.entries
    assert data.verify()


def test_matrix_json_roundtrip(tmp_path):
    M = HeckeMatrix(ideal_above(2), [[1, 2], [3, 4]], "fixture")
    with pytest.raises(AssertionError):
        M.check_row_sums_constant()
    p = tmp_path / "m.json"
    M2 = HeckeMatrix("(5)", [[5, 0], [0, 5]], "fixture")
    M2.save(p)
    assert HeckeMatrix.load(p).entries == [[5, 0], [0, 5]]


def test_fixture_matrices_self_adjoint(fx):
    M = HeckeMatrix("(2)", fx.t2_5x5, "fixture")
    assert M.check_self_adjoint(fx.aut_5)
