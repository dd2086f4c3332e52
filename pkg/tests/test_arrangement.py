from fractions import Fraction

import pytest

from arrtool.arrangement import (
    Arrangement,
    ArrangementError,
    dense_flats,
    esv_check,
    intersection_lattice,
    load_arrangement,
)
from arrtool.orlik_solomon import build_os

from conftest import LATTICE_FIXTURES, fixture_arrangement


def sets(flats):
    return {frozenset(f.hyperplanes) for f in flats}


def test_braid_lattice(braid):
    lat = intersection_lattice(braid)
    assert lat.whitney() == [1, 5, 6]
    assert sets(lat.ranks[2]) == {frozenset(s) for s in ({1, 3}, {1, 4, 5}, {2, 3, 5}, {2, 4})}
    proj = intersection_lattice(braid, projective=True)
    assert proj.whitney() == [1, 6, 11]
    assert {frozenset({0, 1, 2}), frozenset({0, 3, 4}), frozenset({0, 5})} <= sets(proj.ranks[2])


def test_braid_dense(braid):
    expected = {frozenset({j}) for j in range(6)} | {frozenset(s) for s in ({0, 1, 2}, {0, 3, 4}, {1, 4, 5}, {2, 3, 5})}
    assert sets(dense_flats(braid)) == expected


def test_esv_examples(braid):
    rep = esv_check(braid, [1, 1, 1, 1, 1])
    assert not rep.valid
    assert ("{1,4,5}", Fraction(3)) in [(f.label(), s) for f, s in rep.violations]
    assert esv_check(braid, [Fraction(1, 7)] * 5).valid
    # literal rule: a0 = -sum(a); {2} has weight 1
    rep = esv_check(braid, [0, 1, 1, 0, -2])
    assert sorted(f.label() for f, _ in rep.violations) == ["{0,1,2}", "{0,3,4}", "{2}", "{3}"]


def test_empty_and_errors():
    empty = fixture_arrangement("empty.json")
    lat = intersection_lattice(empty)
    assert len(lat.flats()) == 1 and lat.flats()[0].rank == 0
    with pytest.raises(ArrangementError):
        load_arrangement('{"ambient_dim": 2, "forms": [{"coeffs": ["0", "0"], "const": "1"}]}')
    with pytest.raises(ArrangementError):
        load_arrangement('{"ambient_dim": 1, "forms": [{"coeffs": ["1"], "const": "1"}, {"coeffs": ["2"], "const": "2"}]}')
    with pytest.raises(ArrangementError):
        load_arrangement("{not json")


def test_relabel_preserves_whitney(braid):
    perm = [5, 3, 1, 2, 4]
    assert intersection_lattice(braid.relabel(perm)).whitney() == [1, 5, 6]


@pytest.mark.parametrize("name", LATTICE_FIXTURES)
@pytest.mark.parametrize("projective", [False, True])
def test_moebius_identities(name, projective):
    """sum of mu over [bottom, X] vanishes for X above the bottom."""
    arr = fixture_arrangement(name)
    lat = intersection_lattice(arr, projective=projective)
    flats = lat.flats()
    for x in flats:
        if x.rank == 0:
            assert x.moebius == 1
            continue
        below = [y for y in flats if y.hyperplanes <= x.hyperplanes]
        assert sum(y.moebius for y in below) == 0
        assert (-1) ** x.rank * x.moebius > 0


@pytest.mark.parametrize("name", LATTICE_FIXTURES)
def test_whitney_equals_betti(name):
    arr = fixture_arrangement(name)
    assert intersection_lattice(arr).whitney() == build_os(arr).dims()


@pytest.mark.parametrize("name", LATTICE_FIXTURES)
def test_projective_poincare_factor(name):
    """Poincare polynomial of the cone is (1 + t) times the affine one."""
    arr = fixture_arrangement(name)
    aff = intersection_lattice(arr).whitney()
    proj = intersection_lattice(arr, projective=True).whitney()
    expect = [0] * (len(aff) + 1)
    for i, c in enumerate(aff):
        expect[i] += c
        expect[i + 1] += c
    # the lattice stops below the empty top element of the cone
    assert proj == expect[: len(proj)]
