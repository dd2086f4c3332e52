from math import comb

import pytest

from arrtool import linalg
from arrtool.holonomy import (
    HolonomyPresentation,
    hall_basis,
    holonomy_presentation,
    lcs_dims,
    lcs_dims_bruteforce,
    witt_dim,
)
from arrtool.orlik_solomon import build_os

from conftest import LATTICE_FIXTURES, fixture_arrangement

BRAID_D3 = 10  # frozen after agreement of the Hall-basis and brute-force computations


def test_braid_presentation(braid_os):
    p = holonomy_presentation(braid_os)
    assert p.n == 5
    assert p.relation_dim == 6
    text = [p.format_relation(r) for r in p.relations]
    assert "[x1,x3]" in text and "[x2,x4]" in text
    # local relations at {1,4,5}: [x1 + x4 + x5, x_j] = 0
    rels = p.relation_vectors()
    pairs = p.pairs
    local = {pairs.index((0, 3)): 1, pairs.index((0, 4)): 1}  # [x1,x4] + [x1,x5]
    vec = [local.get(i, 0) for i in range(len(pairs))]
    assert linalg.in_span(rels, vec)
    # parallel lines are free: [x1,x2] is not a relation
    vec = [1 if pr == (0, 1) else 0 for pr in pairs]
    assert not linalg.in_span(rels, vec)


def test_braid_dims(braid_os):
    p = holonomy_presentation(braid_os)
    assert lcs_dims(p) == [5, 4, BRAID_D3]
    assert lcs_dims_bruteforce(p) == [5, 4, BRAID_D3]


@pytest.mark.parametrize("name", LATTICE_FIXTURES)
def test_relations_annihilate_cup_kernel(name):
    A = build_os(fixture_arrangement(name))
    p = holonomy_presentation(A)
    b2 = A.dims()[2] if len(A.dims()) > 2 else 0
    assert p.relation_dim == b2
    if p.cup_matrix and b2:
        kernel = linalg.nullspace(linalg.transpose(p.cup_matrix, b2), len(p.pairs))
        for rel in p.relation_vectors():
            for z in kernel:
                assert sum(x * y for x, y in zip(rel, z)) == 0
    dims = lcs_dims(p, 2)
    assert dims[1] == comb(p.n, 2) - b2


@pytest.mark.parametrize("name", LATTICE_FIXTURES)
def test_hall_vs_bruteforce(name):
    p = holonomy_presentation(build_os(fixture_arrangement(name)))
    assert lcs_dims(p) == lcs_dims_bruteforce(p)


def test_free_and_abelian():
    assert lcs_dims(HolonomyPresentation(2, [], [])) == [2, 1, 2]
    assert lcs_dims(HolonomyPresentation(1, [], [])) == [1, 0, 0]
    # generic lines: all generators commute
    p = holonomy_presentation(build_os(fixture_arrangement("generic3.json")))
    assert p.relation_dim == 3 and lcs_dims(p) == [3, 0, 0]


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_hall_basis_counts(n):
    for d in (1, 2, 3):
        assert len(hall_basis(n, d)) == witt_dim(n, d)
    assert lcs_dims(HolonomyPresentation(n, [], [])) == [witt_dim(n, d) for d in (1, 2, 3)]


def test_degree_cap(braid_os):
    with pytest.raises(ValueError):
        lcs_dims(holonomy_presentation(braid_os), 4)
