import pytest

from arrtool.laurent import LaurentElement, format_laurent, laurent_d
from arrtool.massey import MasseyError, massey_triple
from arrtool.textio import parse_laurent
from arrtool.weights import WindowBox, load_weight_matrix
from arrtool.orlik_solomon import build_os

from conftest import fixture_arrangement

CLASSES = ["(w1-w4)*q2", "(w2-w3)*q1", "(w2-w3)*q1"]


@pytest.fixture(scope="module")
def braid_result(braid_os, braid_a):
    xs = [parse_laurent(braid_os, 2, t) for t in CLASSES]
    return massey_triple(braid_os, braid_a, *xs, WindowBox.radius(2, 4))


def test_braid_nonzero(braid_result, braid_os):
    res = braid_result
    assert res.verdict == "NONZERO"
    assert res.target == (2, 1)
    assert res.equivalent(parse_laurent(braid_os, 2, "2/r*w2^w3*q1^2 q2"))
    assert format_laurent(res.representative) == "2/r*w2^w3 * q1^2 q2^1"
    assert res.indeterminacy_dim == 1


def test_braid_certificate(braid_result, braid_os, braid_a):
    """d r12 = x1 x2 and d r23 = x2 x3 in the Laurent algebra."""
    res = braid_result
    x1, x2, x3 = [parse_laurent(braid_os, 2, t) for t in CLASSES]
    from arrtool.laurent import laurent_multiply

    assert laurent_d(braid_os, braid_a, res.certificate["r12"]) == laurent_multiply(braid_os, x1, x2)
    assert laurent_d(braid_os, braid_a, res.certificate["r23"]) == laurent_multiply(braid_os, x2, x3)
    assert not laurent_d(braid_os, braid_a, res.representative)


def test_not_equivalent_to_zero(braid_result, braid_os):
    assert not braid_result.equivalent(LaurentElement(braid_os, 2, {}))
    assert not braid_result.equivalent(parse_laurent(braid_os, 2, "2/r*w2^w3*q1^2"))


def test_indeterminacy_shift_is_equivalent(braid_result):
    shifted = braid_result.representative + braid_result.indeterminacy_basis[0].scale(7)
    assert braid_result.equivalent(shifted)


def test_zero_products_give_zero(braid_os, braid_a):
    """<x, 0, y> is defined and vanishes."""
    xs = [parse_laurent(braid_os, 2, t) for t in ("(w1-w4)*q2", "0", "(w2-w3)*q1")]
    res = massey_triple(braid_os, braid_a, *xs, WindowBox.radius(2, 2), zero_components=[(0, 1), (1, 0), (1, 0)])
    assert res.verdict == "ZERO"


def test_untwisted_pencil_undefined():
    """Without twisting, w1 w2 is a nonzero class for a central pencil, so <w1,w2,w3> is undefined."""
    A = build_os(fixture_arrangement("pencil3.json"))
    a = load_weight_matrix([["0", "0", "0"]])
    xs = [LaurentElement(A, 1, {(0,): A.gen(j)}) for j in (1, 2, 3)]
    res = massey_triple(A, a, *xs, WindowBox.radius(1, 1))
    assert res.verdict == "UNDEFINED"


def test_errors(braid_os, braid_a):
    closed = parse_laurent(braid_os, 2, "(w2-w3)*q1")
    not_closed = parse_laurent(braid_os, 2, "w1*q1")
    with pytest.raises(MasseyError):
        massey_triple(braid_os, braid_a, not_closed, closed, closed, WindowBox.radius(2, 4))
    with pytest.raises(MasseyError):
        massey_triple(braid_os, braid_a, closed, closed, closed, WindowBox.radius(2, 2))
    two = parse_laurent(braid_os, 2, "(w2-w3)*q1 + (w1-w4)*q2")
    with pytest.raises(MasseyError):
        massey_triple(braid_os, braid_a, two, closed, closed, WindowBox.radius(2, 4))
