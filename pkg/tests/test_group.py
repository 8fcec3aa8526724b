from fractions import Fraction

import numpy as np
import pytest
from pydantic import TypeAdapter, ValidationError

from flat_signatures.errors import AmbiguousTrace, HolonomyMismatch, NotElliptic
from flat_signatures.group import (
    ConjClass,
    ConjKind,
    SL2Element,
    UnitaryElement,
    boundary_conjugator,
    classify,
    commutator,
    conjugate,
    direct_sum,
    elliptic_angle,
    elliptic_turn,
    inverse,
    involution,
    is_identity,
    mul,
    negate,
    normal_form_conjugator,
    rational_sqrt,
)
from flat_signatures.group.models import GroupElement

F = Fraction


def test_rational_arithmetic_stays_exact():
    a = SL2Element.rational(2, 1, 3, 2)
    b = SL2Element.rational(F(1, 2), 0, 5, 2)
    ab = mul(a, b)
    assert ab.exact_entries == (F(6), F(2), F(23, 2), F(4))
    assert is_identity(mul(a, inverse(a)))
    assert mul(a, inverse(a)).exact_entries == (1, 0, 0, 1)


def test_rotations_compose_by_turns():
    r = mul(SL2Element.rotation(F(1, 3)), SL2Element.rotation(F(5, 3)))
    assert r.rotation_turn == 0
    assert negate(SL2Element.rotation(F(1, 2))).rotation_turn == F(3, 2)


def test_determinant_is_checked():
    with pytest.raises(ValueError):
        SL2Element.rational(1, 1, 1, 1)
    with pytest.raises(ValueError):
        SL2Element.numeric(2.0, 0.0, 0.0, 2.0)


def test_classify_examples():
    c = classify(SL2Element.rational(0, -1, 1, 0))
    assert c.kind == ConjKind.ELLIPTIC and c.turn == F(1, 2)

    c = classify(SL2Element.rational(1, 1, 0, 1))
    assert c.kind == ConjKind.PAR_POS and c.mu_sign == 1

    c = classify(SL2Element.rational(2, 0, 0, F(1, 2)))
    assert c.kind == ConjKind.HYPERBOLIC and c.trace_sign == 1 and c.trace == F(5, 2)

    c = classify(SL2Element.rational(-1, 3, 0, -1))
    assert c.kind == ConjKind.PAR_NEG

    assert classify(SL2Element.rational(-1, 0, 0, -1)).kind == ConjKind.MINUS_IDENTITY


def test_classify_refuses_numeric_traces_near_two():
    g = SL2Element.numeric(1.0 + 1e-12, 1.0, 0.0, 1.0 / (1.0 + 1e-12))
    with pytest.raises(AmbiguousTrace):
        classify(g)


@pytest.mark.parametrize(
    "entries, turn",
    [
        ((0, -1, 1, 0), F(1, 2)),
        ((1, 1, -1, 0), F(5, 3)),
        ((0, 1, -1, 0), F(3, 2)),
        ((0, -1, 1, 1), F(1, 3)),
    ],
)
def test_elliptic_turns(entries, turn):
    g = SL2Element.rational(*entries)
    assert elliptic_turn(g) == turn
    assert elliptic_angle(g) == pytest.approx(float(turn) * np.pi)


def test_elliptic_turn_of_hyperbolic_fails():
    with pytest.raises(NotElliptic):
        elliptic_turn(SL2Element.rational(2, 0, 0, F(1, 2)))


def test_involution_mirrors_classes():
    g = SL2Element.rational(1, 1, 0, 1)
    assert classify(involution(g)).mu_sign == -1
    assert classify(involution(SL2Element.rotation(F(1, 3)))).turn == F(5, 3)
    assert classify(g).mirrored() == classify(involution(g))


def test_negated_classes_match_classification():
    for g in [
        SL2Element.rational(1, 2, 0, 1),
        SL2Element.rational(3, 1, 2, 1),
        SL2Element.rational(0, -1, 1, 1),
    ]:
        assert classify(g).negated() == classify(negate(g))


def test_direct_sum_blocks():
    e = direct_sum([SL2Element.rotation(F(1, 2)), SL2Element.rotation(F(3, 2))])
    assert e.shape == (2, 2)
    assert [classify(b).turn for b in e.blocks] == [F(1, 2), F(3, 2)]
    with pytest.raises(ValueError):
        direct_sum([])


@pytest.mark.parametrize(
    "g",
    [
        SL2Element.rational(3, 1, 2, 1),
        SL2Element.rational(1, 3, 0, 1),
        SL2Element.rational(-1, 2, 0, -1),
        SL2Element.rational(0, -1, 1, 1),
        SL2Element.numeric(2.0, 1.5, -1.0, -0.25),
    ],
)
def test_normal_form_conjugates_back(g):
    h, normal = normal_form_conjugator(g)
    back = conjugate(normal, h)
    assert np.allclose(back.array(), g.array(), atol=1e-9)


def test_boundary_conjugator_matches_inverse():
    x = SL2Element.rational(3, 1, 2, 1)
    y = inverse(conjugate(x, SL2Element.rational(1, 2, 0, 1)))
    h = boundary_conjugator(x, y)
    assert np.allclose(conjugate(inverse(y), h).array(), x.array(), atol=1e-9)


def test_boundary_conjugator_rejects_class_mismatch():
    with pytest.raises(HolonomyMismatch):
        boundary_conjugator(SL2Element.rational(3, 1, 2, 1), SL2Element.rotation(F(1, 2)))


def test_commutator_of_borel_pair():
    a = SL2Element.rational(2, 0, 0, F(1, 2))
    b = SL2Element.rational(F(1, 2), 1, 0, 2)
    assert commutator(a, b).exact_entries == (1, F(3, 2), 0, 1)


def test_rational_sqrt():
    assert rational_sqrt(F(9, 4)) == F(3, 2)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(-1)) is None


def test_torus_elements():
    e = UnitaryElement.torus(1, 1, [F(1, 3), F(1, 2)])
    assert np.allclose(np.diag(e.complex_matrix()), [np.exp(1j * np.pi / 3), 1j])
    with pytest.raises(ValueError):
        e.as_negative_part()
    u = UnitaryElement.torus(2, 0, [0, F(1, 2)]).as_negative_part()
    assert u.shape == (0, 2)


def test_conj_class_validation():
    with pytest.raises(ValueError):
        ConjClass.elliptic(1)
    with pytest.raises(ValueError):
        ConjClass(kind=ConjKind.PAR_POS)


def test_real_entries_refuse_pairs():
    with pytest.raises(ValidationError):
        SL2Element.model_validate({"matrix": [[["1.0", "0.0"], "0.0"], ["0.0", "1.0"]]})


def test_group_elements_load_by_their_fields():
    adapter = TypeAdapter(GroupElement)
    shift = np.array([[0, 1], [1, 0]], dtype=complex)
    for element in (
        SL2Element.rational(2, 1, 3, 2),
        UnitaryElement.torus(2, 0, [F(1, 3), F(5, 3)]),
        UnitaryElement.from_matrix(2, 0, shift),
    ):
        again = adapter.validate_python(element.model_dump(mode="json"))
        assert type(again) is type(element)
    with pytest.raises(ValidationError):
        adapter.validate_python({"realization": "block_matrix", "p": 2, "q": 0})
