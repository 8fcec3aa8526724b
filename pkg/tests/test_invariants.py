from fractions import Fraction

import pytest

from flat_signatures.constructions import rotation_rep, rotation_signature
from flat_signatures.errors import UnsupportedSurface
from flat_signatures.group import ConjClass, UnitaryElement
from flat_signatures.invariants import (
    ValueFamily,
    ValueSetSpec,
    milnor_wood_bound,
    parse_family,
    rho_class,
    rho_per_boundary,
    rho_torus,
    signature_of,
    value_set,
)
from flat_signatures.surfaces import GroupShape, direct_sum_rep

F = Fraction


@pytest.mark.parametrize(
    "cls, rho",
    [
        (ConjClass.elliptic(F(1, 2)), 1),
        (ConjClass.elliptic(F(3, 2)), -1),
        (ConjClass.elliptic(F(5, 3)), F(-4, 3)),
        (ConjClass.parabolic(1, 1), -1),
        (ConjClass.parabolic(1, -1), 1),
        (ConjClass.parabolic(-1, 1), 0),
        (ConjClass.hyperbolic(F(5, 2)), 0),
        (ConjClass.hyperbolic(F(-5, 2)), 0),
    ],
)
def test_rho_of_boundary_classes(cls, rho):
    assert rho_class(cls) == rho


def test_rho_of_torus_elements():
    assert rho_torus(UnitaryElement.torus(1, 0, [F(1, 3)])) == F(2, 3)
    assert rho_torus(UnitaryElement.torus(1, 0, [0])) == 0
    # negative part enters with the opposite sign
    assert rho_torus(UnitaryElement.torus(1, 1, [F(1, 3), F(1, 3)])) == 0
    assert rho_torus(UnitaryElement.torus(0, 1, [F(3, 2)])) == F(1, 2)


def test_odd_pants_signatures(phi_minus, phi_plus):
    report = signature_of(phi_minus)
    assert report.signature_formula == -1
    assert report.toledo == F(1, 6)
    assert report.rho_total == F(-4, 3)
    assert report.rho_per_boundary == (1, -1, F(-4, 3))
    assert report.relative_euler is None
    assert report.ok

    assert signature_of(phi_plus).signature_formula == 1


@pytest.mark.parametrize(
    "turns",
    [
        [F(1, 2), F(1, 2), F(1)],
        [F(1, 2), F(3, 2), F(1, 2), F(3, 2)],
        [F(2, 3), F(2, 3), F(2, 3)],
        [F(4, 3), F(4, 3), F(4, 3)],
    ],
)
def test_rotation_signature_matches_formula(turns):
    rep = rotation_rep(0, turns)
    report = signature_of(rep)
    assert report.toledo == 0
    assert report.signature_formula == rotation_signature(turns)


def test_rotation_parity_flag():
    report = signature_of(rotation_rep(1, [F(1, 2), F(3, 2)]))
    assert report.flags["parity_even"]
    assert report.signature_formula == 0


@pytest.mark.parametrize(
    "shape, chi, genus, bound",
    [
        (GroupShape(unitary=False, p=1, q=1), -1, 0, 2),
        (GroupShape(unitary=False, p=2, q=2), -2, 1, 8),
        (GroupShape(unitary=True, p=2, q=1), -2, 1, 6),
        (GroupShape(unitary=True, p=1, q=0), -1, 1, 0),
        (GroupShape(unitary=True, p=2, q=0), -2, 1, 2),
        (GroupShape(unitary=True, p=2, q=0), -2, 0, 4),
    ],
)
def test_milnor_wood_bound(shape, chi, genus, bound):
    assert milnor_wood_bound(shape, chi, genus) == bound


def test_milnor_wood_needs_nonpositive_chi():
    with pytest.raises(ValueError):
        milnor_wood_bound(GroupShape(unitary=False, p=1, q=1), 1)


@pytest.mark.parametrize(
    "family, g, n, p, q, expected",
    [
        ("main_sp", 0, 3, 1, 0, [-2, -1, 0, 1, 2]),
        ("main_sp", 1, 1, 2, 0, [-4, -3, -2, -1, 0, 1, 2, 3, 4]),
        ("paraelliptic", 0, 4, 1, 0, [-4, -3, -2, -1, 0, 1, 2, 3, 4]),
        ("hyperparabolic", 1, 1, 1, 0, [-2, -1, 0, 1, 2]),
        ("elliptic", 1, 1, 1, 0, [-2, 2]),
        ("elliptic", 0, 3, 1, 0, [-2, 2]),
        ("elliptic", 0, 4, 1, 0, [-4, 0, 4]),
        ("elliptic", 1, 2, 1, 0, [-4, -2, 0, 2, 4]),
        ("so2", 0, 3, 1, 0, [-2, 0, 2]),
        ("so2_elliptic", 0, 4, 1, 0, [-4, 0, 4]),
        ("up", 1, 2, 2, 0, [-2, -1, 0, 1, 2]),
        ("up", 1, 1, 2, 0, [0]),
        ("up", 1, 1, 1, 0, [0]),
        ("up", 0, 3, 2, 0, [-2, -1, 0, 1, 2]),
        ("upq_genus0", 0, 3, 1, 1, [-2, -1, 0, 1, 2]),
        ("upp_times", 0, 3, 1, 1, [-2, -1, 0, 1, 2]),
    ],
)
def test_value_sets(family, g, n, p, q, expected):
    spec = ValueSetSpec(family=parse_family(family), genus=g, boundaries=n, p=p, q=q)
    assert value_set(spec) == expected


def test_value_sets_refuse_small_surfaces():
    with pytest.raises(UnsupportedSurface):
        value_set(ValueSetSpec(family=ValueFamily.MAIN_SP, genus=0, boundaries=2))
    with pytest.raises(UnsupportedSurface):
        value_set(ValueSetSpec(family=ValueFamily.SO2, genus=3, boundaries=1))


def test_value_set_spec_validation():
    with pytest.raises(ValueError):
        ValueSetSpec(family=ValueFamily.UPP_TIMES, genus=1, boundaries=1, p=2, q=1)
    with pytest.raises(ValueError):
        ValueSetSpec(family=ValueFamily.MAIN_SP, genus=1, boundaries=1, p=0)


@pytest.mark.parametrize(
    "name, family",
    [
        ("MainSp", ValueFamily.MAIN_SP),
        ("sp", ValueFamily.MAIN_SP),
        ("HyperparabolicSL2", ValueFamily.HYPERPARABOLIC),
        ("so2-elliptic", ValueFamily.SO2_ELLIPTIC),
        ("upq-genus0", ValueFamily.UPQ_GENUS0),
        (ValueFamily.UP, ValueFamily.UP),
    ],
)
def test_parse_family(name, family):
    assert parse_family(name) == family


def test_parse_family_rejects_unknown_names():
    with pytest.raises(ValueError):
        parse_family("hyperbolic")


def test_direct_sum_rho_adds_blockwise(phi_minus):
    rep = direct_sum_rep([phi_minus, phi_minus])
    assert rho_per_boundary(rep) == [2, -2, F(-8, 3)]
    assert signature_of(rep).signature_formula == -2
