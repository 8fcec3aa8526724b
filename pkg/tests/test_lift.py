from fractions import Fraction

import numpy as np
import pytest

from flat_signatures.blocks import BlockSpec, block_rep
from flat_signatures.errors import AmbiguousTrace, EllipticBoundary
from flat_signatures.group import SL2Element, mul
from flat_signatures.lift import (
    LiftedElement,
    base_lift_eval,
    central_power,
    euler_cocycle,
    iterated_translation,
    lifted_inverse,
    lifted_mul,
    lifted_product,
    lifted_word,
    relative_euler,
    toledo,
    translation_number,
)
from flat_signatures.lift import circle
from flat_signatures.surfaces import random_element, random_representation

F = Fraction

HYPERBOLIC = SL2Element.rational(2, 0, 0, F(1, 2))


def test_base_lift_examples():
    assert base_lift_eval(SL2Element.identity(), 0.37) == pytest.approx(0.37)
    assert base_lift_eval(SL2Element.rotation(F(1, 2)), 0.0) == pytest.approx(1.5)
    assert base_lift_eval(HYPERBOLIC, 0.0) == pytest.approx(0.0)


def test_base_lift_is_equivariant():
    g = SL2Element.rational(3, 1, 2, 1)
    for x in (0.1, 0.45, 0.9):
        assert base_lift_eval(g, x + 1) == pytest.approx(base_lift_eval(g, x) + 1)
        assert base_lift_eval(g, x + 2) == pytest.approx(base_lift_eval(g, x) + 2)


def test_base_lift_is_monotone():
    g = SL2Element.rational(1, 4, 0, 1)
    xs = [i / 20 for i in range(41)]
    values = [base_lift_eval(g, x) for x in xs]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("t", [F(1, 3), F(1, 2), F(5, 4), F(7, 4)])
def test_canonical_rotation_translation(t):
    assert translation_number(LiftedElement.canonical(SL2Element.rotation(t))) == 2 - t


def test_square_of_quarter_turn_is_central():
    lift = LiftedElement.canonical(SL2Element.rotation(F(1, 2)))
    square = lifted_mul(lift, lift)
    assert square.base.rotation_turn == 1
    assert central_power(square) == 3
    assert square.transl == 3


def test_lift_times_inverse_is_trivial():
    g = SL2Element.rational(3, 1, 2, 1)
    lift = LiftedElement(base=g, offset=2)
    one = lifted_mul(lift, lifted_inverse(lift))
    assert central_power(one) == 0


def test_central_shift_adds_to_translation():
    assert LiftedElement.canonical(HYPERBOLIC).transl == 0
    assert lifted_mul(LiftedElement.central(1), LiftedElement.canonical(HYPERBOLIC)).transl == 1
    lift = LiftedElement.canonical(SL2Element.rotation(F(1, 3)))
    assert lift.shifted(2).transl == lift.transl + 2


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_euler_cocycle_values_are_even(seed):
    rng = np.random.default_rng(seed)
    values = set()
    for _ in range(2500):
        g1, g2 = random_element(rng, 1.5), random_element(rng, 1.5)
        values.add(euler_cocycle(g1, g2))
    assert values <= {-2, 0, 2, 4}


def test_lifted_product_is_associative(rng):
    lifts = [LiftedElement.canonical(random_element(rng)) for _ in range(4)]
    left = lifted_mul(lifted_mul(lifts[0], lifts[1]), lifted_mul(lifts[2], lifts[3]))
    right = lifted_product(lifts)
    assert left.offset == right.offset
    assert np.allclose(left.base.array(), right.base.array())


@pytest.mark.parametrize("seed", [11, 12])
def test_lifted_triples_associate(seed):
    rng = np.random.default_rng(seed)
    for _ in range(500):
        a, b, c = (
            LiftedElement(base=random_element(rng, 1.5), offset=int(rng.integers(-2, 3)))
            for _ in range(3)
        )
        left = lifted_mul(lifted_mul(a, b), c)
        right = lifted_mul(a, lifted_mul(b, c))
        assert left.offset == right.offset
        assert np.allclose(left.base.array(), right.base.array())


def test_iterated_translation_matches_closed_form(rng):
    for _ in range(5):
        g = random_element(rng)
        lift = LiftedElement.canonical(g)
        assert iterated_translation(lift, 2048) == pytest.approx(float(lift.transl), abs=2e-2)


@pytest.mark.parametrize("steps", [1, 2, 16])
def test_refinement_setting_keeps_values(steps):
    g = SL2Element.rational(3, 1, 2, 1)
    before = base_lift_eval(g, 0.4)
    assert base_lift_eval(g, 0.4, steps) == pytest.approx(before, abs=1e-9)
    assert LiftedElement.canonical(g, steps)(0.4) == pytest.approx(before, abs=1e-9)
    assert circle.DEFAULT_STEPS == 4


def test_refinement_setting_must_be_positive():
    with pytest.raises(ValueError):
        base_lift_eval(SL2Element.rational(3, 1, 2, 1), 0.4, 0)


def test_lift_steps_are_carried_through_products():
    a = LiftedElement.canonical(SL2Element.rational(3, 1, 2, 1), 12)
    b = LiftedElement.canonical(HYPERBOLIC)
    assert lifted_mul(a, b).steps == 12
    assert lifted_inverse(a).steps == 12
    assert a.shifted(2).steps == 12


@pytest.mark.parametrize("steps", [2, 8])
def test_toledo_does_not_depend_on_lift_steps(phi_minus, steps):
    assert toledo(phi_minus, steps) == toledo(phi_minus) == F(1, 6)
    fuchsian = block_rep(BlockSpec.of("pants-fuchsian-pm2"))
    assert relative_euler(fuchsian, steps) == 1


def test_numeric_near_parabolic_translation_is_refused():
    lift = LiftedElement.canonical(SL2Element.numeric(1.0, 1.0, 0.0, 1.0))
    with pytest.raises(AmbiguousTrace):
        translation_number(lift)


def test_numeric_central_translation():
    assert translation_number(LiftedElement.canonical(SL2Element.numeric(-1.0, 0, 0, -1.0))) == 1
    assert translation_number(LiftedElement.canonical(SL2Element.numeric(1.0, 0, 0, 1.0))) == 0


def test_toledo_of_odd_pants(phi_minus, phi_plus):
    assert toledo(phi_minus) == F(1, 6)
    assert toledo(phi_plus) == F(-1, 6)


def test_relative_euler_examples():
    assert relative_euler(block_rep(BlockSpec.of("pants-borel-0"))) == 0
    fuchsian = block_rep(BlockSpec.of("pants-fuchsian-pm2"))
    assert relative_euler(fuchsian) == 1
    assert toledo(fuchsian) == 1


def test_relative_euler_refuses_elliptic_boundary(phi_minus):
    with pytest.raises(EllipticBoundary):
        relative_euler(phi_minus)


@pytest.mark.parametrize("turn", [F(1, 3), F(1, 2), F(2, 3)])
def test_cone_angle_toledo_on_elliptic_torus(turn):
    rep = block_rep(BlockSpec.of("torus-elliptic-pm2", turn=turn))
    # T = -chi - sum_j (1 - t_j) on the one-holed torus
    assert toledo(rep) == pytest.approx(float(turn))


def test_product_of_rotations_lifts_consistently():
    a, b = SL2Element.rotation(F(1, 3)), SL2Element.rotation(F(2, 3))
    lift = lifted_mul(LiftedElement.canonical(a), LiftedElement.canonical(b))
    assert lift.base.rotation_turn == mul(a, b).rotation_turn == 1
    assert lift.transl == (2 - F(1, 3)) + (2 - F(2, 3))


def _toledo_with_free_lifts(rep, rng):
    """-(sum of boundary translation numbers - k) for randomly shifted handle and boundary lifts."""
    factors = []
    for a, b in rep.handles:
        la = LiftedElement(base=a, offset=int(rng.integers(-3, 4)))
        lb = LiftedElement(base=b, offset=int(rng.integers(-3, 4)))
        factors += [la, lb, lifted_inverse(la), lifted_inverse(lb)]
    boundary = [LiftedElement(base=c, offset=int(rng.integers(-3, 4))) for c in rep.boundary]
    k = lifted_word(factors + boundary).central_power
    return -(sum(float(translation_number(x)) for x in boundary) - k)


@pytest.mark.parametrize("g, n", [(0, 3), (1, 1), (1, 2), (2, 1)])
def test_toledo_does_not_depend_on_the_lifts(g, n):
    rng = np.random.default_rng(100 * g + n)
    for _ in range(50):
        rep = random_representation(g, n, rng)
        expected = float(toledo(rep))
        for _ in range(3):
            assert _toledo_with_free_lifts(rep, rng) == pytest.approx(expected, abs=1e-6)
