from fractions import Fraction

import numpy as np
import pytest

from flat_signatures.blocks import BlockSpec, block_rep
from flat_signatures.constructions import rotation_rep
from flat_signatures.errors import HolonomyMismatch, InvalidSurface, NonStandardIndex
from flat_signatures.group import (
    ConjClass,
    ConjKind,
    SL2Element,
    UnitaryRealization,
    commutator,
    inverse,
    product,
)
from flat_signatures.invariants import milnor_wood_bound, signature_of
from flat_signatures.lift import relative_euler, toledo
from flat_signatures.oracle import signature_direct
from flat_signatures.surfaces import (
    Representation,
    check_relator,
    conjugate_rep,
    cycle_boundaries,
    glue,
    involution_rep,
    negate_boundaries,
    presentation,
    random_element,
    random_representation,
    random_unitary_representation,
    reorder_boundaries,
    swap_boundaries,
)

F = Fraction


def sig(rep) -> int:
    return signature_of(rep).signature_formula


@pytest.mark.parametrize(
    "g, n, chi, length, rank",
    [(0, 3, -1, 3, 2), (1, 1, -1, 5, 2), (2, 1, -3, 9, 4), (1, 2, -2, 6, 3)],
)
def test_presentations(g, n, chi, length, rank):
    surface = presentation(g, n)
    assert surface.chi == chi
    assert surface.relator_length == length == len(surface.relator)
    assert surface.free_rank == rank


def test_relator_letters():
    assert presentation(1, 2).relator == [
        ("A1", 1), ("B1", 1), ("A1", -1), ("B1", -1), ("C1", 1), ("C2", 1)
    ]


def test_closed_surfaces_are_refused():
    with pytest.raises(InvalidSurface):
        presentation(2, 0)
    with pytest.raises(InvalidSurface):
        presentation(-1, 2)


def test_relator_check_catches_tampering(phi_minus):
    assert check_relator(phi_minus) == 0.0
    bad = phi_minus.model_copy(
        update={"boundary": (SL2Element.rotation(F(1, 2)),) + phi_minus.boundary[1:2] * 2}
    )
    with pytest.raises(HolonomyMismatch):
        check_relator(bad)


def test_annotations_must_match_classification(phi_minus):
    with pytest.raises(HolonomyMismatch):
        Representation.from_images(
            presentation(0, 3), [], list(phi_minus.boundary), [ConjClass.elliptic(F(1, 2))] * 3
        )


def test_glue_adds_signatures(phi_minus):
    # C3 of phi- is elliptic of turn 5/3, the inverse of k(pi/3)
    other = rotation_rep(0, [F(1, 3), F(1, 2), F(7, 6)])
    assert sig(other) == 2
    glued = glue(phi_minus, 2, other, 0)
    assert (glued.genus, glued.n) == (0, 4)
    assert sig(glued) == sig(phi_minus) + sig(other) == 1
    assert check_relator(glued) < 1e-8


def test_glue_only_standard_indices(phi_minus):
    other = rotation_rep(0, [F(1, 3), F(1, 2), F(7, 6)])
    with pytest.raises(NonStandardIndex):
        glue(phi_minus, 0, other, 0)


def test_glue_rejects_mismatched_boundaries(phi_minus, phi_plus):
    with pytest.raises(HolonomyMismatch):
        glue(phi_minus, 2, phi_plus, 0)


def test_involution_negates_signature(phi_minus):
    mirrored = involution_rep(phi_minus)
    assert sig(mirrored) == 1
    assert toledo(mirrored) == -toledo(phi_minus)
    kinds = [c.kind for c in phi_minus.boundary_classes]
    assert [c.kind for c in mirrored.boundary_classes] == kinds


def test_boundary_moves_keep_the_signature(phi_minus):
    for rep in (
        cycle_boundaries(phi_minus),
        swap_boundaries(phi_minus, 0),
        reorder_boundaries(phi_minus, [2, 0, 1]),
        conjugate_rep(phi_minus, SL2Element.rational(2, 1, 1, 1)),
    ):
        check_relator(rep)
        assert sig(rep) == -1


def test_reorder_permutes_classes(phi_minus):
    rep = reorder_boundaries(phi_minus, [2, 0, 1])
    assert rep.boundary_classes[0] == phi_minus.boundary_classes[2]
    assert rep.boundary_classes[1:] == phi_minus.boundary_classes[:2]
    with pytest.raises(NonStandardIndex):
        reorder_boundaries(phi_minus, [0, 0, 1])


def test_negation_mask_must_be_even():
    fuchsian = block_rep(BlockSpec.of("pants-fuchsian-pm2"))
    with pytest.raises(HolonomyMismatch):
        negate_boundaries(fuchsian, [0])
    flipped = negate_boundaries(fuchsian, [0, 2])
    check_relator(flipped)
    assert flipped.boundary_classes[0].trace_sign == -1
    assert flipped.boundary_classes[2].trace_sign == 1


def test_random_representations_close_up(rng):
    for g, n in [(0, 3), (1, 1), (1, 2), (2, 1)]:
        rep = random_representation(g, n, rng)
        assert check_relator(rep) < 1e-8
        assert (rep.genus, rep.n) == (g, n)


@pytest.mark.parametrize("g, n", [(0, 3), (0, 4), (1, 1), (1, 2)])
def test_random_signatures_are_even_without_positive_cusps(g, n):
    rng = np.random.default_rng(1000 + 10 * g + n)
    for k in range(250):
        rep = random_representation(g, n, rng, boundary="no_par_pos")
        report = signature_of(rep)
        assert report.signature_formula % 2 == 0
        assert abs(report.signature_formula) <= report.bound
        if k % 19 == 0:
            assert signature_direct(rep).signature == report.signature_formula


def test_toledo_is_relative_euler_for_hyperbolic_boundary(rng):
    for _ in range(5):
        rep = random_representation(0, 3, rng, boundary="hyperbolic")
        assert toledo(rep) == pytest.approx(relative_euler(rep))


def test_random_elliptic_boundaries(rng):
    rep = random_representation(0, 3, rng, boundary="elliptic")
    assert all(c.kind == ConjKind.ELLIPTIC for c in rep.boundary_classes)


def test_random_filter_name_is_checked(rng):
    with pytest.raises(ValueError):
        random_representation(0, 3, rng, boundary="loxodromic")


def _partner(c: SL2Element, g: int, n: int, rng) -> Representation:
    """Random (g, n) representation whose first boundary image is c^-1."""
    handles = [(random_element(rng), random_element(rng)) for _ in range(g)]
    free = [inverse(c)] + [random_element(rng) for _ in range(n - 2)]
    last = inverse(product([commutator(a, b) for a, b in handles] + free))
    return Representation.from_images(presentation(g, n), handles, free + [last])


@pytest.mark.parametrize(
    "left, right, seed",
    [((0, 3), (0, 3), 41), ((1, 1), (0, 3), 42), ((0, 3), (1, 2), 43), ((1, 2), (1, 1), 44)],
)
def test_random_gluing_adds_signatures(left, right, seed):
    rng = np.random.default_rng(seed)
    for k in range(25):
        rep1 = random_representation(*left, rng)
        rep2 = _partner(rep1.boundary[-1], *right, rng)
        glued = glue(rep1, rep1.n - 1, rep2, 0, conj=SL2Element.identity())
        assert (glued.genus, glued.n) == (left[0] + right[0], left[1] + right[1] - 2)
        assert sig(glued) == sig(rep1) + sig(rep2)
        if k % 8 == 0:
            oracle = [signature_direct(r).signature for r in (glued, rep1, rep2)]
            assert oracle[0] == oracle[1] + oracle[2] == sig(glued)


@pytest.mark.parametrize("realization", ["torus", "block_matrix"])
@pytest.mark.parametrize("g, n, p", [(1, 1, 2), (1, 2, 1), (1, 2, 2), (2, 2, 2), (1, 3, 3)])
def test_random_unitary_signatures_respect_the_refined_bound(realization, g, n, p):
    rng = np.random.default_rng(7 * g + 5 * n + 3 * p)
    for _ in range(50):
        rep = random_unitary_representation(g, n, p, rng, realization=realization)
        assert check_relator(rep) < 1e-8
        report = signature_of(rep)
        assert report.bound == max(0, n * p - 2)
        assert abs(report.signature_formula) <= report.bound
        assert report.toledo == 0


def test_random_unitary_handles_follow_the_realization(rng):
    rep = random_unitary_representation(2, 2, 2, rng, realization="block_matrix")
    assert all(
        x.realization == UnitaryRealization.BLOCK_MATRIX for pair in rep.handles for x in pair
    )
    assert all(c.realization == UnitaryRealization.DIAGONAL_TORUS for c in rep.boundary)
    assert milnor_wood_bound(rep.shape, rep.surface.chi, rep.genus) == 2

    torus = random_unitary_representation(2, 2, 2, rng, realization="torus")
    assert torus.handles[1][0].realization == UnitaryRealization.DIAGONAL_TORUS


@pytest.mark.parametrize("realization", ["torus", "block_matrix"])
def test_random_unitary_agrees_with_the_oracle(realization):
    rng = np.random.default_rng(31)
    for _ in range(5):
        rep = random_unitary_representation(1, 2, 2, rng, realization=realization)
        assert signature_direct(rep).signature == signature_of(rep).signature_formula


def test_random_unitary_planar_surfaces_close_up(rng):
    rep = random_unitary_representation(0, 3, 2, rng)
    assert check_relator(rep) < 1e-8
    assert rep.handles == ()
    assert abs(signature_of(rep).signature_formula) <= 2


def test_random_unitary_arguments_are_checked(rng):
    with pytest.raises(ValueError):
        random_unitary_representation(1, 2, 2, rng, realization="dense")
    with pytest.raises(ValueError):
        random_unitary_representation(1, 2, 0, rng)
