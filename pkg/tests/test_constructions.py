from fractions import Fraction

import pytest

from flat_signatures.blocks import BlockSpec, block_rep
from flat_signatures.constructions import (
    PlanTarget,
    check_boundary_mode,
    execute,
    plan,
    realize,
    rotation_signature,
    so2_rep,
    so2_turns,
    solve_turns,
    sp_rep,
    up_rep,
    upp_rep,
    upq_genus0_rep,
)
from flat_signatures.errors import PlanIncomplete, UnachievableValue, VerificationFailure
from flat_signatures.group import ConjKind
from flat_signatures.invariants import ValueFamily, ValueSetSpec, signature_of, value_set
from flat_signatures.surfaces import check_relator

F = Fraction

SURFACES = [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)]


def sig(rep) -> int:
    return signature_of(rep).signature_formula


def values(family, g, n, p=1, q=0):
    return value_set(ValueSetSpec(family=family, genus=g, boundaries=n, p=p, q=q))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_so2_turns_cover_the_value_set(n):
    for m in values(ValueFamily.SO2, 0, n):
        turns = so2_turns(n, m)
        assert len(turns) == n
        assert sum(turns) % 2 == 0
        assert sum(1 for t in turns if t == 0) <= 1
        assert rotation_signature(turns) == m


@pytest.mark.parametrize("n", [3, 4, 5])
def test_so2_elliptic_turns(n):
    for m in values(ValueFamily.SO2_ELLIPTIC, 0, n):
        turns = so2_turns(n, m, elliptic=True)
        assert all(0 < t < 2 and t != 1 for t in turns)
        assert rotation_signature(turns) == m


def test_so2_prescribed_turn():
    assert so2_turns(3, 2, prescribed=F(1, 2), elliptic=True) == [F(1, 2), F(3, 4), F(3, 4)]
    rep = so2_rep(1, 3, 2, prescribed=F(1, 2), elliptic=True)
    assert rep.genus == 1
    assert sig(rep) == 2


@pytest.mark.parametrize(
    "n, m, kwargs",
    [(3, 1, {}), (3, 4, {}), (3, 0, {"elliptic": True}), (1, 0, {})],
)
def test_so2_unachievable(n, m, kwargs):
    with pytest.raises(UnachievableValue):
        so2_turns(n, m, **kwargs)


def test_solve_turns_with_identity_slots():
    turns = solve_turns([F(1, 2)], 3, 2, allow_identity=True)
    assert turns == [F(1, 2), F(3, 4), F(3, 4), F(0)]
    assert rotation_signature(turns) == 2
    with pytest.raises(UnachievableValue):
        solve_turns([F(1, 2)], 3, 1, allow_identity=True)


@pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
def test_up_rep(m):
    rep = up_rep(1, 2, 2, m)
    check_relator(rep)
    report = signature_of(rep)
    assert report.signature_formula == m
    assert report.toledo == 0


def test_up_rep_refuses_out_of_range():
    with pytest.raises(UnachievableValue):
        up_rep(1, 1, 2, 1)
    with pytest.raises(UnachievableValue):
        up_rep(0, 3, 2, 1)


@pytest.mark.parametrize("n, p, q", [(3, 1, 1), (4, 2, 1), (3, 0, 2)])
def test_upq_genus0_rep(n, p, q):
    for m in values(ValueFamily.UPQ_GENUS0, 0, n, p, q):
        rep = upq_genus0_rep(n, p, q, m)
        check_relator(rep)
        assert sig(rep) == m


def test_upq_factor_split():
    rep = upq_genus0_rep(3, 1, 1, 2)
    assert rep.provenance.params["factors"] == "1,-1"


def test_sp_rep_splits_across_blocks():
    rep = sp_rep(1, 1, 2, 3)
    assert len(rep.summands) == 2
    assert [sig(s) for s in rep.summands] == [2, 1]
    assert sig(rep) == 3


def test_upp_rep_with_compact_factor():
    rep = upp_rep(0, 3, 1, 2, 3)
    assert rep.shape.unitary
    assert (rep.shape.p, rep.shape.q) == (1, 2)
    assert sig(rep) == 3


@pytest.mark.parametrize("g, n", SURFACES)
@pytest.mark.parametrize(
    "family", [ValueFamily.PARAELLIPTIC, ValueFamily.HYPERPARABOLIC, ValueFamily.MAIN_SP]
)
def test_planner_realizes_every_value(family, g, n):
    for m in values(family, g, n):
        rep = realize(PlanTarget(family, g, n, m))
        assert check_relator(rep) < 1e-8
        assert sig(rep) == m
        check_boundary_mode(rep, family)


def test_paraelliptic_odd_values_use_phi_pants():
    rep = realize(PlanTarget(ValueFamily.PARAELLIPTIC, 0, 3, -1))
    assert max(abs(t) for t in rep.boundary_traces()) <= 2 + 1e-9
    kinds = [c.kind for c in rep.boundary_classes]
    assert ConjKind.HYPERBOLIC not in kinds


@pytest.mark.parametrize(
    "g, n, reachable",
    [(0, 3, [-2, 2]), (0, 4, [-4, 0, 4]), (1, 1, [-2, 2]), (1, 2, [-4, 0, 4])],
)
def test_elliptic_plans(g, n, reachable):
    for m in reachable:
        rep = realize(PlanTarget(ValueFamily.ELLIPTIC, g, n, m))
        assert sig(rep) == m
        assert all(c.kind == ConjKind.ELLIPTIC for c in rep.boundary_classes)


@pytest.mark.parametrize("m", [-2, 2])
def test_elliptic_parity_obstruction(m):
    with pytest.raises(PlanIncomplete):
        plan(PlanTarget(ValueFamily.ELLIPTIC, 1, 2, m))


@pytest.mark.parametrize(
    "family, g, n, m",
    [
        (ValueFamily.ELLIPTIC, 0, 3, 0),
        (ValueFamily.HYPERPARABOLIC, 0, 3, 3),
        (ValueFamily.MAIN_SP, 0, 2, 0),
        (ValueFamily.SO2, 0, 3, 1),
    ],
)
def test_plan_refuses_values_outside_the_set(family, g, n, m):
    with pytest.raises(UnachievableValue):
        plan(PlanTarget(family, g, n, m))


def test_plans_describe_themselves():
    assembly = plan(PlanTarget(ValueFamily.HYPERPARABOLIC, 1, 2, 3))
    text = assembly.describe()
    assert assembly.route in text
    assert sig(execute(assembly)) == 3


def test_boundary_mode_check(phi_minus):
    with pytest.raises(VerificationFailure):
        check_boundary_mode(phi_minus, ValueFamily.HYPERPARABOLIC)
    fuchsian = block_rep(BlockSpec.of("pants-fuchsian-pm2"))
    with pytest.raises(VerificationFailure):
        check_boundary_mode(fuchsian, ValueFamily.ELLIPTIC)
    check_boundary_mode(fuchsian, ValueFamily.HYPERPARABOLIC)
