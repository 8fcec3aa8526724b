import logging
import math
from fractions import Fraction

import numpy as np
from scipy.linalg import schur

from ..errors import AmbiguousTrace
from ..group import (
    ConjKind,
    SL2Element,
    UnitaryElement,
    classify,
    commutator,
    conjugate,
    inverse,
    product,
)
from .models import Provenance, Representation, presentation, resolve_classes

logger = logging.getLogger(__name__)

# Accepted boundary filters for random_representation.
BOUNDARY_FILTERS = {
    "any": None,
    "elliptic": (ConjKind.ELLIPTIC,),
    "hyperbolic": (ConjKind.HYPERBOLIC,),
    "non_elliptic": (ConjKind.HYPERBOLIC, ConjKind.PAR_POS, ConjKind.PAR_NEG),
    "no_par_pos": (ConjKind.ELLIPTIC, ConjKind.HYPERBOLIC, ConjKind.PAR_NEG),
}


def random_element(rng: np.random.Generator, spread: float = 1.0) -> SL2Element:
    """k(a) diag(e^s, e^-s) k(b) with uniform angles and s uniform in [0, spread]."""
    a, b = rng.uniform(0, 2 * math.pi, size=2)
    s = rng.uniform(0, spread)
    ka = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
    kb = np.array([[math.cos(b), -math.sin(b)], [math.sin(b), math.cos(b)]])
    return SL2Element.from_array(ka @ np.diag([math.exp(s), math.exp(-s)]) @ kb)


def random_elliptic(rng: np.random.Generator, spread: float = 1.0) -> SL2Element:
    t = rng.uniform(0.05, 1.95)
    while abs(t - 1) < 0.05:
        t = rng.uniform(0.05, 1.95)
    rot = SL2Element.numeric(
        math.cos(math.pi * t), -math.sin(math.pi * t), math.sin(math.pi * t), math.cos(math.pi * t)
    )
    return conjugate(rot, random_element(rng, spread))


def _kind_ok(c: SL2Element, allowed) -> bool:
    try:
        cls = classify(c)
    except AmbiguousTrace:
        return False
    return allowed is None or cls.kind in allowed


def random_representation(
    g: int,
    n: int,
    rng: np.random.Generator,
    boundary: str = "any",
    spread: float = 1.0,
    max_tries: int = 2000,
) -> Representation:
    """
    Random numeric SL(2,R) representation of the (g, n) surface.

    Handles and C_1..C_{n-1} are sampled, C_n is forced by the relator, and the draw is
    rejected until every boundary class passes the filter.
    """
    if boundary not in BOUNDARY_FILTERS:
        raise ValueError(
            f"Unknown boundary filter '{boundary}'. Use one of {list(BOUNDARY_FILTERS)}."
        )
    allowed = BOUNDARY_FILTERS[boundary]
    surface = presentation(g, n)

    for _ in range(max_tries):
        handles = [(random_element(rng, spread), random_element(rng, spread)) for _ in range(g)]
        if boundary == "elliptic":
            free = [random_elliptic(rng, spread) for _ in range(n - 1)]
        else:
            free = [random_element(rng, spread) for _ in range(n - 1)]
        if not all(_kind_ok(c, allowed) for c in free):
            continue
        head = product([commutator(a, b) for a, b in handles] + free)
        last = inverse(head)
        if not _kind_ok(last, allowed):
            continue
        bd = free + [last]
        return Representation.from_images(
            surface,
            handles,
            bd,
            resolve_classes(bd),
            provenance=Provenance(step="random", params={"filter": boundary}),
        )
    raise ValueError(
        f"No random ({g}, {n}) representation with '{boundary}' boundary after {max_tries} draws."
    )


UNITARY_REALIZATIONS = ("torus", "block_matrix")


def random_unitary_matrix(p: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random element of U(p): QR of a complex Gaussian matrix with phases fixed."""
    z = (rng.standard_normal((p, p)) + 1j * rng.standard_normal((p, p))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _random_turns(p: int, rng: np.random.Generator, denominator: int) -> list[Fraction]:
    return [Fraction(int(k), denominator) for k in rng.integers(0, 2 * denominator, size=p)]


def _shift(p: int) -> np.ndarray:
    return np.roll(np.eye(p, dtype=complex), 1, axis=0)


def _commutator_handle(target: np.ndarray, p: int) -> tuple[UnitaryElement, UnitaryElement]:
    """
    (A, B) with [A, B] = target^-1 for target in SU(p): A = V P V^*, B = V Q V^* with P the
    cyclic shift and Q diagonal, where target = V diag(e^{i pi s}) V^*.
    """
    t, v = schur(target, output="complex")
    s = np.angle(np.diag(t)) / math.pi
    q = np.concatenate([[0.0], np.cumsum(s[1:])])
    a = v @ _shift(p) @ v.conj().T
    b = v @ np.diag(np.exp(1j * math.pi * q)) @ v.conj().T
    return UnitaryElement.from_matrix(p, 0, a), UnitaryElement.from_matrix(p, 0, b)


def random_unitary_representation(
    g: int,
    n: int,
    p: int,
    rng: np.random.Generator,
    realization: str = "torus",
    denominator: int = 12,
) -> Representation:
    """
    Random U(p) representation of the (g, n) surface with diagonal torus boundary images.

    Boundary turns are multiples of 1/denominator with an even total. On planar surfaces the
    last boundary closes the relator. Otherwise the first handle is a commutator solving it:
    "torus" keeps the other handles trivial and the first handle exact, "block_matrix" draws the
    other handles from Haar measure and solves with a numeric eigenbasis.
    """
    if realization not in UNITARY_REALIZATIONS:
        raise ValueError(
            f"Unknown realization '{realization}'. Use one of {list(UNITARY_REALIZATIONS)}."
        )
    if p < 1 or n < 1:
        raise ValueError(f"Random U(p) needs p >= 1 and a boundary, got p={p}, n={n}.")
    surface = presentation(g, n)

    rows = [_random_turns(p, rng, denominator) for _ in range(n)]
    if g == 0:
        rows[-1] = [-sum(col, Fraction(0)) % 2 for col in zip(*rows[:-1])]
    else:
        rows[-1][-1] = -(sum(map(sum, rows), Fraction(0)) - rows[-1][-1]) % 2
    boundary = [UnitaryElement.torus(p, 0, row) for row in rows]
    one = UnitaryElement.torus(p, 0, [0] * p)
    params = {"p": str(p), "realization": realization}

    if g == 0:
        handles = []
    elif realization == "torus":
        totals = [sum(col, Fraction(0)) for col in zip(*rows)]
        q = [Fraction(0)]
        for s in totals[1:]:
            q.append(q[-1] + s)
        first = (UnitaryElement.from_matrix(p, 0, _shift(p)), UnitaryElement.torus(p, 0, q))
        handles = [first] + [(one, one)] * (g - 1)
    else:
        rest = [
            (
                UnitaryElement.from_matrix(p, 0, random_unitary_matrix(p, rng)),
                UnitaryElement.from_matrix(p, 0, random_unitary_matrix(p, rng)),
            )
            for _ in range(g - 1)
        ]
        target = np.eye(p, dtype=complex)
        for a, b in rest:
            ma, mb = a.complex_matrix(), b.complex_matrix()
            target = target @ ma @ mb @ ma.conj().T @ mb.conj().T
        for c in boundary:
            target = target @ c.complex_matrix()
        handles = [_commutator_handle(target, p)] + rest

    logger.info(f"random U({p}) ({g},{n}) {realization}: boundary turns {rows}")
    return Representation.from_images(
        surface,
        handles,
        boundary,
        provenance=Provenance(step="random", label="up", params=params),
    )
