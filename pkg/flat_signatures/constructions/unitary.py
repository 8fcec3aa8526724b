"""
Compact and pseudo-unitary constructions: U(p) on surfaces of positive genus and diagonal tori in
U(p,q) on planar surfaces.
"""

from fractions import Fraction
import logging

import numpy as np

from ..errors import UnachievableValue
from ..group import UnitaryElement
from ..surfaces import Provenance, Representation, presentation

logger = logging.getLogger(__name__)

F = Fraction


def factor_turns(n: int, value: int) -> list[Fraction]:
    """
    Turns t_1..t_n of one U(1) factor with sum_j (sgn t_j - t_j) = value and an even total.
    Uses |value| + 2 equal nonzero turns, the rest trivial.
    """
    if value == 0:
        return [F(0)] * n
    k = abs(value) + 2
    if k > n:
        raise UnachievableValue(f"A U(1) factor on {n} boundaries reaches at most {n - 2}.")
    t = F(2, k) if value > 0 else 2 - F(2, k)
    return [t] * k + [F(0)] * (n - k)


def _grid_turns(n: int, p: int, m: int) -> list[list[Fraction]]:
    """n x p turns carrying m + 2 (or |m| + 2) equal nonzero entries, boundary-major."""
    grid = [[F(0)] * p for _ in range(n)]
    if m == 0:
        return grid
    k = abs(m) + 2
    t = F(2, k) if m > 0 else 2 - F(2, k)
    for s in range(k):
        grid[s // p][s % p] = t
    return grid


def _shift_matrix(p: int) -> np.ndarray:
    """Cyclic permutation e_i -> e_{i+1}."""
    return np.roll(np.eye(p, dtype=complex), 1, axis=0)


def up_rep(genus: int, boundaries: int, p: int, m: int) -> Representation:
    """
    U(p)-valued representation with diagonal boundary tori and signature m. The first handle is
    (P, Q) with P the cyclic shift and Q diagonal so that [P, Q] = (C_1 ... C_n)^-1; the other
    handles are trivial.
    """
    g, n = genus, boundaries
    if g < 1:
        raise UnachievableValue("up_rep needs genus >= 1; use upq_genus0_rep on planar surfaces.")
    if p < 1:
        raise UnachievableValue("up_rep needs p >= 1.")
    top = n * p - 2
    if m != 0 and abs(m) > top:
        raise UnachievableValue(f"U({p}) on ({g},{n}) reaches [{-top}, {top}] and 0, not {m}.")

    grid = _grid_turns(n, p, m)
    totals = [sum((grid[j][i] for j in range(n)), F(0)) for i in range(p)]
    # [P, Q]_ii = Q_{i-1} / Q_i, so q_i = q_{i-1} + Theta_i
    q = [F(0)]
    for i in range(1, p):
        q.append(q[-1] + totals[i])

    boundary = [UnitaryElement.torus(p, 0, row) for row in grid]
    one = UnitaryElement.torus(p, 0, [0] * p)
    shift = UnitaryElement.from_matrix(p, 0, _shift_matrix(p))
    handles = [(shift, UnitaryElement.torus(p, 0, q))] + [(one, one)] * (g - 1)
    logger.info(f"up_rep ({g},{n}) p={p} m={m}: boundary turns {grid}")
    return Representation.from_images(
        presentation(g, n),
        handles,
        boundary,
        provenance=Provenance(step="unitary", label="up", params={"p": str(p), "m": str(m)}),
    )


def split_factors(total: int, weights: list[int], cap: int) -> list[int]:
    """
    Greedy split total = sum_i weights[i] * v_i with |v_i| <= cap (weights are +-1).
    """
    values = []
    remaining = total
    for w in weights:
        v = max(-cap, min(cap, w * remaining))
        values.append(v)
        remaining -= w * v
    if remaining:
        raise UnachievableValue(f"{total} exceeds the reach of {len(weights)} factor(s).")
    return values


def upq_genus0_rep(boundaries: int, p: int, q: int, m: int) -> Representation:
    """
    Diagonal torus U(1)^(p+q) < U(p,q) on the (0, n) surface. The first p factors add their value
    to the signature, the last q subtract it.
    """
    n = boundaries
    if n < 2:
        raise UnachievableValue("The diagonal torus family needs n >= 2.")
    if p + q < 1:
        raise UnachievableValue("U(p,q) needs p + q >= 1.")
    values = split_factors(m, [1] * p + [-1] * q, n - 2)
    columns = [factor_turns(n, v) for v in values]
    boundary = [UnitaryElement.torus(p, q, [col[j] for col in columns]) for j in range(n)]
    return Representation.from_images(
        presentation(0, n),
        [],
        boundary,
        provenance=Provenance(
            step="unitary",
            label="upq-genus0",
            params={"p": str(p), "q": str(q), "factors": ",".join(str(v) for v in values)},
        ),
    )


def negative_part_rep(genus: int, boundaries: int, r: int, m: int) -> Representation:
    """
    A compact U(r) factor placed in U(0, r), contributing m to a U(p,q) signature. Planar
    surfaces use the diagonal torus family, positive genus the up_rep construction.
    """
    if genus == 0:
        return upq_genus0_rep(boundaries, 0, r, m)
    rep = up_rep(genus, boundaries, r, -m)
    return rep.model_copy(
        update={
            "handles": tuple(
                (a.as_negative_part(), b.as_negative_part()) for a, b in rep.handles
            ),
            "boundary": tuple(c.as_negative_part() for c in rep.boundary),
        }
    )
