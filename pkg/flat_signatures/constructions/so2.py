"""
SO(2)-valued representations. All images are rotations k(t*pi) with exact rational turns, handles
map to the identity, and the boundary turns sum to an even integer. For such a representation the
Toledo invariant vanishes and the signature is sum_j 2(1 - t_j) over the nontrivial boundaries.
"""

from fractions import Fraction
import logging
from typing import Optional, Sequence

from ..errors import UnachievableValue
from ..group import SL2Element
from ..group.models import to_fraction
from ..surfaces import Provenance, Representation, presentation

logger = logging.getLogger(__name__)

F = Fraction
QUARTER = F(1, 4)


def rotation_rep(genus: int, turns: Sequence[Fraction], label: str = "so2") -> Representation:
    """Trivial handles and boundary images k(t_j pi)."""
    turns = [to_fraction(t) % 2 for t in turns]
    if sum(turns, F(0)) % 2 != 0:
        raise UnachievableValue(f"Boundary turns {turns} do not sum to an even integer.")
    one = SL2Element.identity()
    return Representation.from_images(
        presentation(genus, len(turns)),
        [(one, one)] * genus,
        [SL2Element.rotation(t) for t in turns],
        provenance=Provenance(
            step="rotation", label=label, params={"turns": ",".join(str(t) for t in turns)}
        ),
    )


def rotation_signature(turns: Sequence[Fraction]) -> int:
    return int(sum((2 * (1 - t) for t in turns if t % 2 != 0), F(0)))


def spread_turns(total: Fraction, k: int) -> Optional[list[Fraction]]:
    """
    k turns in (0, 2), none equal to 1, summing to total. None when impossible.
    """
    if k == 0:
        return [] if total == 0 else None
    if not 0 < total < 2 * k:
        return None
    base = total / k
    turns = [base] * k
    if base != 1:
        return turns
    if k == 1:
        return None
    start = 0
    if k % 2:
        turns[0:3] = [base + QUARTER, base + QUARTER, base - 2 * QUARTER]
        start = 3
    for i in range(start, k, 2):
        turns[i], turns[i + 1] = base + QUARTER, base - QUARTER
    return turns


def solve_turns(
    fixed: Sequence[Fraction], free: int, target: int, allow_identity: bool = False
) -> list[Fraction]:
    """
    Complete the fixed turns with `free` further turns so that the rotation representation has
    signature `target`. With allow_identity, free slots may be the identity (turn 0); at most the
    slots beyond the nontrivial ones are used that way.
    """
    fixed = [to_fraction(t) for t in fixed]
    fixed_rho = sum((2 * (1 - t) for t in fixed if t != 0), F(0))
    fixed_sum = sum(fixed, F(0))
    counts = range(free, -1, -1) if allow_identity else [free]
    for k in counts:
        # target = fixed_rho + 2k - 2R with R the sum of the k free turns
        r = (fixed_rho + 2 * k - target) / 2
        if (r + fixed_sum) % 2 != 0:
            continue
        spread = spread_turns(r, k)
        if spread is not None:
            return fixed + spread + [F(0)] * (free - k)
    raise UnachievableValue(
        f"No rotation turns complete {[str(t) for t in fixed]} with {free} free slot(s) to "
        f"signature {target}."
    )


def _sum_mode_turns(n: int, m: int) -> list[Fraction]:
    h = m // 2
    if h == 0:
        turns = [F(1, 2), F(3, 2)]
    elif h > 0:
        turns = [F(2, h + 2)] * (h + 2)
    else:
        turns = [F(2 * (1 - h), 2 - h)] * (2 - h)
    while len(turns) + 2 <= n:
        turns += [F(1, 2), F(3, 2)]
    if len(turns) < n:
        turns.append(F(0))
    return turns


def so2_turns(
    boundaries: int, m: int, prescribed=None, elliptic: bool = False
) -> list[Fraction]:
    """
    Boundary turns of a rotation representation of signature m.

    In the default mode m is any even integer with |m| <= 2n - 4 and at most one boundary is
    trivial. In elliptic mode every boundary is elliptic and m = 2n - 4a for 0 < a < n.
    A prescribed turn is placed on the first boundary.
    """
    n = boundaries
    if m % 2:
        raise UnachievableValue(f"SO(2) signatures are even, got {m}.")
    if n < 2:
        raise UnachievableValue("SO(2) representations with a nonzero boundary need n >= 2.")
    t1 = None if prescribed is None else to_fraction(prescribed) % 2

    if elliptic:
        if (2 * n - m) % 4 or not 0 < (2 * n - m) // 4 < n:
            raise UnachievableValue(f"m = {m} is not of the form 2n - 4a with 0 < a < {n}.")
        a = (2 * n - m) // 4
        if t1 is None:
            t1 = F(2 * a, n) if 2 * a != n else F(1, 2)
        if t1 in (0, 1):
            raise UnachievableValue(f"Prescribed turn {t1} is not elliptic.")
        return solve_turns([t1], n - 1, m)

    if abs(m) > 2 * n - 4:
        raise UnachievableValue(f"|m| = {abs(m)} exceeds 2n - 4 = {2 * n - 4}.")
    if t1 is None:
        return _sum_mode_turns(n, m)
    return solve_turns([t1], n - 1, m, allow_identity=True)


def so2_rep(
    genus: int, boundaries: int, m: int, prescribed=None, elliptic: bool = False
) -> Representation:
    turns = so2_turns(boundaries, m, prescribed, elliptic)
    logger.info(f"so2 ({genus},{boundaries}) m={m}: turns {[str(t) for t in turns]}")
    return rotation_rep(genus, turns, label="so2-elliptic" if elliptic else "so2")
