import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Optional

import numpy as np
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Discriminator,
    Field,
    PlainSerializer,
    Tag,
    field_validator,
    model_validator,
)

logger = logging.getLogger(__name__)

DET_TOL = 1e-12
FORM_TOL = 1e-10


def to_fraction(v: Any) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction. Floats are rejected."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise ValueError("Booleans are not rationals.")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise ValueError(f"Expected an exact rational, got {type(v).__name__} {v!r}.")


def to_number(v: Any) -> Fraction | float:
    """Keep exact values exact and floats as floats; decimal strings become floats."""
    if isinstance(v, (Fraction, float)):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        s = v.strip()
        if any(ch in s.lower() for ch in (".", "e", "n")):
            return float(s)
        return Fraction(s)
    if isinstance(v, np.floating):
        return float(v)
    raise ValueError(f"Expected a number, got {type(v).__name__} {v!r}.")


def to_real(v: Any) -> float:
    if isinstance(v, (list, tuple, dict)):
        raise ValueError(f"Expected a real number, got {type(v).__name__}.")
    return float(v)


def number_str(v: Fraction | float) -> str:
    return str(v) if isinstance(v, Fraction) else repr(float(v))


def to_complex_array(v: Any) -> np.ndarray:
    """Accept an ndarray or nested lists of [re, im] pairs (strings or numbers)."""
    if isinstance(v, np.ndarray):
        return v.astype(complex)
    rows = []
    for row in v:
        rows.append(
            [
                complex(float(x[0]), float(x[1])) if isinstance(x, (list, tuple)) else complex(x)
                for x in row
            ]
        )
    return np.array(rows, dtype=complex)


def complex_payload(m: np.ndarray) -> list[list[list[str]]]:
    return [[[repr(float(z.real)), repr(float(z.imag))] for z in row] for row in m]


Rational = Annotated[
    Fraction, BeforeValidator(to_fraction), PlainSerializer(str, return_type=str)
]
Number = Annotated[
    Fraction | float, BeforeValidator(to_number), PlainSerializer(number_str, return_type=str)
]
Real = Annotated[float, BeforeValidator(to_real), PlainSerializer(repr, return_type=str)]
ComplexMatrix = Annotated[
    np.ndarray, BeforeValidator(to_complex_array), PlainSerializer(complex_payload)
]

_FROZEN = ConfigDict(
    frozen=True, extra="ignore", use_enum_values=True, arbitrary_types_allowed=True
)


def rotation_entries(t: Fraction) -> tuple[float, float, float, float]:
    """Entries of k(t*pi), exact zeros and ones on quarter turns."""
    t = t % 2
    quarter = {
        Fraction(0): (1.0, 0.0),
        Fraction(1, 2): (0.0, 1.0),
        Fraction(1): (-1.0, 0.0),
        Fraction(3, 2): (0.0, -1.0),
    }
    if t in quarter:
        cos, sin = quarter[t]
    else:
        cos, sin = math.cos(math.pi * t), math.sin(math.pi * t)
    return cos, -sin, sin, cos


class RationalEntries(BaseModel):
    model_config = _FROZEN

    rational_entries: tuple[Rational, Rational, Rational, Rational] = Field(
        ..., description="Exact entries (a, b, c, d) with ad - bc = 1"
    )

    @model_validator(mode="after")
    def check_determinant(self):
        a, b, c, d = self.rational_entries
        if a * d - b * c != 1:
            raise ValueError(f"Rational entries {a, b, c, d} do not have determinant 1.")
        return self


class RotationByPi(BaseModel):
    model_config = _FROZEN

    rotation_by_pi: Rational = Field(..., description="t with the element equal to k(t*pi)")

    @field_validator("rotation_by_pi", mode="after")
    @classmethod
    def reduce_mod_two(cls, v: Fraction) -> Fraction:
        return v % 2


class SL2Element(BaseModel):
    """
    An element of SL(2,R) stored numerically, with an optional exact annotation.

    The exact tag takes precedence for every discrete decision (classification, turns, rho);
    the floats feed the lift arithmetic and the oracle.
    """

    model_config = _FROZEN

    matrix: tuple[tuple[Real, Real], tuple[Real, Real]] = Field(
        ..., description="Numeric entries ((a, b), (c, d))"
    )
    exact: Optional[RationalEntries | RotationByPi] = Field(
        None, description="Exact annotation: rational entries or a rational rotation"
    )

    @model_validator(mode="after")
    def check_consistency(self):
        (a, b), (c, d) = self.matrix
        if isinstance(self.exact, RationalEntries):
            for x, q in zip((a, b, c, d), self.exact.rational_entries):
                if abs(x - float(q)) > DET_TOL * max(1.0, abs(float(q))):
                    raise ValueError("Numeric entries disagree with the rational annotation.")
        elif isinstance(self.exact, RotationByPi):
            for x, y in zip((a, b, c, d), rotation_entries(self.exact.rotation_by_pi)):
                if abs(x - y) > DET_TOL:
                    raise ValueError("Numeric entries disagree with the rotation annotation.")
        else:
            scale = max(1.0, a * a + b * b + c * c + d * d)
            if abs(a * d - b * c - 1.0) > DET_TOL * scale:
                raise ValueError(f"Determinant {a * d - b * c!r} is not 1.")
        return self

    @classmethod
    def rational(cls, a, b, c, d) -> "SL2Element":
        q = tuple(to_fraction(x) for x in (a, b, c, d))
        return cls(
            matrix=((float(q[0]), float(q[1])), (float(q[2]), float(q[3]))),
            exact=RationalEntries(rational_entries=q),
        )

    @classmethod
    def numeric(cls, a, b, c, d) -> "SL2Element":
        return cls(matrix=((float(a), float(b)), (float(c), float(d))))

    @classmethod
    def from_entries(cls, a, b, c, d) -> "SL2Element":
        """Exact when every entry is an int or Fraction, numeric otherwise."""
        if all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in (a, b, c, d)):
            return cls.rational(a, b, c, d)
        return cls.numeric(a, b, c, d)

    @classmethod
    def from_array(cls, m: np.ndarray) -> "SL2Element":
        return cls.numeric(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def rotation(cls, t) -> "SL2Element":
        t = to_fraction(t) % 2
        a, b, c, d = rotation_entries(t)
        return cls(matrix=((a, b), (c, d)), exact=RotationByPi(rotation_by_pi=t))

    @classmethod
    def identity(cls) -> "SL2Element":
        return cls.rational(1, 0, 0, 1)

    @property
    def entries(self) -> tuple[float, float, float, float]:
        (a, b), (c, d) = self.matrix
        return a, b, c, d

    @property
    def trace(self) -> float:
        return self.matrix[0][0] + self.matrix[1][1]

    @property
    def rotation_turn(self) -> Fraction | None:
        return self.exact.rotation_by_pi if isinstance(self.exact, RotationByPi) else None

    @property
    def exact_entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction] | None:
        """Exact entries when known, including rotations by multiples of pi/2."""
        if isinstance(self.exact, RationalEntries):
            return self.exact.rational_entries
        t = self.rotation_turn
        if t is not None and (2 * t).denominator == 1:
            return tuple(Fraction(int(x)) for x in rotation_entries(t))
        return None

    @property
    def exact_trace(self) -> Fraction | None:
        q = self.exact_entries
        return None if q is None else q[0] + q[3]

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=float)

    def fraction_array(self) -> np.ndarray | None:
        q = self.exact_entries
        if q is None:
            return None
        return np.array([[q[0], q[1]], [q[2], q[3]]], dtype=object)


class ConjKind(str, Enum):
    ELLIPTIC = "elliptic"
    PAR_POS = "par_pos"
    PAR_NEG = "par_neg"
    HYPERBOLIC = "hyperbolic"
    PLUS_IDENTITY = "plus_identity"
    MINUS_IDENTITY = "minus_identity"


class ConjClass(BaseModel):
    """Conjugacy class of an SL(2,R) element, refined by trace sign for parabolics."""

    model_config = _FROZEN

    kind: ConjKind
    turn: Optional[Number] = Field(None, description="Elliptic t in (0, 2), angle t*pi")
    mu_sign: Optional[int] = Field(None, description="Parabolic orientation, +1 or -1")
    trace_sign: Optional[int] = Field(None, description="Hyperbolic trace sign")
    trace: Optional[Number] = Field(None, description="Hyperbolic trace when known")

    @model_validator(mode="after")
    def check_fields(self):
        if self.kind == ConjKind.ELLIPTIC:
            if self.turn is None or not 0 < self.turn < 2 or self.turn == 1:
                raise ValueError(f"Elliptic turn must lie in (0, 2) minus {{1}}, got {self.turn}.")
        if self.kind in (ConjKind.PAR_POS, ConjKind.PAR_NEG) and self.mu_sign not in (1, -1):
            raise ValueError("Parabolic classes need mu_sign = +-1.")
        if self.kind == ConjKind.HYPERBOLIC and self.trace_sign not in (1, -1):
            raise ValueError("Hyperbolic classes need trace_sign = +-1.")
        return self

    @classmethod
    def elliptic(cls, turn) -> "ConjClass":
        return cls(kind=ConjKind.ELLIPTIC, turn=turn)

    @classmethod
    def parabolic(cls, trace_sign: int, mu_sign: int) -> "ConjClass":
        kind = ConjKind.PAR_POS if trace_sign > 0 else ConjKind.PAR_NEG
        return cls(kind=kind, mu_sign=mu_sign)

    @classmethod
    def hyperbolic(cls, trace) -> "ConjClass":
        trace = to_number(trace)
        return cls(kind=ConjKind.HYPERBOLIC, trace_sign=1 if trace > 0 else -1, trace=trace)

    @property
    def is_elliptic(self) -> bool:
        return self.kind == ConjKind.ELLIPTIC

    @property
    def is_parabolic(self) -> bool:
        return self.kind in (ConjKind.PAR_POS, ConjKind.PAR_NEG)

    @property
    def is_central(self) -> bool:
        return self.kind in (ConjKind.PLUS_IDENTITY, ConjKind.MINUS_IDENTITY)

    def mirrored(self) -> "ConjClass":
        """Class after conjugation by diag(1, -1)."""
        if self.is_elliptic:
            return self.model_copy(update={"turn": 2 - self.turn})
        if self.is_parabolic:
            return self.model_copy(update={"mu_sign": -self.mu_sign})
        return self

    def negated(self) -> "ConjClass":
        """Class of -g given the class of g."""
        if self.is_elliptic:
            t = self.turn + 1
            return self.model_copy(update={"turn": t - 2 if t >= 2 else t})
        if self.is_parabolic:
            kind = ConjKind.PAR_NEG if self.kind == ConjKind.PAR_POS else ConjKind.PAR_POS
            # -[[1, x], [0, 1]] = [[-1, -x], [0, -1]] so the sign of b - c flips too
            return self.model_copy(update={"kind": kind, "mu_sign": -self.mu_sign})
        if self.kind == ConjKind.HYPERBOLIC:
            trace = None if self.trace is None else -self.trace
            return self.model_copy(update={"trace_sign": -self.trace_sign, "trace": trace})
        if self.kind == ConjKind.PLUS_IDENTITY:
            return ConjClass(kind=ConjKind.MINUS_IDENTITY)
        return ConjClass(kind=ConjKind.PLUS_IDENTITY)


class UnitaryRealization(str, Enum):
    DIAGONAL_TORUS = "diagonal_torus"
    BLOCK_MATRIX = "block_matrix"
    SL2_BLOCKS = "sl2_blocks"


class UnitaryElement(BaseModel):
    """
    An element of U(p,q).

    Diagonal tori store exact turns t (angles t*pi); block matrices store complex entries
    preserving diag(I_p, -I_q); SL2 blocks embed SL(2,R)^k < SU(k,k), optionally followed by a
    unitary rest factor.
    """

    model_config = _FROZEN

    p: int = Field(..., ge=0)
    q: int = Field(..., ge=0)
    realization: UnitaryRealization
    turns: Optional[tuple[Rational, ...]] = Field(None, description="Torus turns in [0, 2)")
    matrix: Optional[ComplexMatrix] = Field(None, description="(p+q) x (p+q) complex matrix")
    blocks: tuple[SL2Element, ...] = Field((), description="SL(2,R) blocks")
    rest: Optional["UnitaryElement"] = Field(None, description="Unitary factor after the blocks")

    @model_validator(mode="after")
    def check_realization(self):
        size = self.p + self.q
        if self.realization == UnitaryRealization.DIAGONAL_TORUS:
            if self.turns is None or len(self.turns) != size:
                raise ValueError(f"Diagonal torus needs {size} turns.")
            if any(not 0 <= t < 2 for t in self.turns):
                raise ValueError("Torus turns must lie in [0, 2).")
        elif self.realization == UnitaryRealization.BLOCK_MATRIX:
            m = self.matrix
            if m is None or m.shape != (size, size):
                raise ValueError(f"Block matrix must be {size} x {size}.")
            form = hermitian_form(self.p, self.q)
            if np.abs(m.conj().T @ form @ m - form).max(initial=0.0) > FORM_TOL * max(
                1.0, np.abs(m).max(initial=0.0) ** 2
            ):
                raise ValueError("Matrix does not preserve the (p, q) Hermitian form.")
        else:
            k = len(self.blocks)
            rp, rq = (self.rest.p, self.rest.q) if self.rest is not None else (0, 0)
            if not self.blocks or (self.p, self.q) != (k + rp, k + rq):
                raise ValueError("SL2 block shape does not match (p, q).")
        return self

    @classmethod
    def torus(cls, p: int, q: int, turns) -> "UnitaryElement":
        turns = tuple(to_fraction(t) % 2 for t in turns)
        return cls(p=p, q=q, realization=UnitaryRealization.DIAGONAL_TORUS, turns=turns)

    @classmethod
    def from_matrix(cls, p: int, q: int, m: np.ndarray) -> "UnitaryElement":
        return cls(p=p, q=q, realization=UnitaryRealization.BLOCK_MATRIX, matrix=m)

    @property
    def shape(self) -> tuple[int, int]:
        return self.p, self.q

    def complex_matrix(self) -> np.ndarray:
        if self.realization == UnitaryRealization.DIAGONAL_TORUS:
            return np.diag([np.exp(1j * math.pi * float(t)) for t in self.turns])
        if self.realization == UnitaryRealization.BLOCK_MATRIX:
            return self.matrix
        raise TypeError("SL2 block elements are handled blockwise, not as one complex matrix.")

    def as_negative_part(self) -> "UnitaryElement":
        """The same matrix viewed in U(0, p+q) (for q = 0) so the form becomes negative."""
        if self.q != 0:
            raise ValueError("Only definite U(p) elements can be moved to the negative part.")
        return self.model_copy(update={"p": 0, "q": self.p})


UnitaryElement.model_rebuild()


def hermitian_form(p: int, q: int) -> np.ndarray:
    return np.diag([1.0] * p + [-1.0] * q).astype(complex)


def _element_tag(v: Any) -> str:
    if isinstance(v, dict):
        return "unitary" if "realization" in v else "sl2"
    return "unitary" if isinstance(v, UnitaryElement) else "sl2"


GroupElement = Annotated[
    Annotated[SL2Element, Tag("sl2")] | Annotated[UnitaryElement, Tag("unitary")],
    Discriminator(_element_tag),
]
