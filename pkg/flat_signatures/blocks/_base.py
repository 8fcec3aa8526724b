from abc import ABC, abstractmethod
from fractions import Fraction
import logging
from typing import Any

from ..errors import ParameterOutOfRange
from ..group import ConjClass, SL2Element
from ..group.models import to_fraction
from ..surfaces import Provenance, Representation, presentation

logger = logging.getLogger(__name__)


class BaseBlock(ABC):
    """
    Abstract base class for the building blocks glued by the planner.

    A block is a representation of the pair of pants (0, 3) or the one-holed torus (1, 1) given
    by explicit matrices. Subclasses set the class attributes below and implement `_images`.
    """

    # Subclasses must override these
    key: str = "base"
    desc: str = "Base Block Class"
    genus: int = 0
    boundaries: int = 3

    # Parameter name -> default. Values are exact rationals unless listed in `int_params`.
    defaults: dict[str, Any] = {}
    int_params: tuple[str, ...] = ()

    def __init__(self, **params):
        unknown = set(params) - set(self.defaults)
        if unknown:
            raise ParameterOutOfRange(f"{self.key} has no parameter(s) {sorted(unknown)}.")
        merged = {**self.defaults, **params}
        self.params = {
            k: int(v) if k in self.int_params else to_fraction(v) for k, v in merged.items()
        }
        self._validate_params()

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{type(self).__name__}({params})"

    def _validate_params(self):
        """Raise ParameterOutOfRange when the parameters leave the block's validity range."""

    @abstractmethod
    def _images(self) -> tuple[list[tuple[SL2Element, SL2Element]], list[SL2Element]]:
        """Return (handles, boundary) with the relator satisfied."""
        pass

    def _annotations(self) -> list[ConjClass | None] | None:
        """Exact boundary classes for images stored numerically."""
        return None

    def expected_signature(self) -> int | None:
        """Catalog signature for the current parameters, when it is known in closed form."""
        return None

    def build(self) -> Representation:
        handles, boundary = self._images()
        return Representation.from_images(
            presentation(self.genus, self.boundaries),
            handles,
            boundary,
            self._annotations(),
            provenance=Provenance(
                step="block",
                label=self.key,
                params={k: str(v) for k, v in self.params.items()},
            ),
        )

    @staticmethod
    def _require(condition: bool, message: str):
        if not condition:
            raise ParameterOutOfRange(message)


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)
