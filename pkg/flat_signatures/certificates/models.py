import logging
from datetime import datetime
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..constructions import PlanTarget
from ..invariants import InvariantReport
from ..oracle import OracleResult
from ..surfaces import Representation

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class Verdict(str, Enum):
    """
    Outcome of certifying one representation or sweep cell.

    PASS and FAIL cover certified representations; the others record why a sweep cell produced
    no representation.
    """

    PASS = "pass"
    FAIL = "fail"
    UNACHIEVABLE = "unachievable"
    INCOMPLETE = "incomplete"
    ILL_CONDITIONED = "ill_conditioned"
    ERROR = "error"


class Certificate(BaseModel):
    """
    Self-contained record of a representation and its invariants. Verification needs nothing
    beyond this record: the generator images, boundary annotations and provenance are stored
    with the formula report and, when requested, the oracle result.
    """

    model_config = ConfigDict(
        extra="ignore",
        use_enum_values=True,
        populate_by_name=True,
        arbitrary_types_allowed=True,
    )

    schema_version: int = Field(SCHEMA_VERSION, alias="schema", description="Certificate schema")
    created: datetime = Field(default_factory=datetime.now)
    family: Optional[str] = Field(None, description="Value family the target was drawn from")
    target: Optional[PlanTarget] = Field(None, description="Planner target, if any")
    plan: Optional[str] = Field(None, description="Readable assembly plan")
    representation: Representation
    report: InvariantReport
    oracle: Optional[OracleResult] = None
    verdict: Verdict

    @field_validator("schema_version")
    @classmethod
    def check_schema(cls, v: int) -> int:
        if v != SCHEMA_VERSION:
            raise ValueError(f"Unsupported certificate schema {v}; expected {SCHEMA_VERSION}.")
        return v

    @property
    def surface(self) -> tuple[int, int]:
        return self.representation.genus, self.representation.n

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def summary(self) -> str:
        g, n = self.surface
        r = self.report
        oracle = "off" if r.signature_oracle is None else str(r.signature_oracle)
        return (
            f"Certificate ({g},{n}) {self.family or 'user'}: sign={r.signature_formula} "
            f"oracle={oracle} T={r.toledo} rho={r.rho_total} verdict={self.verdict}"
        )


class SweepRow(BaseModel):
    """One cell of a sweep table."""

    model_config = ConfigDict(frozen=True, extra="ignore", use_enum_values=True)

    g: int
    n: int
    m: int
    family: str
    sign_formula: Optional[int] = None
    sign_oracle: Optional[int] = None
    verdict: Verdict
