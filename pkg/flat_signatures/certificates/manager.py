import json
import logging
from pathlib import Path
from typing import Optional

import polars as pl
from pydantic import ValidationError

from ..constructions import PlanTarget
from ..errors import VerificationFailure
from ..invariants import signature_of
from ..lift import DEFAULT_STEPS
from ..oracle import signature_direct
from ..surfaces import Representation, check_relator
from .models import Certificate, SweepRow, Verdict

logger = logging.getLogger(__name__)

SWEEP_SCHEMA = {
    "g": pl.Int64,
    "n": pl.Int64,
    "m": pl.Int64,
    "family": pl.Utf8,
    "sign_formula": pl.Int64,
    "sign_oracle": pl.Int64,
    "verdict": pl.Utf8,
}

TOLEDO_TOL = 1e-8


def certify(
    rep: Representation,
    oracle: bool = True,
    target: Optional[PlanTarget] = None,
    plan: Optional[str] = None,
    lift_steps: int = DEFAULT_STEPS,
) -> Certificate:
    """Check the relator, compute the formula invariants and optionally the oracle signature."""
    check_relator(rep)
    report = signature_of(rep, lift_steps)
    result = None
    if oracle:
        result = signature_direct(rep)
        report = report.model_copy(update={"signature_oracle": result.signature})

    ok = report.ok and (target is None or report.signature_formula == target.m)
    if not ok:
        logger.warning(
            f"Certificate for ({rep.genus},{rep.n}) fails: formula {report.signature_formula}, "
            f"oracle {report.signature_oracle}, flags {report.flags}"
        )
    return Certificate(
        family=None if target is None else str(target.family),
        target=target,
        plan=plan,
        representation=rep,
        report=report,
        oracle=result,
        verdict=Verdict.PASS if ok else Verdict.FAIL,
    )


def verify_certificate(
    cert: Certificate, oracle: bool = True, lift_steps: int = DEFAULT_STEPS
) -> Certificate:
    """
    Recompute everything stored in the certificate from its generator images. Any disagreement
    raises VerificationFailure; a broken relator raises HolonomyMismatch.
    """
    rep = cert.representation
    fresh = certify(rep, oracle=oracle, target=cert.target, plan=cert.plan, lift_steps=lift_steps)
    old, new = cert.report, fresh.report

    problems = []
    if new.signature_formula != old.signature_formula:
        problems.append(f"signature {old.signature_formula} recomputes to {new.signature_formula}")
    if abs(float(new.toledo) - float(old.toledo)) > TOLEDO_TOL:
        problems.append(f"Toledo {old.toledo} recomputes to {new.toledo}")
    if abs(float(new.rho_total) - float(old.rho_total)) > TOLEDO_TOL:
        problems.append(f"rho {old.rho_total} recomputes to {new.rho_total}")
    if new.signature_oracle is not None and new.signature_oracle != new.signature_formula:
        problems.append(
            f"oracle signature {new.signature_oracle} disagrees with {new.signature_formula}"
        )
    if (
        old.signature_oracle is not None
        and new.signature_oracle is not None
        and old.signature_oracle != new.signature_oracle
    ):
        problems.append(
            f"stored oracle signature {old.signature_oracle} recomputes to {new.signature_oracle}"
        )
    if old.signature_oracle is not None and old.signature_oracle != old.signature_formula:
        problems.append(
            f"stored oracle signature {old.signature_oracle} disagrees with the stored formula"
        )
    if cert.oracle is not None and cert.oracle.signature != old.signature_oracle:
        problems.append(f"stored oracle result {cert.oracle.signature} does not match the report")
    if cert.target is not None and new.signature_formula != cert.target.m:
        problems.append(f"target m={cert.target.m} not met")
    if not all(new.flags.values()):
        problems.append(f"failed checks {[k for k, v in new.flags.items() if not v]}")
    if problems:
        raise VerificationFailure("Certificate does not verify: " + "; ".join(problems) + ".")
    return fresh.model_copy(update={"family": cert.family})


class CertificateStore:
    """Reads and writes certificates (JSON) and sweep tables (CSV) under one output directory."""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.certificates_path = self.output_dir / "certificates"
        self.sweeps_path = self.output_dir / "sweeps"

    def default_name(self, cert: Certificate) -> str:
        g, n = cert.surface
        family = cert.family or "rep"
        return f"{family}_g{g}_n{n}_m{cert.report.signature_formula}.json"

    def write(self, cert: Certificate, path: str | Path | None = None) -> Path:
        if path is None:
            self.certificates_path.mkdir(parents=True, exist_ok=True)
            path = self.certificates_path / self.default_name(cert)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(cert.to_json())
        logger.info(f"Wrote certificate {path}")
        return path

    @staticmethod
    def read(path: str | Path) -> Certificate:
        """Load a certificate; malformed or tampered records raise VerificationFailure."""
        path = Path(path)
        try:
            payload = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise VerificationFailure(f"Could not read certificate {path}: {e}") from e
        try:
            return Certificate.model_validate(payload)
        except ValidationError as e:
            raise VerificationFailure(f"Certificate {path} failed validation: {e}") from e
        except (TypeError, ValueError, AttributeError, KeyError) as e:
            raise VerificationFailure(f"Certificate {path} could not be loaded: {e}") from e

    def write_sweep(self, rows: list[SweepRow], path: str | Path | None = None) -> Path:
        """Rows are written in the order given."""
        if path is None:
            self.sweeps_path.mkdir(parents=True, exist_ok=True)
            path = self.sweeps_path / "sweep.csv"
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        df = pl.DataFrame([r.model_dump() for r in rows], schema=SWEEP_SCHEMA)
        df.write_csv(path)
        return path

    @staticmethod
    def read_sweep(path: str | Path) -> pl.DataFrame:
        return pl.read_csv(path, schema=SWEEP_SCHEMA)
