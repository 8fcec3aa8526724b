import sys

import fire

from flat_signatures import ConfigManager, SignatureFacade
from flat_signatures.certificates import Verdict
from flat_signatures.errors import (
    HolonomyMismatch,
    IllConditioned,
    IntegralityFailure,
    PlanIncomplete,
    SignatureError,
    UnachievableValue,
    UnsupportedSurface,
    VerificationFailure,
)

EXIT_CODES = [
    ((UnachievableValue, PlanIncomplete, UnsupportedSurface), 2),
    ((VerificationFailure, HolonomyMismatch, IntegralityFailure), 3),
    ((IllConditioned,), 4),
]


def exit_code(error: SignatureError) -> int:
    for kinds, code in EXIT_CODES:
        if isinstance(error, kinds):
            return code
    return 1


def _guarded(fn):
    """Run fn, mapping library failures onto exit codes."""
    try:
        return fn()
    except SignatureError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        sys.exit(exit_code(e))


class Config:
    @staticmethod
    def set_output_dir(path: str):
        """Set the default directory for certificates, sweep tables and logs."""
        config = ConfigManager()
        output_dir = config.set_output_dir(path)
        print(f"Default output directory set to: {output_dir}")

    @staticmethod
    def set_workers(workers: int):
        ConfigManager().set_workers(workers)

    @staticmethod
    def set_oracle(enabled: bool):
        ConfigManager().set_oracle(enabled)

    @staticmethod
    def set_lift_steps(steps: int):
        ConfigManager().set_lift_steps(steps)

    @staticmethod
    def show():
        for key, value in ConfigManager().show().items():
            print(f"{key}: {value}")


def construct(
    family: str,
    surface,
    m: int = None,
    p: int = 1,
    q: int = 0,
    output: str = None,
    oracle: bool = None,
    seed: int = None,
):
    """Realize signature m on the surface "g,n" and write a certificate."""

    def _run():
        facade = SignatureFacade(oracle=oracle)
        cert, path = facade.construct(family, surface, m, p, q, output, seed=seed)
        print(cert.summary())
        if cert.plan:
            print(cert.plan)
        print(f"Certificate written to: {path}")
        if cert.verdict != Verdict.PASS:
            sys.exit(3)

    _guarded(_run)


def invariants(path: str):
    """Print the formula invariants of a certificate's representation."""

    def _run():
        report = SignatureFacade().invariants(path)
        print(report.model_dump_json(indent=2))

    _guarded(_run)


def verify(path: str, oracle: bool = None):
    """Recompute a certificate, including the oracle unless disabled."""

    def _run():
        cert = SignatureFacade(oracle=oracle).verify(path)
        print(cert.summary())

    _guarded(_run)


def values(family: str, surface, p: int = 1, q: int = 0):
    """Print the value set of a family on the surface "g,n"."""

    def _run():
        found = SignatureFacade.values(family, surface, p, q)
        print("{" + ",".join(str(v) for v in found) + "}")

    _guarded(_run)


def catalog():
    """List the building block catalog."""
    table = SignatureFacade.catalog()
    for row in table.iter_rows(named=True):
        print(
            f"{row['key']:<28}{row['surface']:<8}sign={row['signature']:>3}  "
            f"[{row['boundary']}]  {row['desc']}"
        )


def sweep(
    family: str,
    surfaces,
    p: int = 1,
    q: int = 0,
    output: str = None,
    oracle: bool = None,
    workers: int = None,
):
    """Construct and certify every m on each surface ("g,n;g,n") and write a CSV table."""

    def _run():
        facade = SignatureFacade(oracle=oracle)
        rows, path = facade.sweep(family, surfaces, p, q, output, workers=workers)
        counts = {}
        for r in rows:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        print(f"{len(rows)} cells: {counts}")
        print(f"Sweep table written to: {path}")
        if any(r.verdict in (Verdict.FAIL, Verdict.ERROR) for r in rows):
            sys.exit(3)

    _guarded(_run)


if __name__ == "__main__":
    fire.Fire(
        {
            "config": Config,
            "construct": construct,
            "invariants": invariants,
            "verify": verify,
            "values": values,
            "catalog": catalog,
            "sweep": sweep,
        }
    )
