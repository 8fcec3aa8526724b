import json
import logging
import traceback
import warnings
from concurrent.futures import ThreadPoolExecutor, as_completed
from datetime import datetime
from pathlib import Path

import numpy as np
import polars as pl
from platformdirs import user_config_dir, user_data_dir
from tqdm import tqdm

from .blocks import catalog_rows
from .certificates import (
    Certificate,
    CertificateStore,
    SweepRow,
    Verdict,
    certify,
    verify_certificate,
)
from .constructions import PlanTarget, execute, plan
from .errors import IllConditioned, PlanIncomplete, SignatureError, UnachievableValue
from .invariants import InvariantReport, ValueSetSpec, parse_family, signature_of, value_set
from .lift import DEFAULT_STEPS
from .surfaces import random_representation

logger = logging.getLogger(__name__)

DEFAULT_WORKERS = 1
DEFAULT_ORACLE = True


class ConfigManager:
    """Manages loading and saving configuration from a JSON file."""

    def __init__(self):
        self.config_dir = Path(user_config_dir("flat_signatures"))
        self.config_path = self.config_dir / "config.json"

    def _read_config(self) -> dict:
        """Reads the entire config file and returns it as a dict."""
        if not self.config_path.exists():
            return {}
        try:
            with self.config_path.open("r") as f:
                return json.load(f)
        except (IOError, json.JSONDecodeError) as e:
            print(f"Warning: Could not read config file at {self.config_path}: {e}")
            return {}

    def _write_field(self, key: str, value):
        """Loads config, updates a single field, and saves it back."""
        config = self._read_config()
        config[key] = value
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with self.config_path.open("w") as f:
                json.dump(config, f, indent=2)
        except IOError as e:
            print(f"Warning: Could not save config to {self.config_path}: {e}")

    def show(self) -> dict:
        return {
            "output_dir": str(self.get_output_dir() or ""),
            "workers": self.get_workers(),
            "oracle": self.get_oracle(),
            "lift_steps": self.get_lift_steps(),
        }

    def get_output_dir(self) -> Path | None:
        path_str = self._read_config().get("output_dir")
        return Path(path_str) if path_str else None

    def set_output_dir(self, path: str | Path) -> Path:
        output_dir = Path(path).resolve()
        self._write_field("output_dir", str(output_dir))
        return output_dir

    def get_workers(self) -> int:
        return int(self._read_config().get("workers", DEFAULT_WORKERS))

    def set_workers(self, workers: int) -> int:
        workers = SignatureFacade._validate_positive(workers, "workers")
        self._write_field("workers", workers)
        return workers

    def get_oracle(self) -> bool:
        return bool(self._read_config().get("oracle", DEFAULT_ORACLE))

    def set_oracle(self, enabled: bool) -> bool:
        if not isinstance(enabled, bool):
            raise TypeError("oracle must be True or False.")
        self._write_field("oracle", enabled)
        return enabled

    def get_lift_steps(self) -> int:
        return int(self._read_config().get("lift_steps", DEFAULT_STEPS))

    def set_lift_steps(self, steps: int) -> int:
        steps = SignatureFacade._validate_positive(steps, "lift_steps")
        self._write_field("lift_steps", steps)
        return steps


def _cell(target: PlanTarget) -> dict:
    return {"g": target.genus, "n": target.boundaries, "m": target.m, "family": target.family}


def sweep_cell_fn(target: PlanTarget, oracle: bool, lift_steps: int = DEFAULT_STEPS) -> SweepRow:
    """Realize and certify one sweep cell; planner refusals become verdicts."""
    row = _cell(target)
    try:
        assembly = plan(target)
        rep = execute(assembly)
    except UnachievableValue:
        return SweepRow(**row, verdict=Verdict.UNACHIEVABLE)
    except PlanIncomplete as e:
        logger.warning(f"{target}: {e}")
        return SweepRow(**row, verdict=Verdict.INCOMPLETE)
    except SignatureError as e:
        logger.error(f"{target}: construction failed: {e}")
        return SweepRow(**row, verdict=Verdict.ERROR)

    try:
        cert = certify(rep, oracle=oracle, target=target, lift_steps=lift_steps)
    except IllConditioned as e:
        logger.warning(f"{target}: {e}")
        formula = signature_of(rep, lift_steps).signature_formula
        return SweepRow(**row, sign_formula=formula, verdict=Verdict.ILL_CONDITIONED)
    except SignatureError as e:
        logger.error(f"{target}: certification failed: {e}")
        return SweepRow(**row, verdict=Verdict.ERROR)
    return SweepRow(
        **row,
        sign_formula=cert.report.signature_formula,
        sign_oracle=cert.report.signature_oracle,
        verdict=cert.verdict,
    )


class SignatureFacade:
    def __init__(
        self,
        output_dir: str | Path = None,
        oracle: bool = None,
        workers: int = None,
        lift_steps: int = None,
    ):
        self.config = ConfigManager()
        # Explicit argument, then the config file, then the platform default.
        output_dir = output_dir or self.config.get_output_dir() or user_data_dir("flat_signatures")
        self.output_dir = Path(output_dir)

        # Set up logging
        log_dir = self.logs_dir = self.output_dir / "_logs"
        log_dir.mkdir(parents=True, exist_ok=True)
        logging.basicConfig(
            filename=log_dir / (datetime.now().isoformat(timespec="minutes") + ".log"),
            level=logging.WARNING,
            format="%(asctime)s - %(levelname)s - %(message)s",
            force=True,
        )

        self.oracle = self.config.get_oracle() if oracle is None else bool(oracle)
        self.workers = self._validate_positive(workers or self.config.get_workers(), "workers")
        self.lift_steps = self._validate_positive(
            lift_steps or self.config.get_lift_steps(), "lift_steps"
        )
        self.store = CertificateStore(self.output_dir)

    def __str__(self) -> str:
        return (
            f"SignatureFacade\n"
            f"  Output Directory: {self.output_dir}\n"
            f"  Oracle: {'on' if self.oracle else 'off'}\n"
            f"  Workers: {self.workers}\n"
            f"  Lift steps: {self.lift_steps}"
        )

    def __repr__(self) -> str:
        return f"SignatureFacade(output_dir='{self.output_dir!s}', oracle={self.oracle})"

    def _oracle(self, oracle: bool | None) -> bool:
        enabled = self.oracle if oracle is None else bool(oracle)
        if not enabled:
            warnings.warn(OracleDisabledWarning())
        return enabled

    def construct(
        self,
        family: str,
        surface,
        m: int = None,
        p: int = 1,
        q: int = 0,
        output: str | Path = None,
        oracle: bool = None,
        seed: int = None,
    ) -> tuple[Certificate, Path]:
        """
        Realize signature m in the family on the surface, certify it and write the certificate.
        family="random" draws a seeded numeric SL(2,R) representation instead.
        """
        g, n = self._validate_surface(surface)
        oracle = self._oracle(oracle)

        if str(family).strip().lower() == "random":
            rng = np.random.default_rng(seed)
            rep = random_representation(g, n, rng)
            cert = certify(rep, oracle=oracle, lift_steps=self.lift_steps)
            cert = cert.model_copy(update={"family": "random"})
        else:
            if m is None:
                raise ValueError("construct needs a target signature m.")
            target = PlanTarget(parse_family(family), g, n, int(m), p=p, q=q)
            assembly = plan(target)
            rep = execute(assembly)
            cert = certify(
                rep,
                oracle=oracle,
                target=target,
                plan=assembly.describe(),
                lift_steps=self.lift_steps,
            )

        path = self.store.write(cert, output)
        return cert, path

    def invariants(self, path: str | Path) -> InvariantReport:
        """Formula invariants of the representation stored in a certificate file."""
        cert = self.store.read(path)
        return signature_of(cert.representation, self.lift_steps)

    def verify(self, path: str | Path, oracle: bool = None) -> Certificate:
        cert = self.store.read(path)
        return verify_certificate(cert, oracle=self._oracle(oracle), lift_steps=self.lift_steps)

    @staticmethod
    def values(family: str, surface, p: int = 1, q: int = 0) -> list[int]:
        g, n = SignatureFacade._validate_surface(surface)
        spec = ValueSetSpec(family=parse_family(family), genus=g, boundaries=n, p=p, q=q)
        return value_set(spec)

    @staticmethod
    def catalog() -> pl.DataFrame:
        return pl.DataFrame(catalog_rows())

    def sweep(
        self,
        family: str,
        surfaces,
        p: int = 1,
        q: int = 0,
        output: str | Path = None,
        oracle: bool = None,
        workers: int = None,
    ) -> tuple[list[SweepRow], Path]:
        """
        Every m between the extremes of the family's value set on each surface, realized and
        certified. Cells run in a thread pool; rows come back in cell order.
        """
        family = parse_family(family)
        oracle = self._oracle(oracle)
        workers = self._validate_positive(workers or self.workers, "workers")

        targets = []
        for g, n in self._validate_surfaces(surfaces):
            spec = ValueSetSpec(family=family, genus=g, boundaries=n, p=p, q=q)
            try:
                values = value_set(spec)
            except SignatureError as e:
                print(f"Warning: skipping surface ({g},{n}): {e}")
                continue
            for m in range(min(values), max(values) + 1):
                targets.append(PlanTarget(family, g, n, m, p=p, q=q))

        args = [(t, oracle, self.lift_steps) for t in targets]
        rows = self._run_workers(sweep_cell_fn, args, workers)
        # a cell whose worker crashed still gets its row
        rows = [
            r if r is not None else SweepRow(**_cell(t), verdict=Verdict.ERROR)
            for r, t in zip(rows, targets)
        ]
        path = self.store.write_sweep(rows, output)
        return rows, path

    @staticmethod
    def _validate_positive(value, name: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"{name} must be an integer.")
        if value < 1:
            raise ValueError(f"{name} must be positive, got {value}.")
        return value

    @staticmethod
    def _validate_surface(surface) -> tuple[int, int]:
        """Accepts "g,n", (g, n) or [g, n]."""
        if isinstance(surface, str):
            parts = [s for s in surface.replace("(", "").replace(")", "").split(",") if s.strip()]
        elif isinstance(surface, (tuple, list)):
            parts = list(surface)
        else:
            raise TypeError("Surface must be a 'g,n' string or a (g, n) pair.")
        if len(parts) != 2:
            raise ValueError(f"Surface {surface!r} must have exactly two entries (g, n).")
        try:
            g, n = (int(x) for x in parts)
        except (TypeError, ValueError):
            raise ValueError(f"Surface {surface!r} must contain integers.")
        if g < 0 or n < 1:
            raise ValueError(f"Surface ({g},{n}) needs g >= 0 and n >= 1.")
        return g, n

    @staticmethod
    def _validate_surfaces(surfaces) -> list[tuple[int, int]]:
        """Accepts "g,n;g,n", one surface, or a list of surfaces."""
        if isinstance(surfaces, str):
            return [SignatureFacade._validate_surface(s) for s in surfaces.split(";") if s.strip()]
        if isinstance(surfaces, (tuple, list)) and surfaces:
            if all(isinstance(x, int) for x in surfaces):
                return [SignatureFacade._validate_surface(surfaces)]
            return [SignatureFacade._validate_surface(s) for s in surfaces]
        raise TypeError("Surfaces must be a 'g,n;g,n' string or a list of (g, n) pairs.")

    def _run_workers(self, worker_fn, args_iter, workers) -> list:
        """Helper to run worker_fn over args_iter in a thread pool; results in input order."""
        results = [None] * len(args_iter)
        try:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                futures = {
                    executor.submit(worker_fn, *args): k for k, args in enumerate(args_iter)
                }
                for future in tqdm(as_completed(futures), total=len(futures), desc="cells"):
                    try:
                        results[futures[future]] = future.result()
                    except Exception as e:
                        logger.error(f"Sweep cell {args_iter[futures[future]][0]} crashed: {e}")
                        print("A sweep cell failed:")
                        traceback.print_exc()

        except KeyboardInterrupt:
            print("\nKeyboardInterrupt received. Attempting to shut down threads...")
            executor.shutdown(wait=False, cancel_futures=True)
            raise
        return results


class OracleDisabledWarning(UserWarning):
    """Warning for certificates produced without the cohomology oracle."""

    def __init__(self):
        message = (
            "The cohomology oracle is disabled; signatures are certified by the formula only. "
            "To enable, run:\n"
            "from python: facade.config.set_oracle(True)\n"
            "or from terminal: python run.py config set_oracle True"
        )
        super().__init__(message)
