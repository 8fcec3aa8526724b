from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import UnsupportedSurface


class ValueFamily(str, Enum):
    MAIN_SP = "main_sp"
    PARAELLIPTIC = "paraelliptic"
    HYPERPARABOLIC = "hyperparabolic"
    ELLIPTIC = "elliptic"
    SO2 = "so2"
    SO2_ELLIPTIC = "so2_elliptic"
    UP = "up"
    UPQ_GENUS0 = "upq_genus0"
    UPP_TIMES = "upp_times"


FAMILY_ALIASES = {
    "mainsp": ValueFamily.MAIN_SP,
    "sp": ValueFamily.MAIN_SP,
    "hyperparabolicsl2": ValueFamily.HYPERPARABOLIC,
    "ellipticsl2": ValueFamily.ELLIPTIC,
    "upq-genus0": ValueFamily.UPQ_GENUS0,
    "upp": ValueFamily.UPP_TIMES,
    "upptimes": ValueFamily.UPP_TIMES,
}


def parse_family(family: str | ValueFamily) -> ValueFamily:
    if isinstance(family, ValueFamily):
        return family
    key = str(family).strip().lower()
    if key in FAMILY_ALIASES:
        return FAMILY_ALIASES[key]
    try:
        return ValueFamily(key.replace("-", "_"))
    except ValueError:
        raise ValueError(
            f"Unknown family '{family}'. Use one of {[f.value for f in ValueFamily]}."
        )


class ValueSetSpec(BaseModel):
    """A family of representations on the (g, n) surface; p, q as the family needs."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    family: ValueFamily
    genus: int = Field(..., ge=0)
    boundaries: int = Field(..., ge=1)
    p: int = Field(1, ge=0)
    q: int = Field(0, ge=0)

    @model_validator(mode="after")
    def check_group(self):
        if self.family == ValueFamily.UPP_TIMES and self.q < self.p:
            raise ValueError("U(p,p) x U(q-p) needs q >= p.")
        if self.family in (ValueFamily.MAIN_SP, ValueFamily.UP) and self.p < 1:
            raise ValueError("p must be at least 1.")
        return self

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus - self.boundaries


def _interval(lo: int, hi: int, step: int = 1) -> list[int]:
    return list(range(lo, hi + 1, step))


def _up_values(g: int, n: int, p: int) -> list[int]:
    if p == 0:
        return [0]
    if g == 0:
        if n < 2:
            raise UnsupportedSurface("Genus 0 U(p) values need n >= 2.")
        return _interval(-p * (n - 2), p * (n - 2))
    top = n * p - 2
    return sorted(set(_interval(-top, top)) | {0})


def value_set(spec: ValueSetSpec) -> list[int]:
    """
    Sorted list of all signatures the family realizes on the surface.
    """
    g, n, chi = spec.genus, spec.boundaries, spec.chi
    family = spec.family

    if family in (ValueFamily.SO2, ValueFamily.SO2_ELLIPTIC):
        if n < 2:
            raise UnsupportedSurface("SO(2) value sets need n >= 2.")
        if family == ValueFamily.SO2:
            return _interval(4 - 2 * n, 2 * n - 4, 2)
        return sorted(2 * n - 4 * a for a in range(1, n))

    if family in (ValueFamily.UP, ValueFamily.UPQ_GENUS0, ValueFamily.UPP_TIMES):
        if family == ValueFamily.UP:
            return _up_values(g, n, spec.p)
        if family == ValueFamily.UPQ_GENUS0:
            if g != 0 or n < 2:
                raise UnsupportedSurface("The diagonal torus family needs g = 0 and n >= 2.")
            top = (spec.p + spec.q) * (n - 2)
            return _interval(-top, top)
        if chi >= 0 and g >= 1:
            raise UnsupportedSurface("U(p,p) x U(q-p) values need chi < 0.")
        if g == 0:
            if n < 2:
                raise UnsupportedSurface("Genus 0 needs n >= 2.")
            top = (spec.p + spec.q) * (n - 2)
        elif n * (spec.q - spec.p) <= 1:
            top = 2 * spec.p * (2 * g - 2 + n)
        else:
            top = spec.p * (n + 4 * g - 4) + spec.q * n - 2
        return _interval(-top, top)

    if chi >= 0:
        raise UnsupportedSurface(f"Family {family.value} needs chi < 0, got chi = {chi}.")

    if family == ValueFamily.MAIN_SP:
        return _interval(2 * spec.p * chi, -2 * spec.p * chi)
    if family in (ValueFamily.PARAELLIPTIC, ValueFamily.HYPERPARABOLIC):
        return _interval(2 * chi, -2 * chi)

    # boundary elliptic
    if g == 0:
        return [2 * chi + 4 * a for a in range(-chi + 1)]
    if g == 1 and n == 1:
        return [-2, 2]
    return _interval(2 * chi, -2 * chi, 2)
