from .rho import rho_class, rho_per_boundary, rho_torus
from .signature import InvariantReport, milnor_wood_bound, signature_of
from .values import ValueFamily, ValueSetSpec, parse_family, value_set

__all__ = [
    "rho_class",
    "rho_per_boundary",
    "rho_torus",
    "InvariantReport",
    "milnor_wood_bound",
    "signature_of",
    "ValueFamily",
    "ValueSetSpec",
    "parse_family",
    "value_set",
]
