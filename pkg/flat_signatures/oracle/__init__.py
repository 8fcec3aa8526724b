from .complex import TwistedComplex, build_model, check_complex, realified_form, realify
from .signature import OracleResult, count_signs, signature_direct, symmetrized

__all__ = [
    "TwistedComplex",
    "build_model",
    "check_complex",
    "realified_form",
    "realify",
    "OracleResult",
    "count_signs",
    "signature_direct",
    "symmetrized",
]
