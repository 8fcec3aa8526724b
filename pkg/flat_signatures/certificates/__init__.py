from .manager import CertificateStore, certify, verify_certificate
from .models import SCHEMA_VERSION, Certificate, SweepRow, Verdict

__all__ = [
    "CertificateStore",
    "certify",
    "verify_certificate",
    "SCHEMA_VERSION",
    "Certificate",
    "SweepRow",
    "Verdict",
]
