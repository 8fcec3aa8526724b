import logging
from typing import Annotated, Optional

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer
from scipy.linalg import block_diag, eigvalsh, null_space

from ..errors import ComplexInconsistent, IllConditioned
from ..surfaces import Representation
from .complex import TwistedComplex, build_model

logger = logging.getLogger(__name__)

RANK_CUTOFF = 1e-7
GAP_FLOOR = 1e-10
SYMMETRY_TOL = 1e-9

FloatMatrix = Annotated[
    np.ndarray,
    BeforeValidator(lambda v: np.asarray(v, dtype=float)),
    PlainSerializer(lambda m: [[repr(float(x)) for x in row] for row in m]),
]


class OracleResult(BaseModel):
    """Signature of the cup-product form on the image of relative in absolute H^1."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dims: dict[str, int] = Field(
        ..., description="c0, c1, c2, h1_abs, h1_rel and the parabolic (image) dimension"
    )
    eigenvalues: tuple[float, ...] = Field((), description="Eigenvalues of the form, ascending")
    form_matrix: FloatMatrix = Field(..., description="Symmetric form on the relative cocycles")
    signature: int
    spectral_gap: Optional[float] = Field(
        None, description="Smallest |eigenvalue| among those counted nonzero"
    )
    asymmetry: float = Field(0.0, description="Relative asymmetry before symmetrizing")


def _rank(m: np.ndarray) -> int:
    return int(np.linalg.matrix_rank(m)) if m.size else 0


def image_dimension(model: TwistedComplex, cocycles: np.ndarray) -> int:
    """dim of the image of relative H^1 in absolute H^1."""
    embedded = np.zeros((model.d0.shape[0], cocycles.shape[1]))
    embedded[model.relative_edge_coords, :] = cocycles
    return _rank(np.hstack([embedded, model.d0])) - _rank(model.d0)


def count_signs(
    eigenvalues: np.ndarray, reference: Optional[float] = None
) -> tuple[int, Optional[float]]:
    """
    Signature with the relative rank cutoff, and the spectral gap. With a reference scale (a
    bound on |eigenvalue|), a spectrum below GAP_FLOOR * reference is the zero form.
    """
    if eigenvalues.size == 0:
        return 0, None
    top = float(np.abs(eigenvalues).max())
    if top == 0.0 or (reference is not None and top <= GAP_FLOOR * reference):
        return 0, None
    cutoff = RANK_CUTOFF * top
    grey = [x for x in eigenvalues if GAP_FLOOR * top < abs(x) <= cutoff]
    if grey:
        raise IllConditioned(
            f"{len(grey)} eigenvalue(s) near the rank cutoff (smallest ratio "
            f"{min(abs(x) for x in grey) / top:.3e})."
        )
    counted = [x for x in eigenvalues if abs(x) > cutoff]
    sig = sum(1 for x in counted if x > 0) - sum(1 for x in counted if x < 0)
    return sig, float(min(abs(x) for x in counted))


def symmetrized(form: np.ndarray, reference: float) -> tuple[np.ndarray, float]:
    """(form + form^T) / 2 and the asymmetry relative to the reference scale."""
    if not form.size or reference == 0.0:
        return form, 0.0
    asymmetry = float(np.abs(form - form.T).max()) / reference
    if asymmetry > SYMMETRY_TOL:
        raise ComplexInconsistent(f"Cup-product form asymmetric by {asymmetry:.3e} (relative).")
    return (form + form.T) / 2, asymmetry


def _model_signature(model: TwistedComplex) -> OracleResult:
    cocycles = null_space(model.d1_rel)
    rel = model.relative_edge_coords
    pairing = model.pairing_matrix()[np.ix_(rel, rel)]
    # orthonormal cocycles: |eigenvalue| <= ||pairing||
    reference = float(np.linalg.norm(pairing, 2)) if pairing.size else 0.0
    form, asymmetry = symmetrized(cocycles.T @ pairing @ cocycles, reference)

    eigenvalues = eigvalsh(form) if form.size else np.zeros(0)
    sig, gap = count_signs(eigenvalues, reference)

    c0, c1, c2 = model.cochain_dims()
    _, h1, _ = model.betti()
    _, h1_rel, _ = model.betti(relative=True)
    parabolic = image_dimension(model, cocycles)
    counted = 0 if gap is None else sum(1 for x in eigenvalues if abs(x) >= gap)
    if counted != parabolic:
        raise ComplexInconsistent(
            f"Form rank {counted} differs from the image dimension {parabolic}."
        )

    if model.realified:
        if sig % 2:
            raise ComplexInconsistent(f"Realified signature {sig} is odd.")
        sig //= 2
    return OracleResult(
        dims={
            "c0": c0,
            "c1": c1,
            "c2": c2,
            "h1_abs": h1,
            "h1_rel": h1_rel,
            "parabolic": parabolic,
        },
        eigenvalues=tuple(float(x) for x in eigenvalues),
        form_matrix=form,
        signature=sig,
        spectral_gap=gap,
        asymmetry=asymmetry,
    )


def _sum_results(results: list[OracleResult]) -> OracleResult:
    dims = {k: sum(r.dims[k] for r in results) for k in results[0].dims}
    gaps = [r.spectral_gap for r in results if r.spectral_gap is not None]
    return OracleResult(
        dims=dims,
        eigenvalues=tuple(sorted(x for r in results for x in r.eigenvalues)),
        form_matrix=block_diag(*[r.form_matrix for r in results]),
        signature=sum(r.signature for r in results),
        spectral_gap=min(gaps) if gaps else None,
        asymmetry=max(r.asymmetry for r in results),
    )


def signature_direct(rep: Representation) -> OracleResult:
    """
    Signature of the flat bundle computed from twisted cohomology: the form
    Q(u, v) = <omega(u cup v), [S, dS]> on relative cocycles, whose radical contains everything
    outside the image of relative in absolute H^1. Direct sums are summed over their summands.
    """
    if rep.is_direct_sum:
        return _sum_results([signature_direct(s) for s in rep.summands])
    result = _model_signature(build_model(rep))
    logger.info(
        f"Oracle ({rep.genus},{rep.n}) shape {rep.shape.convention}: signature {result.signature}"
    )
    return result
