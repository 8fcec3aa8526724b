"""
Cellular model of a bordered surface and the twisted cochain complex of a flat bundle over it.

The identification polygon spells prod [A_i, B_i] prod D_j C_j D_j^-1 and is coned from an
interior point P. Vertices are V0, the boundary points W_j and P. Edges are the generators A_i,
B_i, C_j, the tails D_j (V0 -> W_j, holonomy I) and one spoke S_k from P to each polygon corner.
There is one triangle (P, corner_k, corner_k+1) per polygon side.

Cochains are stored on the lifts lying in one fixed lift of the polygon, with the equivariance
f(gamma x) = rho(gamma) f(x). Relative cochains vanish on the boundary loops C_j and their
vertices W_j.
"""

from fractions import Fraction
import logging
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import ComplexInconsistent, RealificationUnsupported
from ..group import SL2Element, UnitaryElement, UnitaryRealization
from ..surfaces import Representation

logger = logging.getLogger(__name__)

DD_TOL = 1e-10
CLOSE_TOL = 1e-8

J = np.array([[0.0, 1.0], [-1.0, 0.0]])


def polygon_letters(genus: int, boundaries: int) -> list[tuple[str, int]]:
    word = []
    for i in range(1, genus + 1):
        word += [(f"A{i}", 1), (f"B{i}", 1), (f"A{i}", -1), (f"B{i}", -1)]
    for j in range(1, boundaries + 1):
        word += [(f"D{j}", 1), (f"C{j}", 1), (f"D{j}", -1)]
    return word


def edge_endpoints(genus: int, boundaries: int) -> dict[str, tuple[str, str]]:
    """Start and end vertex of every non-spoke edge."""
    ends = {}
    for i in range(1, genus + 1):
        ends[f"A{i}"] = ends[f"B{i}"] = ("V0", "V0")
    for j in range(1, boundaries + 1):
        ends[f"C{j}"] = (f"W{j}", f"W{j}")
        ends[f"D{j}"] = ("V0", f"W{j}")
    return ends


def realify(m: np.ndarray) -> np.ndarray:
    """X + iY -> [[X, -Y], [Y, X]]."""
    x, y = m.real, m.imag
    return np.block([[x, -y], [y, x]])


def realified_form(p: int, q: int) -> np.ndarray:
    """Imaginary part of the Hermitian form diag(I_p, -I_q) in realified coordinates."""
    s = np.diag([1.0] * p + [-1.0] * q)
    z = np.zeros_like(s)
    return np.block([[z, s], [-s, z]])


def _fraction_inverse(m: np.ndarray) -> np.ndarray:
    (a, b), (c, d) = m
    det = a * d - b * c
    return np.array([[d / det, -b / det], [-c / det, a / det]], dtype=object)


def _fraction_eye(k: int) -> np.ndarray:
    out = np.full((k, k), Fraction(0), dtype=object)
    for i in range(k):
        out[i, i] = Fraction(1)
    return out


class TwistedComplex(BaseModel):
    """
    Absolute and relative twisted cochains C^0 -> C^1 -> C^2 with coefficients in R^dim, the
    symplectic form on the coefficients and the polygon holonomies W_0 .. W_L.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    genus: int
    boundaries: int
    dim: int = Field(..., description="Coefficient dimension 2p")
    letters: tuple[tuple[str, int], ...]
    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    corners: tuple[str, ...] = Field(..., description="Vertex at each polygon corner")
    holonomy: tuple[np.ndarray, ...] = Field(..., description="W_0, ..., W_L")
    omega: np.ndarray
    d0: np.ndarray
    d1: np.ndarray
    exact: bool = Field(False, description="d1 d0 = 0 was checked in exact arithmetic")
    realified: bool = Field(False, description="Unitary coefficients realified; halve the result")

    @property
    def sides(self) -> int:
        return len(self.letters)

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus - self.boundaries

    def _block(self, names: tuple[str, ...], name: str) -> slice:
        k = names.index(name)
        return slice(k * self.dim, (k + 1) * self.dim)

    def vertex_block(self, name: str) -> slice:
        return self._block(self.vertices, name)

    def edge_block(self, name: str) -> slice:
        return self._block(self.edges, name)

    def _coords(self, names, keep) -> np.ndarray:
        return np.concatenate(
            [np.arange(k * self.dim, (k + 1) * self.dim) for k, x in enumerate(names) if keep(x)]
        )

    @property
    def relative_vertex_coords(self) -> np.ndarray:
        return self._coords(self.vertices, lambda v: not v.startswith("W"))

    @property
    def relative_edge_coords(self) -> np.ndarray:
        return self._coords(self.edges, lambda e: not e.startswith("C"))

    @property
    def d0_rel(self) -> np.ndarray:
        return self.d0[np.ix_(self.relative_edge_coords, self.relative_vertex_coords)]

    @property
    def d1_rel(self) -> np.ndarray:
        return self.d1[:, self.relative_edge_coords]

    def cochain_dims(self, relative: bool = False) -> tuple[int, int, int]:
        if relative:
            return (
                len(self.relative_vertex_coords),
                len(self.relative_edge_coords),
                self.d1.shape[0],
            )
        return self.d0.shape[1], self.d0.shape[0], self.d1.shape[0]

    def betti(self, relative: bool = False) -> tuple[int, int, int]:
        """Dimensions of H^0, H^1, H^2 (numerical ranks)."""
        d0, d1 = (self.d0_rel, self.d1_rel) if relative else (self.d0, self.d1)
        c0, c1, c2 = self.cochain_dims(relative)
        r0, r1 = np.linalg.matrix_rank(d0), np.linalg.matrix_rank(d1)
        return c0 - r0, c1 - r1 - r0, c2 - r1

    def pairing_matrix(self) -> np.ndarray:
        """
        P over absolute 1-cochain coordinates with Q(alpha, beta) = alpha^T P beta: the
        front-face/back-face cup product paired by omega on the relative fundamental cycle.
        """
        size = self.d0.shape[0]
        out = np.zeros((size, size))
        L = self.sides
        for k, (x, e) in enumerate(self.letters):
            if e > 0:
                eps, front, w = -1.0, f"S{k}", self.holonomy[k]
            else:
                eps, front, w = 1.0, f"S{(k + 1) % L}", self.holonomy[k + 1]
            out[self.edge_block(front), self.edge_block(x)] += eps * self.omega @ w
        return out


def _assemble(
    genus: int,
    boundaries: int,
    images: dict[str, np.ndarray],
    eye: np.ndarray,
    inv: Callable[[np.ndarray], np.ndarray],
):
    """Holonomies and coboundary matrices over the dtype of `eye` (float or Fraction)."""
    letters = polygon_letters(genus, boundaries)
    ends = edge_endpoints(genus, boundaries)
    L = len(letters)
    dim = eye.shape[0]
    vertices = ["V0"] + [f"W{j}" for j in range(1, boundaries + 1)] + ["P"]
    gens = [x for i in range(1, genus + 1) for x in (f"A{i}", f"B{i}")]
    gens += [f"C{j}" for j in range(1, boundaries + 1)]
    gens += [f"D{j}" for j in range(1, boundaries + 1)]
    edges = gens + [f"S{k}" for k in range(L)]

    images = dict(images)
    for j in range(1, boundaries + 1):
        images[f"D{j}"] = eye

    corners = ["V0"]
    holonomy = [eye]
    for x, e in letters:
        start, end = ends[x]
        corners.append(end if e > 0 else start)
        g = images[x] if e > 0 else inv(images[x])
        holonomy.append(holonomy[-1].dot(g))

    def block(names, name):
        k = names.index(name)
        return slice(k * dim, (k + 1) * dim)

    zero = eye - eye
    d0 = np.zeros((len(edges) * dim, len(vertices) * dim), dtype=eye.dtype)
    d1 = np.zeros((L * dim, len(edges) * dim), dtype=eye.dtype)
    if eye.dtype == object:
        d0[:] = zero[0, 0]
        d1[:] = zero[0, 0]

    for x in gens:
        start, end = ends[x]
        d0[block(edges, x), block(vertices, end)] += images[x]
        d0[block(edges, x), block(vertices, start)] -= eye
    for k in range(L):
        s = f"S{k}"
        d0[block(edges, s), block(vertices, corners[k])] += holonomy[k]
        d0[block(edges, s), block(vertices, "P")] -= eye

    for k, (x, e) in enumerate(letters):
        rows = slice(k * dim, (k + 1) * dim)
        d1[rows, block(edges, f"S{k}")] += eye
        d1[rows, block(edges, f"S{(k + 1) % L}")] -= eye
        if e > 0:
            d1[rows, block(edges, x)] += holonomy[k]
        else:
            d1[rows, block(edges, x)] -= holonomy[k + 1]

    return letters, vertices, edges, corners[:L], holonomy, d0, d1


def _coefficients(rep: Representation):
    """Generator images as real matrices, the coefficient form and the realification flag."""
    images = rep.images
    first = rep.boundary[0]
    if isinstance(first, SL2Element):
        return {x: g.array() for x, g in images.items()}, J, False
    if not isinstance(first, UnitaryElement):
        raise RealificationUnsupported(f"Unsupported coefficient type {type(first).__name__}.")
    if any(g.realization == UnitaryRealization.SL2_BLOCKS for g in images.values()):
        raise RealificationUnsupported(
            "Direct sums are modelled per summand; pass each summand separately."
        )
    if {(g.p, g.q) for g in images.values()} != {(first.p, first.q)}:
        raise RealificationUnsupported("Unitary images of different shapes.")
    real = {x: realify(np.asarray(g.complex_matrix(), dtype=complex)) for x, g in images.items()}
    return real, realified_form(first.p, first.q), True


def _exact_images(rep: Representation) -> Optional[dict[str, np.ndarray]]:
    if not rep.is_sl2:
        return None
    out = {}
    for x, g in rep.images.items():
        m = g.fraction_array()
        if m is None:
            return None
        out[x] = m
    return out


def _is_trivial(images: dict[str, np.ndarray]) -> bool:
    return all(np.array_equal(m, np.eye(m.shape[0])) for m in images.values())


def check_complex(model: TwistedComplex, trivial: bool = False) -> None:
    """Cell count, closing holonomy and, for trivial coefficients, the untwisted Betti numbers."""
    c0, c1, c2 = model.cochain_dims()
    if c0 - c1 + c2 != model.chi * model.dim:
        raise ComplexInconsistent(
            f"Cochain dimensions ({c0}, {c1}, {c2}) do not give chi * {model.dim}."
        )
    closing = float(np.abs(model.holonomy[-1] - np.eye(model.dim)).max())
    if closing > CLOSE_TOL:
        raise ComplexInconsistent(f"Polygon holonomy does not close up (residual {closing:.3e}).")
    if not model.exact:
        dd = float(np.abs(model.d1 @ model.d0).max())
        if dd > DD_TOL * max(1.0, float(np.abs(model.d0).max()) ** 2):
            raise ComplexInconsistent(f"d1 d0 = 0 fails with residual {dd:.3e}.")
    if trivial:
        g, n, d = model.genus, model.boundaries, model.dim
        _, h1, h2 = model.betti()
        _, _, h2_rel = model.betti(relative=True)
        if (h1, h2, h2_rel) != ((2 * g + n - 1) * d, 0, d):
            raise ComplexInconsistent(
                f"Untwisted Betti numbers h1={h1}, h2={h2}, h2_rel={h2_rel} are wrong for "
                f"({g},{n})."
            )


def build_model(rep: Representation) -> TwistedComplex:
    """Twisted cochain complex of a single (non direct sum) representation, self-checked."""
    if rep.is_direct_sum:
        raise RealificationUnsupported("Direct sums are modelled per summand.")
    g, n = rep.genus, rep.n
    images, omega, realified = _coefficients(rep)
    dim = omega.shape[0]

    exact_images = _exact_images(rep)
    exact = False
    if exact_images is not None:
        eye = _fraction_eye(2)
        letters, vertices, edges, corners, holonomy, d0, d1 = _assemble(
            g, n, exact_images, eye, _fraction_inverse
        )
        if not np.all(d1.dot(d0) == 0):
            raise ComplexInconsistent("d1 d0 = 0 fails in exact arithmetic.")
        if not np.all(holonomy[-1] == eye):
            raise ComplexInconsistent("Polygon holonomy does not close up exactly.")
        exact = True
        d0, d1 = d0.astype(float), d1.astype(float)
        holonomy = [w.astype(float) for w in holonomy]
    else:
        letters, vertices, edges, corners, holonomy, d0, d1 = _assemble(
            g, n, images, np.eye(dim), np.linalg.inv
        )

    model = TwistedComplex(
        genus=g,
        boundaries=n,
        dim=dim,
        letters=tuple(letters),
        vertices=tuple(vertices),
        edges=tuple(edges),
        corners=tuple(corners),
        holonomy=tuple(holonomy),
        omega=omega,
        d0=d0,
        d1=d1,
        exact=exact,
        realified=realified,
    )
    check_complex(model, trivial=_is_trivial(images))
    logger.debug(
        f"Twisted complex ({g},{n}) dim={dim}: cochains {model.cochain_dims()}, exact={exact}"
    )
    return model
