"""P1 finite elements for the Neumann Laplacian on triangle meshes.

Assembly produces exact element integrals (piecewise-linear stiffness and
consistent mass), accumulated into a symmetric sparse format.  The
smallest eigenpairs come from shift-inverted subspace iteration with
Rayleigh-Ritz extraction; since the discrete problem is a Galerkin
restriction, every computed eigenvalue overestimates its continuous
counterpart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from . import _kernels
from .geometry import ConvexPolygon
from .mesh import MeshError, TriangleMesh, mesh_polygon
from .spectra import Spectrum

# fixed start-block seed: spectra must not depend on interpreter state, so
# runs of the same problem are reproducible bit for bit
_START_SEED = 1234567

_RESIDUAL_TOL = 1e-8
_MAX_SWEEPS = 500
_EXTRA_BLOCK = 5


class EigensolverError(RuntimeError):
    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


@dataclass
class SparseSymmetricMatrix:
    """Symmetric matrix stored as its upper triangle in coordinate form,
    with entries coalesced and sorted lexicographically."""

    dimension: int
    rows: np.ndarray
    cols: np.ndarray
    data: np.ndarray

    @classmethod
    def from_coo(cls, dimension, rows, cols, data):
        """Build from coordinate data of a symmetric matrix; duplicates are
        summed, then the upper triangle is kept."""
        full = scipy.sparse.coo_matrix(
            (np.asarray(data, dtype=float), (rows, cols)),
            shape=(dimension, dimension),
        ).tocsr()
        upper = scipy.sparse.triu(full).tocoo()
        return cls(
            dimension=dimension,
            rows=upper.row.astype(np.int64),
            cols=upper.col.astype(np.int64),
            data=upper.data.astype(float),
        )

    def to_csr(self) -> scipy.sparse.csr_matrix:
        """Full symmetric CSR matrix (both triangles)."""
        upper = scipy.sparse.coo_matrix(
            (self.data, (self.rows, self.cols)),
            shape=(self.dimension, self.dimension),
        ).tocsr()
        diag = scipy.sparse.diags(upper.diagonal())
        return (upper + upper.T - diag).tocsr()

    def toarray(self) -> np.ndarray:
        return self.to_csr().toarray()


def assemble(mesh: TriangleMesh):
    """Stiffness and consistent mass matrices of the P1 space on the mesh.

    Returns (K, M) as SparseSymmetricMatrix.  The stiffness matrix
    annihilates constants and the mass matrix entries sum to the mesh
    area, both exactly at the element level.
    """
    coords = mesh.triangle_coords()
    areas, kloc, mloc = _kernels.p1_element_matrices(coords)
    if (areas < 1e-14 * mesh.h_max**2).any():
        raise MeshError("degenerate triangle encountered during assembly")
    tris = mesh.triangles
    rows = np.repeat(tris, 3, axis=1).ravel()
    cols = np.tile(tris, (1, 3)).ravel()
    n = mesh.num_vertices
    stiffness = SparseSymmetricMatrix.from_coo(n, rows, cols, kloc.ravel())
    mass = SparseSymmetricMatrix.from_coo(n, rows, cols, mloc.ravel())
    return stiffness, mass


def _residuals(K, M, vals, vecs):
    """Relative eigenpair residuals, safeguarded for the zero mode."""
    kx = K @ vecs
    mx = M @ vecs
    out = np.empty(vals.size)
    for i in range(vals.size):
        r = np.linalg.norm(kx[:, i] - vals[i] * mx[:, i])
        denom = max(
            np.linalg.norm(kx[:, i]),
            (1.0 + abs(vals[i])) * np.linalg.norm(mx[:, i]),
        )
        out[i] = r / denom
    return out


def solve_smallest(
    stiffness: SparseSymmetricMatrix,
    mass: SparseSymmetricMatrix,
    m: int,
    residual_tol: float = _RESIDUAL_TOL,
    max_sweeps: int = _MAX_SWEEPS,
):
    """Smallest m eigenvalues of K x = mu M x by shift-inverted subspace
    iteration at shift -1, which keeps the factored operator K + M
    positive definite for the singular Neumann stiffness.

    Returns (values, vectors, residual).  Deterministic: the start block
    is seeded and contains the constant vector, so the zero mode is
    resolved exactly from the first sweep.
    """
    n = stiffness.dimension
    if not (1 <= m <= n // 2):
        raise ValueError("need 1 <= m <= dimension/2")
    K = stiffness.to_csr()
    M = mass.to_csr()
    shifted = (K + M).tocsc()
    lu = scipy.sparse.linalg.splu(shifted)
    block = min(m + _EXTRA_BLOCK, n)
    rng = np.random.default_rng(_START_SEED)
    X = rng.standard_normal((n, block))
    X[:, 0] = 1.0
    best = np.inf
    vals = vecs = None
    for _ in range(max_sweeps):
        Y = lu.solve(M @ X)
        Q, _ = np.linalg.qr(Y)
        kq = K @ Q
        mq = M @ Q
        k_red = Q.T @ kq
        m_red = Q.T @ mq
        theta, S = scipy.linalg.eigh(k_red, m_red)
        X = Q @ S
        vals = theta[:m]
        vecs = X[:, :m]
        res = _residuals(K, M, vals, vecs)
        worst = float(res.max())
        best = min(best, worst)
        if worst <= residual_tol:
            return np.ascontiguousarray(vals), np.ascontiguousarray(vecs), worst
    raise EigensolverError(
        f"subspace iteration stalled with residual {best:.3e}", best_residual=best
    )


def dense_smallest(stiffness, mass, m: int):
    """Dense generalized eigensolve of the same pencil; reference for
    cross-checking the iterative path on small meshes."""
    n = stiffness.dimension
    if n > 2000:
        raise ValueError("dense fallback is for small problems only")
    vals, vecs = scipy.linalg.eigh(stiffness.toarray(), mass.toarray())
    return vals[:m], vecs[:, :m]


def neumann_spectrum(P: ConvexPolygon, m: int, levels: int) -> Spectrum:
    """FEM approximation of the first m Neumann eigenvalues of P at the
    given uniform refinement level."""
    mesh = mesh_polygon(P, levels)
    stiffness, mass = assemble(mesh)
    vals, _, residual = solve_smallest(stiffness, mass, m)
    vals = vals.copy()
    # the continuous zero mode may round to a tiny negative number
    scale = max(abs(vals).max(), 1.0)
    tiny = vals[0] < 0 and abs(vals[0]) < 1e-10 * scale
    if tiny:
        vals[0] = 0.0
    return Spectrum(
        values=vals,
        source=f"fem({levels})",
        mesh_h=mesh.h_max,
        refinement_level=levels,
        solver_residual=residual,
    )
