"""Dense symmetric matrices of a graph and a deterministic eigensolver.

The eigensolver is LAPACK's symmetric solver (orthogonal reduction to
tridiagonal form followed by a dense diagonalization of the tridiagonal
matrix), reached through numpy/scipy.  Output is post-processed to a fixed
sign convention so identical input yields identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateInputError, NumericError, ParameterError
from .graph import Graph

__all__ = [
    "SpectralDecomposition",
    "adjacency_matrix",
    "normalized_adjacency",
    "combinatorial_laplacian",
    "normalized_laplacian",
    "eig_sym",
    "spectral_gap",
    "second_eigenvector",
    "rayleigh_quotient",
]

#: residual tolerance, relative to a spectral-radius estimate
RESIDUAL_RTOL = 1e-9
#: orthonormality tolerance for eigenvector bases
ORTHO_TOL = 1e-10
#: two eigenvalues closer than this are treated as degenerate
DEGENERACY_GAP = 1e-8


@dataclass
class SpectralDecomposition:
    eigenvalues: np.ndarray  # length n, sorted per `ordering`
    eigenvectors: np.ndarray  # n x n, column k pairs with eigenvalue k
    ordering: str  # "ascending" | "descending"
    max_residual: float  # max_k ||M v_k - lam_k v_k||_2


def _require_min_degree(g: Graph) -> np.ndarray:
    d = g.degrees
    if np.any(d == 0):
        v = int(np.argmin(d))
        raise DegenerateInputError(
            f"vertex {v} is isolated; normalized operators are undefined"
        )
    return d


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    e = g.edges
    a[e[:, 0], e[:, 1]] = 1.0
    a[e[:, 1], e[:, 0]] = 1.0
    return a


def normalized_adjacency(g: Graph) -> np.ndarray:
    d = _require_min_degree(g)
    inv_sqrt = 1.0 / np.sqrt(d.astype(float))
    a = adjacency_matrix(g)
    return a * np.outer(inv_sqrt, inv_sqrt)


def combinatorial_laplacian(g: Graph) -> np.ndarray:
    a = adjacency_matrix(g)
    return np.diag(g.degrees.astype(float)) - a


def normalized_laplacian(g: Graph) -> np.ndarray:
    return np.eye(g.n) - normalized_adjacency(g)


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (lowest index on
    ties) is positive."""
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eig_sym(m: np.ndarray, ordering: str = "ascending") -> SpectralDecomposition:
    """Full eigendecomposition of a symmetric matrix.

    Deterministic: the same input array yields the same decomposition,
    eigenvalues sorted per `ordering` and column signs fixed by the
    largest-magnitude-entry convention.
    """
    m = np.asarray(m, dtype=float)
    if ordering not in ("ascending", "descending"):
        raise ParameterError(f"unknown ordering {ordering!r}")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError("matrix must be square")
    if not np.isfinite(m).all():
        raise NumericError("matrix has non-finite entries")
    if not np.array_equal(m, m.T):
        raise ParameterError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(m)
    if ordering == "descending":
        vals = vals[::-1].copy()
        vecs = vecs[:, ::-1].copy()
    vecs = fix_signs(vecs)
    resid = m @ vecs - vecs * vals
    max_residual = float(np.max(np.linalg.norm(resid, axis=0))) if m.size else 0.0
    return SpectralDecomposition(vals, vecs, ordering, max_residual)


def eigvals_sym(m: np.ndarray) -> np.ndarray:
    """Eigenvalues only, ascending.  Internal fast path."""
    return np.linalg.eigvalsh(m)


def spectral_gap(g: Graph) -> float:
    """Second-smallest eigenvalue of the normalized Laplacian."""
    lap = normalized_laplacian(g)
    return float(eigvals_sym(lap)[1])


def second_eigenvector(g: Graph) -> tuple[np.ndarray, bool]:
    """Unit eigenvector of the normalized Laplacian for its second-smallest
    eigenvalue, plus a degeneracy flag (set when the next eigenvalue is
    within DEGENERACY_GAP, in which case the vector is basis-dependent)."""
    lap = normalized_laplacian(g)
    vals, vecs = scipy.linalg.eigh(lap, subset_by_index=(0, min(2, g.n - 1)))
    f = vecs[:, 1].copy()
    f = fix_signs(f[:, None])[:, 0]
    degenerate = bool(g.n > 2 and (vals[2] - vals[1]) < DEGENERACY_GAP)
    resid = np.linalg.norm(lap @ f - vals[1] * f)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if resid > 1e-9 * scale * max(1.0, g.n):
        raise NumericError(f"eigenvector residual {resid:g} too large")
    return f, degenerate


def rayleigh_quotient(m: np.ndarray, x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    nrm2 = float(x @ x)
    if nrm2 == 0.0:
        raise ParameterError("zero vector")
    return float(x @ (np.asarray(m) @ x)) / nrm2
