"""Finite periodic lattice laboratory: exact matrices for the cubical complex.

Wrapping the integer lattice modulo N in every direction leaves finitely many
canonical cubes per degree, binomial(n, j) * N^n of them, so the coboundary
becomes an explicit sparse integer matrix and every structural statement
(d d = 0, Hodge decomposition, harmonic dimensions, Dirac spectrum) can be
checked in exact or dense linear algebra.

Basis order within degree j: combination-major, site-minor, sites in
lexicographic order over {0..N-1}^n.  The full Dirac matrix is written in the
orthonormal rescaling of the weighted inner product, where it is symmetric
with entries +-1/h.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .cube_complex import IndexMap, OrientedCube, boundary, canonicalize
from .forms import increasing_tuples, rank_of

__all__ = [
    "TorusComplex",
    "assemble",
    "dirac_matrix",
    "laplacian_blocks",
    "dirac_spectrum",
    "closed_form_spectrum",
    "harmonic_dimensions",
    "hodge_split",
    "export_matrix",
    "DENSE_CAP",
]

DENSE_CAP = 4096
_RANK_RTOL = 1e-8


@dataclass
class TorusComplex:
    n: int
    N: int
    mesh: float
    d_mats: tuple[sp.csr_matrix, ...]

    @property
    def total_dim(self) -> int:
        return 2**self.n * self.N**self.n

    def degree_dim(self, j: int) -> int:
        return math.comb(self.n, j) * self.N**self.n


def _site_rank(base: tuple[int, ...], N: int) -> int:
    r = 0
    for x in base:
        r = r * N + (x % N)
    return r


def _index(n: int, N: int, dims: tuple[int, ...], base: tuple[int, ...]) -> int:
    return rank_of(n, dims) * N**n + _site_rank(base, N)


def assemble(n: int, N: int, h: float = 1.0) -> TorusComplex:
    """Build the coboundary matrices of the n-torus with N sites per axis.

    N >= 3 keeps faces of one cell from wrapping onto each other; the single
    harmless exception N = 2 is allowed for n = 1.
    """
    if n < 1:
        raise ValueError("ambient dimension must be at least 1")
    if N < 3 and not (n == 1 and N == 2):
        raise ValueError("N must be at least 3 (wrapped faces of one cell collide)")
    if h <= 0:
        raise ValueError("mesh must be positive")
    sites = list(itertools.product(range(N), repeat=n))
    mats = []
    for j in range(n):
        rows_dim = math.comb(n, j + 1) * N**n
        cols_dim = math.comb(n, j) * N**n
        rows, cols, vals = [], [], []
        for dims in increasing_tuples(n, j + 1):
            for base in sites:
                s = OrientedCube(base, IndexMap(dims, 1, n))
                ridx = _index(n, N, dims, base)
                for face in boundary(s):
                    rep, parity = canonicalize(face)
                    rows.append(ridx)
                    cols.append(_index(n, N, rep.dims, rep.base))
                    vals.append(parity)
        mats.append(
            sp.coo_matrix((vals, (rows, cols)), shape=(rows_dim, cols_dim), dtype=np.int64).tocsr()
        )
    return TorusComplex(n, N, float(h), tuple(mats))


def dirac_matrix(tc: TorusComplex) -> sp.csr_matrix:
    """Symmetric orthonormal-basis matrix of d + d_star, entries scaled by 1/h."""
    n = tc.n
    blocks = [[None] * (n + 1) for _ in range(n + 1)]
    for j, D in enumerate(tc.d_mats):
        B = D / tc.mesh
        blocks[j + 1][j] = B
        blocks[j][j + 1] = B.T
    return sp.bmat(blocks, format="csr")


def laplacian_blocks(tc: TorusComplex) -> tuple[np.ndarray, ...]:
    """Dense degree-j Hodge Laplacians (1/h^2)(D_j^T D_j + D_{j-1} D_{j-1}^T)."""
    w = tc.mesh**-2
    out = []
    for j in range(tc.n + 1):
        dim = tc.degree_dim(j)
        L = np.zeros((dim, dim))
        if j < tc.n:
            D = tc.d_mats[j]
            L += w * (D.T @ D).toarray()
        if j > 0:
            D = tc.d_mats[j - 1]
            L += w * (D @ D.T).toarray()
        out.append(L)
    return tuple(out)


def _check_cap(dim: int) -> None:
    if dim > DENSE_CAP:
        raise ValueError(f"dense computation capped at dimension {DENSE_CAP}, got {dim}")


def dirac_spectrum(tc: TorusComplex) -> np.ndarray:
    """Sorted eigenvalues of the full Dirac matrix (dense, capped)."""
    _check_cap(tc.total_dim)
    return np.linalg.eigvalsh(dirac_matrix(tc).toarray())


def closed_form_spectrum(n: int, N: int, h: float = 1.0) -> np.ndarray:
    """Sorted multiset {± (2/h) sqrt(sum_l sin^2(pi k_l / N))}, each sign with
    multiplicity 2^(n-1) per frequency k."""
    lams = []
    mult = 2 ** (n - 1)
    for k in itertools.product(range(N), repeat=n):
        lam = 2.0 / h * math.sqrt(sum(math.sin(math.pi * kl / N) ** 2 for kl in k))
        lams.extend([lam] * mult)
        lams.extend([-lam] * mult)
    return np.sort(np.asarray(lams))


def _rank(mat: sp.csr_matrix) -> int:
    dense = mat.toarray().astype(float)
    if min(dense.shape) == 0:
        return 0
    _check_cap(max(dense.shape))
    s = np.linalg.svd(dense, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > _RANK_RTOL * s[0]))


def harmonic_dimensions(tc: TorusComplex) -> tuple[int, ...]:
    """Kernel dimension of each degree Laplacian via rank-nullity."""
    ranks = [_rank(D) for D in tc.d_mats]
    out = []
    for j in range(tc.n + 1):
        dim = tc.degree_dim(j)
        r_up = ranks[j] if j < tc.n else 0
        r_down = ranks[j - 1] if j > 0 else 0
        out.append(dim - r_up - r_down)
    return tuple(out)


def hodge_split(tc: TorusComplex, j: int, vec: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthogonal decomposition of a degree-j vector into image of d, image of
    the adjoint, and the harmonic remainder."""
    vec = np.asarray(vec, dtype=float)
    dim = tc.degree_dim(j)
    if vec.shape != (dim,):
        raise ValueError(f"vector has shape {vec.shape}, want ({dim},)")
    _check_cap(dim)

    def project_onto_range(A: np.ndarray, v: np.ndarray) -> np.ndarray:
        if A.shape[1] == 0:
            return np.zeros_like(v)
        x, *_ = np.linalg.lstsq(A, v, rcond=_RANK_RTOL)
        return A @ x

    exact = np.zeros_like(vec)
    coexact = np.zeros_like(vec)
    if j > 0:
        exact = project_onto_range(tc.d_mats[j - 1].toarray().astype(float), vec)
    if j < tc.n:
        coexact = project_onto_range(tc.d_mats[j].toarray().T.astype(float), vec)
    harmonic = vec - exact - coexact
    return exact, coexact, harmonic


def export_matrix(mat, fp) -> None:
    """Coordinate triplet text: one `row col value` line per stored entry."""
    coo = sp.coo_matrix(mat)
    order = np.lexsort((coo.col, coo.row))
    for i in order:
        fp.write(f"{coo.row[i]} {coo.col[i]} {coo.data[i]:.17g}\n")
