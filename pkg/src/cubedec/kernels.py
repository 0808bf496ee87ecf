"""Batched fiber computations with a numba fast path and a numpy fallback.

The continuum-limit certification sweeps large frequency grids; at every
fiber it assembles the difference of the discrete and continuum resolvents
(a 2^n x 2^n complex matrix) and takes its spectral norm.  That per-fiber
loop is the hot spot of the package.

Backend selection:
    DEC_BACKEND=numpy   force the pure-numpy path
    DEC_BACKEND=numba   require the compiled path (error if numba missing)
    unset / auto        use numba when importable, else numpy
DEC_THREADS caps the compiled path's thread count.
"""

from __future__ import annotations

import functools
import os

import numpy as np

from .symbols import grading_offsets, symbol_entries

__all__ = [
    "backend_name",
    "fiber_difference_norms",
    "assemble_symbol_batch",
]

_CHUNK = 1 << 16


@functools.lru_cache(maxsize=1)
def _numba_module():
    try:
        from . import _numba_kernels

        return _numba_kernels
    except ImportError:
        return None


def backend_name() -> str:
    """Resolve the active backend from the environment."""
    flag = os.environ.get("DEC_BACKEND", "auto").strip().lower()
    if flag in ("", "auto"):
        return "numba" if _numba_module() is not None else "numpy"
    if flag == "numpy":
        return "numpy"
    if flag == "numba":
        if _numba_module() is None:
            raise RuntimeError("DEC_BACKEND=numba but numba is not importable")
        return "numba"
    raise ValueError(f"unrecognized DEC_BACKEND value {flag!r}")


def _thread_cap() -> int | None:
    raw = os.environ.get("DEC_THREADS")
    if raw is None or raw.strip() == "":
        return None
    val = int(raw)
    if val < 1:
        raise ValueError("DEC_THREADS must be a positive integer")
    return val


def assemble_symbol_batch(n: int, coeffs: np.ndarray) -> np.ndarray:
    """Batch of Hermitian symbols from a (K, n) coefficient array."""
    rows, cols, signs, axes = symbol_entries(n)
    m = grading_offsets(n)[-1]
    coeffs = np.asarray(coeffs, dtype=complex)
    K = coeffs.shape[0]
    M = np.zeros((K, m, m), dtype=complex)
    for t in range(len(rows)):
        v = signs[t] * coeffs[:, axes[t]]
        M[:, rows[t], cols[t]] += v
        M[:, cols[t], rows[t]] += v.conjugate()
    return M


def _difference_batch(n: int, h: float, z: complex, zetas: np.ndarray) -> np.ndarray:
    """Assemble (H_h(zeta) + z)/r - (H(zeta) + z)/R for a (K, n) block of fibers."""
    rows, cols, signs, axes = symbol_entries(n)
    m = grading_offsets(n)[-1]
    a = (np.exp(2j * np.pi * h * zetas) - 1.0) / h
    A = 2j * np.pi * zetas
    r = np.sum(np.abs(a) ** 2, axis=1) - z * z
    R = np.sum(np.abs(A) ** 2, axis=1) - z * z
    lower = a / r[:, None] - A / R[:, None]
    upper = a.conjugate() / r[:, None] - A.conjugate() / R[:, None]
    K = zetas.shape[0]
    M = np.zeros((K, m, m), dtype=complex)
    for t in range(len(rows)):
        M[:, rows[t], cols[t]] += signs[t] * lower[:, axes[t]]
        M[:, cols[t], rows[t]] += signs[t] * upper[:, axes[t]]
    diag = z * (1.0 / r - 1.0 / R)
    idx = np.arange(m)
    M[:, idx, idx] += diag[:, None]
    return M


def _norms_numpy(n: int, h: float, z: complex, zetas: np.ndarray) -> np.ndarray:
    out = np.empty(zetas.shape[0])
    for start in range(0, zetas.shape[0], _CHUNK):
        block = zetas[start : start + _CHUNK]
        M = _difference_batch(n, h, z, block)
        out[start : start + _CHUNK] = np.linalg.svd(M, compute_uv=False)[:, 0]
    return out


def fiber_difference_norms(n: int, h: float, z: complex, zetas: np.ndarray) -> np.ndarray:
    """Spectral norm of the discrete-minus-continuum resolvent at each fiber.

    zetas has shape (K, n); returns shape (K,).
    """
    zetas = np.ascontiguousarray(zetas, dtype=float)
    if zetas.ndim != 2 or zetas.shape[1] != n:
        raise ValueError(f"zetas must have shape (K, {n})")
    if zetas.shape[0] == 0:
        return np.zeros(0)
    if backend_name() == "numpy":
        return _norms_numpy(n, h, z, zetas)
    nb = _numba_module()
    rows, cols, signs, axes = symbol_entries(n)
    m = grading_offsets(n)[-1]
    return nb.difference_norms(
        zetas, float(h), complex(z), rows, cols, signs, axes, m, _thread_cap()
    )
