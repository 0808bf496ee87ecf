"""Fourier symbols of the Hodge-Dirac operator on the scaled lattice.

After identifying cochains with vector sequences and transforming, the
operator d + d_star acts at each frequency xi as a Hermitian 2^n x 2^n
matrix, block tridiagonal in the form degree.  The sub-diagonal blocks are
built from the forward-difference multipliers

    a_l(xi) = (exp(2 pi i h xi_l) - 1) / h,

one per axis, scattered by the same insertion signs that govern wedging a
one-form onto a basis covector; the super-diagonal blocks are their
conjugate transposes.  Replacing a_l by the derivative multiplier
A_l(xi) = 2 pi i xi_l gives the symbol of the continuum Dirac operator.

Both symbols square to a scalar: sum_l |coeff_l|^2 times the identity, so
resolvents are a single division away.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import forms

__all__ = [
    "grading_offsets",
    "symbol_entries",
    "clear_caches",
    "SymbolMatrix",
    "FiberScalars",
    "forward_coeffs",
    "continuum_coeffs",
    "fiber_scalars",
    "assemble_symbol",
    "discrete_symbol",
    "continuum_symbol",
    "chirality_matrix",
    "squared_modulus",
    "fiber_resolvent",
    "discrete_fiber_resolvent",
    "continuum_fiber_resolvent",
    "dirac_modulus",
    "spectral_radius_sweep",
    "sweep_rows",
]


@functools.lru_cache(maxsize=None)
def grading_offsets(n: int) -> tuple[int, ...]:
    """Start offset of each degree block, plus the total size 2^n at the end."""
    offs = [0]
    for j in range(n + 1):
        offs.append(offs[-1] + math.comb(n, j))
    return tuple(offs)


@functools.lru_cache(maxsize=None)
def symbol_entries(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Flattened sub-diagonal scatter pattern: (rows, cols, signs, axes).

    Entry t says: block element (rows[t], cols[t]) accumulates
    signs[t] * coeff[axes[t]], with axes 0-based.
    """
    offs = grading_offsets(n)
    rows, cols, signs, axes = [], [], [], []
    for j in range(n):
        for l, axis, l_new, sgn in forms.insertion_table(n, j):
            rows.append(offs[j + 1] + l_new)
            cols.append(offs[j] + l)
            signs.append(sgn)
            axes.append(axis - 1)
    return (
        np.asarray(rows, dtype=np.int64),
        np.asarray(cols, dtype=np.int64),
        np.asarray(signs, dtype=np.float64),
        np.asarray(axes, dtype=np.int64),
    )


def clear_caches() -> None:
    forms.clear_caches()
    grading_offsets.cache_clear()
    symbol_entries.cache_clear()


@dataclass
class SymbolMatrix:
    """Hermitian fiber matrix with its degree-block offsets."""

    n: int
    matrix: np.ndarray
    offsets: tuple[int, ...]


@dataclass
class FiberScalars:
    """Everything scalar about one frequency fiber."""

    n: int
    h: float
    z: complex
    xi: np.ndarray
    a: np.ndarray
    A: np.ndarray
    r_z: complex
    R_z: complex


def forward_coeffs(n: int, h: float, xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (n,):
        raise ValueError(f"frequency has shape {xi.shape}, want ({n},)")
    return (np.exp(2j * np.pi * h * xi) - 1.0) / h


def continuum_coeffs(xi) -> np.ndarray:
    return 2j * np.pi * np.asarray(xi, dtype=float)


def squared_modulus(coeffs: np.ndarray) -> float:
    return float(np.sum(np.abs(coeffs) ** 2))


def fiber_scalars(n: int, h: float, z: complex, xi) -> FiberScalars:
    xi = np.asarray(xi, dtype=float)
    a = forward_coeffs(n, h, xi)
    A = continuum_coeffs(xi)
    r = squared_modulus(a) - z * z
    R = squared_modulus(A) - z * z
    return FiberScalars(n, h, z, xi, a, A, r, R)


def assemble_symbol(n: int, coeffs: np.ndarray) -> np.ndarray:
    """Scatter a coefficient vector into the Hermitian block matrix."""
    rows, cols, signs, axes = symbol_entries(n)
    m = grading_offsets(n)[-1]
    M = np.zeros((m, m), dtype=complex)
    vals = signs * coeffs[axes]
    np.add.at(M, (rows, cols), vals)
    np.add.at(M, (cols, rows), vals.conjugate())
    return M


def discrete_symbol(n: int, h: float, xi) -> SymbolMatrix:
    return SymbolMatrix(n, assemble_symbol(n, forward_coeffs(n, h, xi)), grading_offsets(n))


def continuum_symbol(n: int, xi) -> SymbolMatrix:
    return SymbolMatrix(n, assemble_symbol(n, continuum_coeffs(xi)), grading_offsets(n))


def chirality_matrix(n: int) -> np.ndarray:
    offs = grading_offsets(n)
    diag = np.empty(offs[-1])
    for j in range(n + 1):
        diag[offs[j] : offs[j + 1]] = 1.0 if j % 2 == 0 else -1.0
    return np.diag(diag)


def fiber_resolvent(S: np.ndarray, z: complex, squared: float) -> np.ndarray:
    """(S - z)^(-1) for a symbol with S^2 = squared * Id: (S + z) / (squared - z^2)."""
    den = squared - z * z
    if den == 0:
        raise ZeroDivisionError("z^2 equals the squared modulus, resolvent undefined")
    m = S.shape[0]
    return (S + z * np.eye(m)) / den


def discrete_fiber_resolvent(n: int, h: float, z: complex, xi) -> np.ndarray:
    a = forward_coeffs(n, h, xi)
    return fiber_resolvent(assemble_symbol(n, a), z, squared_modulus(a))


def continuum_fiber_resolvent(n: int, z: complex, xi) -> np.ndarray:
    A = continuum_coeffs(xi)
    return fiber_resolvent(assemble_symbol(n, A), z, squared_modulus(A))


def dirac_modulus(n: int, h: float, xi) -> float:
    """Largest eigenvalue modulus of the discrete symbol, in closed form."""
    xi = np.asarray(xi, dtype=float)
    s = np.sin(np.pi * h * xi)
    return 2.0 * math.sqrt(float(np.sum(s * s))) / h


def _axis_points(h: float, grid: int) -> np.ndarray:
    return np.arange(grid, dtype=float) / (grid * h)


def spectral_radius_sweep(n: int, h: float, grid: int) -> float:
    """Max eigenvalue modulus over the uniform frequency grid of one period cell.

    The squared modulus splits over axes, so the tensor max is the sum of the
    per-axis maxima.
    """
    if grid < 1:
        raise ValueError("grid must be at least 1")
    pts = _axis_points(h, grid)
    s2 = 4.0 * np.sin(np.pi * h * pts) ** 2
    return math.sqrt(n * float(s2.max())) / h


def sweep_rows(n: int, h: float, grid: int):
    """Stream (xi, modulus) rows over the full tensor grid, last axis vectorized."""
    pts = _axis_points(h, grid)
    s2 = 4.0 * np.sin(np.pi * h * pts) ** 2
    if n == 1:
        vals = np.sqrt(s2) / h
        for i, x in enumerate(pts):
            yield (x,), float(vals[i])
        return
    for head in itertools.product(range(grid), repeat=n - 1):
        base = sum(s2[i] for i in head)
        vals = np.sqrt(base + s2) / h
        head_pts = tuple(pts[i] for i in head)
        for i, x in enumerate(pts):
            yield head_pts + (x,), float(vals[i])
