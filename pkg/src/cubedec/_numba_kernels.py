"""Compiled fiber kernels.  Import fails cleanly when numba is unavailable."""

from __future__ import annotations

import numpy as np
from numba import njit, prange, get_num_threads, set_num_threads


@njit(cache=True)
def _one_norm(n, h, z, zeta, rows, cols, signs, axes, m):
    a = np.empty(n, dtype=np.complex128)
    A = np.empty(n, dtype=np.complex128)
    rho_d = 0.0
    rho_c = 0.0
    for l in range(n):
        a[l] = (np.exp(2j * np.pi * h * zeta[l]) - 1.0) / h
        A[l] = 2j * np.pi * zeta[l]
        rho_d += abs(a[l]) ** 2
        rho_c += abs(A[l]) ** 2
    r = rho_d - z * z
    R = rho_c - z * z
    M = np.zeros((m, m), dtype=np.complex128)
    for t in range(rows.shape[0]):
        al = a[axes[t]]
        Al = A[axes[t]]
        M[rows[t], cols[t]] += signs[t] * (al / r - Al / R)
        M[cols[t], rows[t]] += signs[t] * (np.conj(al) / r - np.conj(Al) / R)
    c = z * (1.0 / r - 1.0 / R)
    for i in range(m):
        M[i, i] += c
    sv = np.linalg.svd(M)[1]
    return sv[0]


@njit(cache=True)
def _norms_serial(zetas, h, z, rows, cols, signs, axes, m):
    n = zetas.shape[1]
    out = np.empty(zetas.shape[0])
    for k in range(zetas.shape[0]):
        out[k] = _one_norm(n, h, z, zetas[k], rows, cols, signs, axes, m)
    return out


@njit(parallel=True)
def _norms_parallel(zetas, h, z, rows, cols, signs, axes, m):
    n = zetas.shape[1]
    out = np.empty(zetas.shape[0])
    for k in prange(zetas.shape[0]):
        out[k] = _one_norm(n, h, z, zetas[k], rows, cols, signs, axes, m)
    return out


def difference_norms(zetas, h, z, rows, cols, signs, axes, m, thread_cap):
    threads = get_num_threads()
    if thread_cap is not None and thread_cap < threads:
        set_num_threads(thread_cap)
        threads = thread_cap
    if threads > 1 and zetas.shape[0] >= 4096:
        return _norms_parallel(zetas, h, z, rows, cols, signs, axes, m)
    return _norms_serial(zetas, h, z, rows, cols, signs, axes, m)
