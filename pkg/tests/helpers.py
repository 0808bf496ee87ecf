"""Shared generators and brute-force oracles for the test suite.

Everything here is deliberately independent of the library internals: oracles
recompute expected values from first principles (explicit traversal lists,
box enumeration, dense linear algebra) so that tests do not just mirror the
implementation.
"""

import itertools
import math
from collections import Counter

import numpy as np

from cubedec.cube_complex import (
    IndexMap,
    OrientedCube,
    boundary,
    canonicalize,
    cube,
)
from cubedec.cochains import Cochain
from cubedec.forms import FormField, increasing_tuples


def random_cube(rng, n, j, span=4):
    base = tuple(int(x) for x in rng.integers(-span, span + 1, size=n))
    dims = tuple(sorted(rng.choice(np.arange(1, n + 1), size=j, replace=False).tolist()))
    sign = int(rng.choice([-1, 1]))
    s = cube(base, dims, 1, n)
    if sign < 0:
        # move the anchor to the opposite corner so base stays the start point
        s = OrientedCube(s.ceil, IndexMap(dims, -1, n))
    return s


def random_cochain(rng, n, j, mesh, size=6, integer=False, span=3):
    vals = {}
    for _ in range(size):
        s = random_cube(rng, n, j, span)
        rep, parity = canonicalize(s)
        if integer:
            c = complex(int(rng.integers(-9, 10)), int(rng.integers(-9, 10)))
        else:
            c = complex(rng.standard_normal(), rng.standard_normal())
        vals[rep] = vals.get(rep, 0.0) + parity * c
    return Cochain(n, j, mesh, vals)


def random_form(rng, n, j, mesh, sites=5, span=3):
    width = len(increasing_tuples(n, j))
    coeffs = {}
    for _ in range(sites):
        mu = tuple(int(x) for x in rng.integers(-span, span + 1, size=n))
        coeffs[mu] = rng.standard_normal(width) + 1j * rng.standard_normal(width)
    return FormField(n, j, mesh, coeffs)


def chain_counter(faces):
    """Signed chain over canonical representatives."""
    acc = Counter()
    for f in faces:
        rep, parity = canonicalize(f)
        acc[rep] += parity
    return {k: v for k, v in acc.items() if v != 0}


def second_faces(s):
    out = []
    for f in boundary(s):
        out.extend(boundary(f))
    return out


def box_cubes(n, j, lo, hi):
    """All canonical j-cubes whose base lies in [lo, hi]^n."""
    out = []
    for dims in itertools.combinations(range(1, n + 1), j):
        for base in itertools.product(range(lo, hi + 1), repeat=n):
            out.append(cube(base, dims, 1, n))
    return out


def cochain_vector(f, basis):
    return np.array([f(s) for s in basis], dtype=complex)


def dense_d_matrix(n, j, lo, hi):
    """Matrix of the coboundary from the j-cube basis to the (j+1)-cube basis,
    built from the boundary map alone (the transpose-incidence route)."""
    rows = box_cubes(n, j + 1, lo - 1, hi + 1)
    cols = box_cubes(n, j, lo - 1, hi + 1)
    col_index = {s: i for i, s in enumerate(cols)}
    M = np.zeros((len(rows), len(cols)))
    for r, t in enumerate(rows):
        for rep, parity in chain_counter(boundary(t)).items():
            c = col_index.get(rep)
            if c is not None:
                M[r, c] += parity
    return M, rows, cols


def perm_parity(seq):
    """Sign of the permutation sorting seq, 0 if entries repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for k in range(i + 1, len(seq)):
            if seq[i] > seq[k]:
                sign = -sign
    return sign


def torus_global_index(n, N, j, dims, base):
    from cubedec.torus_lab import _index

    off = sum(math.comb(n, t) for t in range(j)) * N**n
    return off + _index(n, N, dims, base)


def torus_plane_wave(tc, k, amplitudes):
    """Block plane wave on the torus: amplitude per (degree, dims) block,
    modulated by exp(2 pi i k.x / N)."""
    n, N = tc.n, tc.N
    blocks = [(j, dims) for j in range(n + 1) for dims in increasing_tuples(n, j)]
    w = np.zeros(tc.total_dim, dtype=complex)
    for bi, (j, dims) in enumerate(blocks):
        for site in itertools.product(range(N), repeat=n):
            phase = np.exp(2j * np.pi * np.dot(k, site) / N)
            w[torus_global_index(n, N, j, dims, site)] = amplitudes[bi] * phase
    return w
