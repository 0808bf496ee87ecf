"""Lattice differential forms with values in the exterior algebra of C^n.

A degree-j form field assigns to each lattice site a coefficient vector over
the lexicographically ordered increasing multi-indices.  The coboundary of
cochains turns into a forward-difference exterior derivative here, and the
identification with cochains (u_map) sends a canonical cube to the basis
covector of its spanned directions.

All operators act on integer sites; the mesh width h only enters through the
h^(-2j) inner-product weight and the h^(-2) factor in the adjoint derivative.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cube_complex import IndexMap, OrientedCube
from .cochains import Cochain

__all__ = [
    "increasing_tuples",
    "rank_of",
    "insertion_sign",
    "insertion_table",
    "star_table",
    "clear_caches",
    "FormField",
    "wedge",
    "hodge_star",
    "tilde_d",
    "tilde_d_star",
    "tilde_laplacian",
    "form_inner",
    "form_norm",
    "u_map",
    "u_inverse",
    "u_scale",
    "u_scale_adjoint",
    "write_form_jsonl",
    "read_form_jsonl",
]


@functools.lru_cache(maxsize=None)
def increasing_tuples(n: int, j: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing j-tuples in 1..n, lexicographic order."""
    return tuple(itertools.combinations(range(1, n + 1), j))


@functools.lru_cache(maxsize=None)
def _rank_table(n: int, j: int) -> dict[tuple[int, ...], int]:
    return {I: l for l, I in enumerate(increasing_tuples(n, j))}


def rank_of(n: int, dims: tuple[int, ...]) -> int:
    """Position of dims in the lexicographic basis order."""
    return _rank_table(n, len(dims))[tuple(dims)]


def insertion_sign(dims: tuple[int, ...], axis: int) -> int:
    """Sign of dx^axis wedge dx^dims relative to the sorted merged basis vector.

    Moving dx^axis past the p entries of dims smaller than axis costs (-1)^p.
    """
    if axis in dims:
        raise ValueError(f"axis {axis} already in {dims}")
    p = sum(1 for a in dims if a < axis)
    return -1 if p % 2 else 1


@functools.lru_cache(maxsize=None)
def insertion_table(n: int, j: int) -> tuple[tuple[int, int, int, int], ...]:
    """Entries (l, axis, l_new, sign) for every degree-j index and missing axis."""
    rows = []
    for l, I in enumerate(increasing_tuples(n, j)):
        for axis in range(1, n + 1):
            if axis in I:
                continue
            merged = tuple(sorted(I + (axis,)))
            rows.append((l, axis, rank_of(n, merged), insertion_sign(I, axis)))
    return tuple(rows)


@functools.lru_cache(maxsize=None)
def star_table(n: int, j: int) -> tuple[tuple[int, int], ...]:
    """For each degree-j index l: (rank of the complement, permutation sign)."""
    rows = []
    for I in increasing_tuples(n, j):
        J = tuple(a for a in range(1, n + 1) if a not in I)
        inv = sum(1 for a in I for b in J if a > b)
        rows.append((rank_of(n, J), -1 if inv % 2 else 1))
    return tuple(rows)


def clear_caches() -> None:
    """Reset the combinatorial tables (rebuilds pick up patched sign rules)."""
    insertion_table.cache_clear()
    star_table.cache_clear()
    increasing_tuples.cache_clear()
    _rank_table.cache_clear()


@dataclass
class FormField:
    """Degree-j form field: site -> coefficient vector over increasing j-tuples."""

    n: int
    degree: int
    mesh: float
    coeffs: dict[tuple[int, ...], np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= self.n:
            raise ValueError(f"degree {self.degree} outside 0..{self.n}")
        if self.mesh <= 0:
            raise ValueError("mesh must be positive")
        width = len(increasing_tuples(self.n, self.degree))
        clean = {}
        for mu, vec in self.coeffs.items():
            if len(mu) != self.n:
                raise ValueError(f"site {mu} has wrong dimension")
            arr = np.asarray(vec, dtype=complex)
            if arr.shape != (width,):
                raise ValueError(f"coefficient vector at {mu} has shape {arr.shape}, want ({width},)")
            if np.any(arr != 0):
                clean[tuple(int(x) for x in mu)] = arr
        self.coeffs = clean

    @property
    def width(self) -> int:
        return len(increasing_tuples(self.n, self.degree))

    def vector_at(self, mu: tuple[int, ...]) -> np.ndarray:
        v = self.coeffs.get(tuple(mu))
        if v is None:
            return np.zeros(self.width, dtype=complex)
        return v

    def __add__(self, other: "FormField") -> "FormField":
        if (self.n, self.degree) != (other.n, other.degree) or self.mesh != other.mesh:
            raise ValueError("form shapes do not match")
        out = {mu: v.copy() for mu, v in self.coeffs.items()}
        for mu, v in other.coeffs.items():
            if mu in out:
                out[mu] = out[mu] + v
            else:
                out[mu] = v.copy()
        return FormField(self.n, self.degree, self.mesh, out)

    def __mul__(self, c: complex) -> "FormField":
        return FormField(self.n, self.degree, self.mesh, {mu: c * v for mu, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __sub__(self, other: "FormField") -> "FormField":
        return self + (-1) * other


def form_inner(a: FormField, b: FormField) -> complex:
    if (a.n, a.degree) != (b.n, b.degree) or a.mesh != b.mesh:
        raise ValueError("form shapes do not match")
    w = a.mesh ** (-2 * a.degree)
    acc = 0j
    for mu, va in a.coeffs.items():
        vb = b.coeffs.get(mu)
        if vb is not None:
            acc += np.vdot(vb, va)  # conjugates b
    return w * complex(acc)


def form_norm(a: FormField) -> float:
    return math.sqrt(form_inner(a, a).real)


def wedge(a: FormField, b: FormField) -> FormField:
    """Pointwise exterior product via merge signs of disjoint sorted indices."""
    if a.n != b.n or a.mesh != b.mesh:
        raise ValueError("form shapes do not match")
    k, j, n = a.degree, b.degree, a.n
    if k + j > n:
        raise ValueError(f"wedge of degrees {k} and {j} exceeds ambient dimension {n}")
    basis_a = increasing_tuples(n, k)
    basis_b = increasing_tuples(n, j)
    width = len(increasing_tuples(n, k + j))
    out: dict[tuple[int, ...], np.ndarray] = {}
    for mu, va in a.coeffs.items():
        vb = b.coeffs.get(mu)
        if vb is None:
            continue
        vec = np.zeros(width, dtype=complex)
        for la, I in enumerate(basis_a):
            ca = va[la]
            if ca == 0:
                continue
            for lb, J in enumerate(basis_b):
                cb = vb[lb]
                if cb == 0 or set(I) & set(J):
                    continue
                inv = sum(1 for x in I for y in J if x > y)
                sgn = -1 if inv % 2 else 1
                vec[rank_of(n, tuple(sorted(I + J)))] += sgn * ca * cb
        out[mu] = vec
    return FormField(n, k + j, a.mesh, out)


def hodge_star(a: FormField) -> FormField:
    table = star_table(a.n, a.degree)
    width = len(increasing_tuples(a.n, a.n - a.degree))
    out = {}
    for mu, v in a.coeffs.items():
        vec = np.zeros(width, dtype=complex)
        for l, (l_star, sgn) in enumerate(table):
            vec[l_star] += sgn * v[l]
        out[mu] = vec
    return FormField(a.n, a.n - a.degree, a.mesh, out)


def tilde_d(a: FormField) -> FormField:
    """Forward-difference exterior derivative, no mesh factor."""
    if a.degree >= a.n:
        raise ValueError("derivative of a top-degree form leaves the complex")
    table = insertion_table(a.n, a.degree)
    width = len(increasing_tuples(a.n, a.degree + 1))
    out: dict[tuple[int, ...], np.ndarray] = {}

    def bump(mu, l_new, val):
        vec = out.get(mu)
        if vec is None:
            vec = np.zeros(width, dtype=complex)
            out[mu] = vec
        vec[l_new] += val

    for mu, v in a.coeffs.items():
        for l, axis, l_new, sgn in table:
            c = v[l]
            if c == 0:
                continue
            shifted = list(mu)
            shifted[axis - 1] -= 1
            bump(tuple(shifted), l_new, sgn * c)
            bump(mu, l_new, -sgn * c)
    return FormField(a.n, a.degree + 1, a.mesh, out)


def tilde_d_star(g: FormField) -> FormField:
    """Adjoint of tilde_d for the weighted inner products: backward differences
    with the insertion signs and an h^(-2) factor."""
    if g.degree == 0:
        return FormField(g.n, 0, g.mesh)
    w = g.mesh ** (-2)
    table = insertion_table(g.n, g.degree - 1)
    width = len(increasing_tuples(g.n, g.degree - 1))
    out: dict[tuple[int, ...], np.ndarray] = {}

    def bump(mu, l, val):
        vec = out.get(mu)
        if vec is None:
            vec = np.zeros(width, dtype=complex)
            out[mu] = vec
        vec[l] += val

    for mu, v in g.coeffs.items():
        for l, axis, l_new, sgn in table:
            c = v[l_new]
            if c == 0:
                continue
            shifted = list(mu)
            shifted[axis - 1] += 1
            bump(tuple(shifted), l, w * sgn * c)
            bump(mu, l, -w * sgn * c)
    return FormField(g.n, g.degree - 1, g.mesh, out)


def tilde_laplacian(a: FormField) -> FormField:
    """Componentwise positive lattice Laplacian times h^(-2):
    sum over axes of 2 f(mu) - f(mu+e) - f(mu-e)."""
    w = a.mesh ** (-2)
    out: dict[tuple[int, ...], np.ndarray] = {}

    def bump(mu, val):
        vec = out.get(mu)
        if vec is None:
            vec = np.zeros(a.width, dtype=complex)
            out[mu] = vec
        vec += val

    for mu, v in a.coeffs.items():
        bump(mu, 2 * a.n * w * v)
        for axis in range(1, a.n + 1):
            up = list(mu)
            up[axis - 1] += 1
            dn = list(mu)
            dn[axis - 1] -= 1
            bump(tuple(up), -w * v)
            bump(tuple(dn), -w * v)
    return FormField(a.n, a.degree, a.mesh, out)


def u_map(f: Cochain) -> FormField:
    """Cochain to form field: coefficient I at site mu is the value on the
    positively oriented cube based at mu spanning I."""
    n, j = f.n, f.degree
    width = len(increasing_tuples(n, j))
    out: dict[tuple[int, ...], np.ndarray] = {}
    for s, v in f.values.items():
        vec = out.get(s.base)
        if vec is None:
            vec = np.zeros(width, dtype=complex)
            out[s.base] = vec
        vec[rank_of(n, s.dims)] += v
    return FormField(n, j, f.mesh, out)


def u_inverse(a: FormField) -> Cochain:
    basis = increasing_tuples(a.n, a.degree)
    vals: dict[OrientedCube, complex] = {}
    for mu, vec in a.coeffs.items():
        for l, I in enumerate(basis):
            if vec[l] != 0:
                vals[OrientedCube(mu, IndexMap(I, 1, a.n))] = complex(vec[l])
    return Cochain(a.n, a.degree, a.mesh, vals)


def u_scale(a: FormField) -> dict[tuple[int, ...], np.ndarray]:
    """Strip the mesh weight: site -> h^(-j) * coefficient vector, plain l2."""
    s = a.mesh ** (-a.degree)
    return {mu: s * v for mu, v in a.coeffs.items()}


def u_scale_adjoint(vectors: dict[tuple[int, ...], np.ndarray], n: int, degree: int, mesh: float) -> FormField:
    s = mesh ** degree
    return FormField(n, degree, mesh, {mu: s * np.asarray(v, dtype=complex) for mu, v in vectors.items()})


def write_form_jsonl(a: FormField, fp) -> None:
    """Header {n, j, h}, then one line per nonzero scalar coefficient."""
    fp.write(json.dumps({"n": a.n, "j": a.degree, "h": a.mesh}) + "\n")
    basis = increasing_tuples(a.n, a.degree)
    for mu in sorted(a.coeffs):
        vec = a.coeffs[mu]
        for l, I in enumerate(basis):
            c = vec[l]
            if c != 0:
                fp.write(
                    json.dumps({"mu": list(mu), "I": list(I), "re": c.real, "im": c.imag}) + "\n"
                )


def read_form_jsonl(fp) -> FormField:
    header = json.loads(fp.readline())
    n, j, h = int(header["n"]), int(header["j"]), float(header["h"])
    width = len(increasing_tuples(n, j))
    out: dict[tuple[int, ...], np.ndarray] = {}
    for line in fp:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        mu = tuple(int(x) for x in rec["mu"])
        I = tuple(int(x) for x in rec["I"])
        vec = out.get(mu)
        if vec is None:
            vec = np.zeros(width, dtype=complex)
            out[mu] = vec
        vec[rank_of(n, I)] += complex(rec["re"], rec["im"])
    return FormField(n, j, h, out)
