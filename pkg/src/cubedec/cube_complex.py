"""Oriented cubes on the integer lattice and their boundary combinatorics.

An oriented j-cube in Z^n is a pair (base, imap): an anchor vertex together
with a strictly monotone index map listing the j directions the cube spans.
The map's traversal direction carries the orientation: increasing traversal
has sign +1 and anchors the cube at its smallest corner, decreasing traversal
has sign -1 and anchors it at the largest corner.  Reversal swaps the two
descriptions of the same unoriented cube.  Degree-0 cubes are vertices with
an explicit +/- flag playing the role of the traversal sign.

Cube literals are plain strings, e.g. ``(0,1; 1 2; +)`` for a square based at
(0,1) spanning directions 1 and 2, and ``(0,1; +)`` for a flagged vertex.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

__all__ = [
    "IndexMap",
    "OrientedCube",
    "restrict",
    "involute",
    "reverse",
    "canonicalize",
    "boundary",
    "cofaces",
    "vertex_set",
    "format_cube",
    "parse_cube",
]


@dataclass(frozen=True)
class IndexMap:
    """Strictly monotone map {1..j} -> {1..n}, stored as sorted dims + sign.

    sign +1 means the traversal visits dims in increasing order, -1 in
    decreasing order.  For j = 0 the dims are empty and the sign doubles as
    the vertex in/out flag.
    """

    dims: tuple[int, ...]
    sign: int
    n: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if any(d < 1 or d > self.n for d in self.dims):
            raise ValueError(f"dims {self.dims} out of range 1..{self.n}")
        if any(a >= b for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError(f"dims must be strictly increasing, got {self.dims}")

    @property
    def degree(self) -> int:
        return len(self.dims)

    def __call__(self, i: int) -> int:
        """Value at traversal position i, 1-based."""
        j = len(self.dims)
        if not 1 <= i <= j:
            raise IndexError(f"position {i} outside 1..{j}")
        return self.dims[i - 1] if self.sign > 0 else self.dims[j - i]


def involute(imap: IndexMap) -> IndexMap:
    """Reverse the traversal order: position i goes to j - i + 1."""
    return IndexMap(imap.dims, -imap.sign, imap.n)


def restrict(imap: IndexMap, i0: int) -> IndexMap:
    """Drop the i0-th traversal entry, keeping the traversal direction."""
    j = imap.degree
    if j < 1:
        raise ValueError("cannot restrict an empty index map")
    if not 1 <= i0 <= j:
        raise ValueError(f"restriction position {i0} outside 1..{j}")
    if imap.sign > 0:
        dims = imap.dims[: i0 - 1] + imap.dims[i0:]
    else:
        # decreasing traversal: the i0-th entry is dims[j - i0]
        k = j - i0
        dims = imap.dims[:k] + imap.dims[k + 1 :]
    return IndexMap(dims, imap.sign, imap.n)


@dataclass(frozen=True)
class OrientedCube:
    """Oriented cube (base; imap) in Z^n."""

    base: tuple[int, ...]
    imap: IndexMap

    def __post_init__(self) -> None:
        if len(self.base) != self.imap.n:
            raise ValueError(
                f"base has length {len(self.base)}, ambient dimension is {self.imap.n}"
            )

    @property
    def n(self) -> int:
        return self.imap.n

    @property
    def degree(self) -> int:
        return self.imap.degree

    @property
    def dims(self) -> tuple[int, ...]:
        return self.imap.dims

    @property
    def sign(self) -> int:
        return self.imap.sign

    @property
    def ceil(self) -> tuple[int, ...]:
        """The opposite anchor: base plus sign times the sum of spanned steps."""
        out = list(self.base)
        for d in self.dims:
            out[d - 1] += self.sign
        return tuple(out)

    def sort_key(self):
        return (self.degree, self.base, self.dims, self.sign)


def cube(base, dims, sign, n=None) -> OrientedCube:
    """Convenience constructor."""
    base = tuple(int(x) for x in base)
    if n is None:
        n = len(base)
    return OrientedCube(base, IndexMap(tuple(int(d) for d in dims), int(sign), n))


def reverse(s: OrientedCube) -> OrientedCube:
    """The same unoriented cube with the opposite orientation."""
    return OrientedCube(s.ceil, involute(s.imap))


def canonicalize(s: OrientedCube) -> tuple[OrientedCube, int]:
    """Return (rep, parity): rep has sign +1, parity is +1 or -1.

    parity -1 means s is the reversal of rep, so an antisymmetric function
    takes value parity * f(rep) at s.
    """
    if s.sign > 0:
        return s, 1
    return reverse(s), -1


def vertex_set(s: OrientedCube) -> frozenset[tuple[int, ...]]:
    """All 2^j corners of the cube."""
    corners = []
    for sub in itertools.chain.from_iterable(
        itertools.combinations(s.dims, k) for k in range(s.degree + 1)
    ):
        p = list(s.base)
        for d in sub:
            p[d - 1] += s.sign
        corners.append(tuple(p))
    return frozenset(corners)


def boundary(s: OrientedCube) -> tuple[OrientedCube, ...]:
    """Oriented faces of s, one per unoriented face.

    For an edge the faces are the two endpoints, outgoing flag at the lower
    anchor and incoming at the upper.  For j >= 2 the faces anchored at the
    base keep the restricted map, the faces anchored at the opposite corner
    take the involuted restriction, and alternating reversals fix signs so
    that faces of faces cancel in pairs.
    """
    j = s.degree
    if j == 0:
        raise ValueError("a vertex has no boundary")
    if j == 1:
        lo = OrientedCube(s.base, IndexMap((), -1, s.n))
        hi = OrientedCube(s.ceil, IndexMap((), 1, s.n))
        return (lo, hi)
    faces = []
    top = s.ceil
    # One reversal parity serves both anchor families; it flips with the
    # traversal direction so that reversing s reverses every face.
    def flip(i):
        return i % 2 if s.sign > 0 else (j - i) % 2

    for i in range(1, j + 1):
        f = OrientedCube(s.base, restrict(s.imap, i))
        if flip(i):
            f = reverse(f)
        faces.append(f)
    for i in range(1, j + 1):
        g = OrientedCube(top, involute(restrict(s.imap, i)))
        if flip(i):
            g = reverse(g)
        faces.append(g)
    return tuple(faces)


@functools.lru_cache(maxsize=1 << 16)
def _cofaces_canonical(r: OrientedCube) -> tuple[OrientedCube, ...]:
    out = []
    rbar = reverse(r)
    for a in range(1, r.n + 1):
        if a in r.dims:
            continue
        dims = tuple(sorted(r.dims + (a,)))
        for shift in (0, -1):
            b = list(r.base)
            b[a - 1] += shift
            c = OrientedCube(tuple(b), IndexMap(dims, 1, r.n))
            bd = boundary(c)
            if r in bd:
                out.append(c)
            elif rbar in bd:
                out.append(reverse(c))
    out.sort(key=OrientedCube.sort_key)
    return tuple(out)


def cofaces(r: OrientedCube) -> tuple[OrientedCube, ...]:
    """All oriented (j+1)-cubes whose boundary contains r.

    There are 2(n - j) of them: one orientation of each unoriented cube one
    degree up that contains r geometrically.
    """
    rep, parity = canonicalize(r)
    ups = _cofaces_canonical(rep)
    if parity < 0:
        ups = tuple(reverse(c) for c in ups)
    return ups


def format_cube(s: OrientedCube) -> str:
    coords = ",".join(str(x) for x in s.base)
    flag = "+" if s.sign > 0 else "-"
    if s.degree == 0:
        return f"({coords}; {flag})"
    dims = " ".join(str(d) for d in s.dims)
    return f"({coords}; {dims}; {flag})"


def parse_cube(text: str, n: int | None = None) -> OrientedCube:
    """Inverse of format_cube.  Ambient dimension is taken from the coords."""
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ValueError(f"malformed cube literal: {text!r}")
    parts = [p.strip() for p in t[1:-1].split(";")]
    if len(parts) == 2:
        coords, flag = parts
        dims_part = ""
    elif len(parts) == 3:
        coords, dims_part, flag = parts
    else:
        raise ValueError(f"malformed cube literal: {text!r}")
    if flag not in ("+", "-"):
        raise ValueError(f"bad orientation flag in {text!r}")
    base = tuple(int(x) for x in coords.split(",") if x.strip() != "")
    dims = tuple(int(d) for d in dims_part.split()) if dims_part else ()
    amb = n if n is not None else len(base)
    if len(base) != amb:
        raise ValueError(f"cube literal {text!r} has {len(base)} coords, expected {amb}")
    return OrientedCube(base, IndexMap(dims, 1 if flag == "+" else -1, amb))
