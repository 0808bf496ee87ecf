"""Finitely supported cochains on the cubical lattice and the Hodge-Dirac operator.

A degree-j cochain is an antisymmetric function on oriented j-cubes,
f(reverse(s)) = -f(s), stored on canonical representatives only.  The mesh
width h enters through the weight h^(-2j) in the inner product; the coboundary
d sums a cochain over the faces of each cube one degree up, and its adjoint
d_star sums over cofaces with the weight ratio h^(-2).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .cube_complex import (
    IndexMap,
    OrientedCube,
    boundary,
    canonicalize,
    cofaces,
    format_cube,
    parse_cube,
    reverse,
)

__all__ = [
    "Cochain",
    "GradedCochain",
    "delta",
    "d",
    "d_star",
    "inner",
    "norm",
    "laplacian",
    "hodge_dirac",
    "chirality",
    "massive_dirac",
    "measure_degree",
    "to_pair_sequences",
    "from_pair_sequences",
    "write_jsonl",
    "read_jsonl",
]


@dataclass
class Cochain:
    """Antisymmetric function on oriented j-cubes with finite support."""

    n: int
    degree: int
    mesh: float
    values: dict[OrientedCube, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= self.n:
            raise ValueError(f"degree {self.degree} outside 0..{self.n}")
        if self.mesh <= 0:
            raise ValueError("mesh must be positive")
        clean: dict[OrientedCube, complex] = {}
        for s, v in self.values.items():
            if s.n != self.n or s.degree != self.degree:
                raise ValueError(f"cube {format_cube(s)} does not match cochain shape")
            rep, parity = canonicalize(s)
            v = parity * complex(v)
            if v != 0:
                clean[rep] = clean.get(rep, 0) + v
        self.values = {s: v for s, v in clean.items() if v != 0}

    def __call__(self, s: OrientedCube) -> complex:
        rep, parity = canonicalize(s)
        return parity * self.values.get(rep, 0j)

    def support(self):
        return self.values.keys()

    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.n, self.degree) != (other.n, other.degree) or self.mesh != other.mesh:
            raise ValueError("cochain shapes do not match")
        vals = dict(self.values)
        for s, v in other.values.items():
            vals[s] = vals.get(s, 0) + v
        return Cochain(self.n, self.degree, self.mesh, vals)

    def __mul__(self, c: complex) -> "Cochain":
        return Cochain(self.n, self.degree, self.mesh, {s: c * v for s, v in self.values.items()})

    __rmul__ = __mul__

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-1) * other


def measure_degree(degree: int, mesh: float) -> float:
    """Weight m(s) = h^(-2j) of every degree-j cube."""
    return float(mesh) ** (-2 * degree)


def delta(s: OrientedCube, mesh: float) -> Cochain:
    """Indicator cochain of s: value 1 at s, -1 at reverse(s)."""
    return Cochain(s.n, s.degree, mesh, {s: 1.0})


def inner(f: Cochain, g: Cochain) -> complex:
    """Weighted inner product; the canonical-representative sum absorbs the 1/2."""
    if (f.n, f.degree) != (g.n, g.degree) or f.mesh != g.mesh:
        raise ValueError("cochain shapes do not match")
    m = measure_degree(f.degree, f.mesh)
    acc = 0j
    small, big = (f, g) if len(f.values) <= len(g.values) else (g, f)
    for s, v in small.values.items():
        w = big.values.get(s)
        if w is not None:
            acc += (v * w.conjugate()) if small is f else (w * v.conjugate())
    return m * acc


def norm(f: Cochain) -> float:
    return math.sqrt(inner(f, f).real)


def d(f: Cochain) -> Cochain:
    """Coboundary: (d f)(s) = sum of f over the faces of s."""
    if f.degree >= f.n:
        raise ValueError("coboundary of a top-degree cochain leaves the complex")
    out: dict[OrientedCube, complex] = {}
    for r, v in f.values.items():
        for s in cofaces(r):
            rep, parity = canonicalize(s)
            out[rep] = out.get(rep, 0) + parity * v
    return Cochain(f.n, f.degree + 1, f.mesh, out)


def d_star(g: Cochain) -> Cochain:
    """Adjoint of d: (d_star g)(r) = h^(-2) * sum of g over the cofaces of r."""
    if g.degree == 0:
        return _zero_like(g, 0)
    w = g.mesh ** (-2)
    out: dict[OrientedCube, complex] = {}
    for s, v in g.values.items():
        for r in boundary(s):
            rep, parity = canonicalize(r)
            out[rep] = out.get(rep, 0) + parity * w * v
    return Cochain(g.n, g.degree - 1, g.mesh, out)


def _zero_like(f: Cochain, degree: int) -> Cochain:
    return Cochain(f.n, degree, f.mesh)


def laplacian(f: Cochain) -> Cochain:
    """Degree-preserving Hodge Laplacian d_star d + d d_star."""
    out = _zero_like(f, f.degree)
    if f.degree < f.n:
        out = out + d_star(d(f))
    if f.degree > 0:
        out = out + d(d_star(f))
    return out


@dataclass
class GradedCochain:
    """Full cochain with one component per degree 0..n."""

    n: int
    mesh: float
    components: tuple[Cochain, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.n + 1:
            raise ValueError("need one component per degree 0..n")
        for j, f in enumerate(self.components):
            if f.degree != j or f.n != self.n or f.mesh != self.mesh:
                raise ValueError(f"component {j} has wrong shape")

    @classmethod
    def zero(cls, n: int, mesh: float) -> "GradedCochain":
        return cls(n, mesh, tuple(Cochain(n, j, mesh) for j in range(n + 1)))

    @classmethod
    def from_parts(cls, n: int, mesh: float, parts: dict[int, Cochain]) -> "GradedCochain":
        comps = [parts.get(j, Cochain(n, j, mesh)) for j in range(n + 1)]
        return cls(n, mesh, tuple(comps))

    def __add__(self, other: "GradedCochain") -> "GradedCochain":
        return GradedCochain(
            self.n, self.mesh, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __mul__(self, c: complex) -> "GradedCochain":
        return GradedCochain(self.n, self.mesh, tuple(c * f for f in self.components))

    __rmul__ = __mul__

    def __sub__(self, other: "GradedCochain") -> "GradedCochain":
        return self + (-1) * other


def graded_inner(F: GradedCochain, G: GradedCochain) -> complex:
    return sum(inner(a, b) for a, b in zip(F.components, G.components))


def hodge_dirac(F: GradedCochain) -> GradedCochain:
    """D = d + d_star acting degree-wise on a graded cochain."""
    comps = []
    for j in range(F.n + 1):
        cur = Cochain(F.n, j, F.mesh)
        if j >= 1:
            cur = cur + d(F.components[j - 1])
        if j + 1 <= F.n:
            cur = cur + d_star(F.components[j + 1])
        comps.append(cur)
    return GradedCochain(F.n, F.mesh, tuple(comps))


def chirality(F: GradedCochain) -> GradedCochain:
    """Grading involution: +1 on even degrees, -1 on odd degrees."""
    comps = tuple((1 if j % 2 == 0 else -1) * f for j, f in enumerate(F.components))
    return GradedCochain(F.n, F.mesh, comps)


def massive_dirac(F: GradedCochain, mass: float) -> GradedCochain:
    """D + m * chirality; squares to D^2 + m^2."""
    return hodge_dirac(F) + mass * chirality(F)


def to_pair_sequences(F: GradedCochain) -> tuple[dict[int, complex], dict[int, complex]]:
    """One-dimensional lattice only: split into vertex and edge scalar sequences.

    u(x) is the value at the incoming-flag vertex at x, v(x) the value on the
    edge from x to x+1.  At mesh 1 this is a unitary onto two copies of the
    square-summable sequences.
    """
    if F.n != 1:
        raise ValueError("pair representation is defined for n = 1")
    u: dict[int, complex] = {}
    v: dict[int, complex] = {}
    for s, val in F.components[0].values.items():
        u[s.base[0]] = val
    for s, val in F.components[1].values.items():
        v[s.base[0]] = val
    return u, v


def from_pair_sequences(u: dict[int, complex], v: dict[int, complex], mesh: float = 1.0) -> GradedCochain:
    f0 = Cochain(1, 0, mesh, {OrientedCube((x,), IndexMap((), 1, 1)): c for x, c in u.items()})
    f1 = Cochain(1, 1, mesh, {OrientedCube((x,), IndexMap((1,), 1, 1)): c for x, c in v.items()})
    return GradedCochain(1, mesh, (f0, f1))


def write_jsonl(f: Cochain, fp) -> None:
    """One header line {n, j, h}, then one line per supported cube."""
    fp.write(json.dumps({"n": f.n, "j": f.degree, "h": f.mesh}) + "\n")
    for s in sorted(f.values, key=OrientedCube.sort_key):
        v = f.values[s]
        fp.write(json.dumps({"cube": format_cube(s), "re": v.real, "im": v.imag}) + "\n")


def read_jsonl(fp) -> Cochain:
    header = json.loads(fp.readline())
    n, j, h = int(header["n"]), int(header["j"]), float(header["h"])
    vals: dict[OrientedCube, complex] = {}
    for line in fp:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        s = parse_cube(rec["cube"], n)
        if s.degree != j:
            raise ValueError(f"cube {rec['cube']} has degree {s.degree}, header says {j}")
        vals[s] = complex(rec["re"], rec["im"])
    return Cochain(n, j, h, vals)
