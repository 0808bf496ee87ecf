"""Runnable invariant suites behind the `verify` command.

Each check draws seeded random inputs, exercises one structural property of
the complex, and reports pass/fail with a short detail string.  The suites
are deliberately independent of the test harness so a deployed install can
be validated in place.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import cochains, continuum_limit, cube_complex, forms, symbols, torus_lab
from .cochains import Cochain, GradedCochain
from .cube_complex import IndexMap, OrientedCube, boundary, canonicalize, reverse
from .forms import FormField

__all__ = ["CheckResult", "random_cube", "random_cochain", "random_form", "run"]

TOL = 1e-12


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_cube(rng: np.random.Generator, n: int, j: int, span: int = 4) -> OrientedCube:
    base = tuple(int(x) for x in rng.integers(-span, span + 1, size=n))
    dims = tuple(sorted(rng.choice(np.arange(1, n + 1), size=j, replace=False).tolist()))
    sign = 1 if rng.integers(0, 2) else -1
    return OrientedCube(base, IndexMap(dims, sign, n))


def random_cochain(
    rng: np.random.Generator, n: int, j: int, h: float, support: int = 6, integer: bool = False
) -> Cochain:
    vals: dict[OrientedCube, complex] = {}
    for _ in range(support):
        s = random_cube(rng, n, j)
        if integer:
            v = complex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
        else:
            v = complex(rng.normal(), rng.normal())
        vals[s] = vals.get(s, 0) + v
    return Cochain(n, j, h, vals)


def random_graded(rng: np.random.Generator, n: int, h: float, support: int = 4) -> GradedCochain:
    parts = {j: random_cochain(rng, n, j, h, support) for j in range(n + 1)}
    return GradedCochain.from_parts(n, h, parts)


def random_form(rng: np.random.Generator, n: int, j: int, h: float, support: int = 6) -> FormField:
    width = len(forms.increasing_tuples(n, j))
    coeffs = {}
    for _ in range(support):
        mu = tuple(int(x) for x in rng.integers(-3, 4, size=n))
        coeffs[mu] = rng.normal(size=width) + 1j * rng.normal(size=width)
    return FormField(n, j, h, coeffs)


def _multiset(cubes) -> dict:
    out: dict = {}
    for s in cubes:
        out[s] = out.get(s, 0) + 1
    return out


def check_index_map_identities(n: int, rng) -> CheckResult:
    """Restriction versus involution, and commuting double restrictions."""
    bad = 0
    cases = 0
    for j in range(1, min(n, 4) + 1):
        for dims in itertools.combinations(range(1, n + 1), j):
            for sign in (1, -1):
                im = IndexMap(dims, sign, n)
                for i0 in range(1, j + 1):
                    cases += 1
                    lhs = cube_complex.restrict(cube_complex.involute(im), i0)
                    rhs = cube_complex.involute(cube_complex.restrict(im, j - i0 + 1))
                    if lhs != rhs:
                        bad += 1
                    if cube_complex.involute(lhs) != cube_complex.restrict(im, j - i0 + 1):
                        bad += 1
                    for i1 in range(1, j):
                        cases += 1
                        left = cube_complex.restrict(cube_complex.restrict(im, i0), i1)
                        if i1 < i0:
                            right = cube_complex.restrict(
                                cube_complex.restrict(im, i1), i0 - 1
                            )
                        else:
                            right = cube_complex.restrict(
                                cube_complex.restrict(im, i1 + 1), i0
                            )
                        if left != right:
                            bad += 1
    return CheckResult("index-map-identities", bad == 0, f"{cases} cases, {bad} mismatches")


def check_boundary_reversal(n: int, rng) -> CheckResult:
    bad = 0
    trials = 100
    for _ in range(trials):
        j = int(rng.integers(1, n + 1))
        s = random_cube(rng, n, j)
        lhs = _multiset(boundary(reverse(s)))
        rhs = _multiset(reverse(f) for f in boundary(s))
        if lhs != rhs:
            bad += 1
    return CheckResult("boundary-reversal", bad == 0, f"{trials} cubes, {bad} mismatches")


def check_boundary_boundary(n: int, rng) -> CheckResult:
    """Faces of faces come in reversal pairs."""
    bad = 0
    trials = 100
    for _ in range(trials):
        j = int(rng.integers(2, n + 1)) if n >= 2 else 1
        if j < 2:
            continue
        s = random_cube(rng, n, j)
        grand = _multiset(r for f in boundary(s) for r in boundary(f))
        for r, c in grand.items():
            if grand.get(reverse(r), 0) != c:
                bad += 1
    return CheckResult("boundary-boundary-involutive", bad == 0, f"{trials} cubes, {bad} unpaired")


def check_worked_cube(n: int, rng) -> CheckResult:
    s = cube_complex.cube((0, 0, 0), (1, 2, 3), 1)
    got = set(boundary(s))
    top = (1, 1, 1)
    want = {
        reverse(cube_complex.cube((0, 0, 0), (2, 3), 1)),
        cube_complex.cube((0, 0, 0), (1, 3), 1),
        reverse(cube_complex.cube((0, 0, 0), (1, 2), 1)),
        reverse(OrientedCube(top, IndexMap((2, 3), -1, 3))),
        OrientedCube(top, IndexMap((1, 3), -1, 3)),
        reverse(OrientedCube(top, IndexMap((1, 2), -1, 3))),
    }
    ok = got == want
    return CheckResult("worked-cube-boundary", ok, "6 faces matched" if ok else f"got {got}")


def check_d_squared(n: int, rng) -> CheckResult:
    bad = 0
    trials = 0
    for j in range(0, n - 1):
        for _ in range(25):
            trials += 1
            f = random_cochain(rng, n, j, 0.5, integer=True)
            ddf = cochains.d(cochains.d(f))
            if ddf.values:
                bad += 1
    return CheckResult("d-squared-zero", bad == 0, f"{trials} cochains, {bad} nonzero")


def check_adjointness(n: int, rng) -> CheckResult:
    worst = 0.0
    for h in (1.0, 0.5):
        for j in range(0, n):
            f = random_cochain(rng, n, j, h)
            g = random_cochain(rng, n, j + 1, h)
            lhs = cochains.inner(cochains.d(f), g)
            rhs = cochains.inner(f, cochains.d_star(g))
            scale = max(1.0, abs(lhs))
            worst = max(worst, abs(lhs - rhs) / scale)
    return CheckResult("adjoint-d-dstar", worst <= TOL, f"worst residual {worst:.2e}")


def check_cochain_form_diagram(n: int, rng) -> CheckResult:
    worst = 0.0
    for h in (1.0, 0.25):
        for j in range(0, n):
            f = random_cochain(rng, n, j, h)
            left = forms.u_map(cochains.d(f))
            right = forms.tilde_d(forms.u_map(f))
            worst = max(worst, _form_gap(left, right))
            g = random_cochain(rng, n, j + 1, h)
            left2 = forms.u_map(cochains.d_star(g))
            right2 = forms.tilde_d_star(forms.u_map(g))
            worst = max(worst, _form_gap(left2, right2))
            worst = max(
                worst,
                abs(forms.form_norm(forms.u_map(f)) - cochains.norm(f)),
            )
    return CheckResult("cochain-form-diagram", worst <= 1e-10, f"worst gap {worst:.2e}")


def _form_gap(a: FormField, b: FormField) -> float:
    diff = a - b
    if not diff.coeffs:
        return 0.0
    return max(float(np.max(np.abs(v))) for v in diff.coeffs.values())


def check_wedge_insertion(n: int, rng) -> CheckResult:
    bad = 0
    cases = 0
    for j in range(0, n):
        table = {(l, axis): (l_new, sgn) for l, axis, l_new, sgn in forms.insertion_table(n, j)}
        for l, I in enumerate(forms.increasing_tuples(n, j)):
            for axis in range(1, n + 1):
                if axis in I:
                    continue
                cases += 1
                one = FormField(n, 1, 1.0, {(0,) * n: np.eye(n)[axis - 1]})
                vec = np.zeros(len(forms.increasing_tuples(n, j)), dtype=complex)
                vec[l] = 1.0
                base = FormField(n, j, 1.0, {(0,) * n: vec})
                w = forms.wedge(one, base)
                got = w.vector_at((0,) * n)
                l_new, sgn = table[(l, axis)]
                expect = np.zeros_like(got)
                expect[l_new] = sgn
                if not np.allclose(got, expect, atol=0):
                    bad += 1
    return CheckResult("wedge-insertion-consistency", bad == 0, f"{cases} cases, {bad} mismatches")


def check_form_laplacian(n: int, rng) -> CheckResult:
    worst = 0.0
    for h in (1.0, 0.5):
        for j in range(0, n + 1):
            a = random_form(rng, n, j, h)
            first = FormField(n, j, h)
            if j < n:
                first = first + forms.tilde_d_star(forms.tilde_d(a))
            if j > 0:
                first = first + forms.tilde_d(forms.tilde_d_star(a))
            worst = max(worst, _form_gap(first, forms.tilde_laplacian(a)))
    return CheckResult("square-of-first-order", worst <= 1e-9, f"worst gap {worst:.2e}")


def check_symbol_structure(n: int, rng) -> CheckResult:
    worst = 0.0
    gamma = symbols.chirality_matrix(n)
    for _ in range(50):
        h = float(rng.choice([1.0, 0.5, 0.125]))
        xi = rng.uniform(-3, 3, size=n)
        S = symbols.discrete_symbol(n, h, xi).matrix
        worst = max(worst, float(np.max(np.abs(S - S.conj().T))))
        worst = max(worst, float(np.max(np.abs(gamma @ S @ gamma + S))))
        rho = symbols.squared_modulus(symbols.forward_coeffs(n, h, xi))
        worst = max(
            worst, float(np.max(np.abs(S @ S - rho * np.eye(S.shape[0])))) / max(1.0, rho)
        )
        shift = np.zeros(n)
        shift[int(rng.integers(0, n))] = 1.0 / h
        S2 = symbols.discrete_symbol(n, h, xi + shift).matrix
        worst = max(worst, float(np.max(np.abs(S2 - S))) * h)
    return CheckResult("symbol-structure", worst <= 1e-10, f"worst residual {worst:.2e}")


def check_fiber_resolvent(n: int, rng) -> CheckResult:
    worst = 0.0
    m = 2**n
    for _ in range(50):
        h = float(rng.choice([1.0, 0.25]))
        xi = rng.uniform(-3, 3, size=n)
        z = complex(rng.normal(), rng.normal() + np.sign(rng.normal()) * 0.7)
        S = symbols.discrete_symbol(n, h, xi).matrix
        rho = symbols.squared_modulus(symbols.forward_coeffs(n, h, xi))
        fast = symbols.fiber_resolvent(S, z, rho)
        dense = np.linalg.inv(S - z * np.eye(m))
        worst = max(worst, float(np.max(np.abs(fast - dense))))
    return CheckResult("fiber-resolvent", worst <= 1e-10, f"worst residual {worst:.2e}")


def check_window(n: int, rng) -> CheckResult:
    w = continuum_limit.build_window()
    t = rng.uniform(-2, 2, size=20000)
    res = float(np.max(continuum_limit.partition_residual(w, t)))
    sup_ok = w.profile(w.support_radius) == 0.0 and w.profile(0.999) == 0.0
    ok = res <= TOL and sup_ok
    return CheckResult("window-partition", ok, f"max residual {res:.2e}")


def check_kernel_backends(n: int, rng) -> CheckResult:
    from . import kernels

    zetas = rng.uniform(-4, 4, size=(64, n))
    z = 1.5j
    direct = np.array(
        [
            np.linalg.norm(continuum_limit.fiber_difference_matrix(n, 0.25, z, zeta), 2)
            for zeta in zetas
        ]
    )
    fast = kernels.fiber_difference_norms(n, 0.25, z, zetas)
    worst = float(np.max(np.abs(direct - fast)))
    return CheckResult(
        "kernel-fiber-norms", worst <= 1e-10, f"{kernels.backend_name()} backend, gap {worst:.2e}"
    )


def check_torus_structure(n: int, rng) -> CheckResult:
    tc = torus_lab.assemble(2, 3, 0.5)
    nil = max(
        (abs(tc.d_mats[j + 1] @ tc.d_mats[j]).max() if j + 1 < len(tc.d_mats) else 0)
        for j in range(len(tc.d_mats))
    )
    dims = torus_lab.harmonic_dimensions(tc)
    ok = nil == 0 and dims == (1, 2, 1)
    return CheckResult("torus-structure", ok, f"d.d max {nil}, harmonic dims {dims}")


CHECKS = [
    check_index_map_identities,
    check_boundary_reversal,
    check_boundary_boundary,
    check_worked_cube,
    check_d_squared,
    check_adjointness,
    check_cochain_form_diagram,
    check_wedge_insertion,
    check_form_laplacian,
    check_symbol_structure,
    check_fiber_resolvent,
    check_window,
    check_kernel_backends,
    check_torus_structure,
]


def run(n: int = 3, seed: int = 0, fp=None) -> int:
    """Run every suite at ambient dimension n.  Returns the count of failures."""
    import sys

    fp = fp or sys.stdout
    failures = 0
    fp.write(f"invariant suites: n={n} seed={seed}\n")
    for fn in CHECKS:
        rng = np.random.default_rng(seed + hash(fn.__name__) % 100000)
        res = fn(n, rng)
        tag = "ok" if res.passed else "FAIL"
        fp.write(f"[{tag}] {res.name}: {res.detail}\n")
        if not res.passed:
            failures += 1
    fp.write(f"{len(CHECKS) - failures}/{len(CHECKS)} suites passed\n")
    return failures
