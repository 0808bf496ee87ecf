"""Norm-resolvent distance bounds between lattice and continuum Dirac operators.

The comparison runs through a band-limited sampling map built from a smooth
window profile phi_hat whose integer translates square-sum to one.  The
operator-norm distance of the resolvents splits into two grid-computable
pieces:

  le0: how far the sampling map is from the identity, weighted by the
       continuum resolvent; at frequency xi the integrand is
       (1 - phi_hat(h xi)^2) ||(H(xi) - z)^-1||  plus the 3^n - 1 shifted
       overlap terms |phi_hat(h xi) phi_hat(h xi + mu)| ||(H(xi + mu/h) - z)^-1||.

  le1: the windowed fiber-by-fiber distance of the two resolvents,
       sup over xi and mu of |phi_hat(h xi) phi_hat(h xi + mu)| times
       || (H_h + z)/r_z - (H + z)/R_z || at xi + mu/h.

Both decay linearly in the mesh width; theorem_rate fits the log-log slope
of their sum over a list of meshes and reports the certificate.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .symbols import (
    assemble_symbol,
    continuum_coeffs,
    forward_coeffs,
    grading_offsets,
    squared_modulus,
)

__all__ = [
    "WindowFunction",
    "build_window",
    "partition_residual",
    "coisometry_residual",
    "projection_defect_apply",
    "frequency_grid_axis",
    "default_grid",
    "le0_term",
    "le1_term",
    "fiber_difference_matrix",
    "le0_bound",
    "le1_bound",
    "theorem_rate",
    "ConvergenceReport",
    "write_report_csv",
    "write_report_json",
]

_CHUNK = 1 << 16


@dataclass(frozen=True)
class WindowFunction:
    """Even C^1 bump: 1 on [-delta, delta], smooth cosine step down to 0 at
    1 - delta, with profile(t)^2 + profile(1 - t)^2 = 1 on the transition."""

    delta: float = 1.0 / 3.0

    def __post_init__(self) -> None:
        if not 0.0 < self.delta < 0.5:
            raise ValueError("delta must lie strictly between 0 and 1/2")

    @property
    def support_radius(self) -> float:
        return 1.0 - self.delta

    def profile(self, t):
        arr = np.asarray(t, dtype=float)
        u = np.abs(np.atleast_1d(arr))
        out = np.zeros_like(u)
        out[u <= self.delta] = 1.0
        m = (u > self.delta) & (u < self.support_radius)
        if np.any(m):
            x = (u[m] - self.delta) / (1.0 - 2.0 * self.delta)
            out[m] = np.cos(0.5 * np.pi * x * x * (3.0 - 2.0 * x))
        return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)

    def hat(self, v) -> np.ndarray:
        """Tensor window: product of the profile over the last axis."""
        return np.prod(self.profile(np.asarray(v, dtype=float)), axis=-1)


def build_window(delta: float = 1.0 / 3.0) -> WindowFunction:
    return WindowFunction(float(delta))


def partition_residual(window: WindowFunction, t) -> np.ndarray:
    """|sum over all integer k of profile(t + k)^2 - 1|, the square partition
    defect.  The sum is 1-periodic, so t is reduced first and two shifts
    suffice for the compactly supported profile."""
    u = np.asarray(t, dtype=float)
    u = u - np.floor(u)
    acc = np.zeros_like(u)
    for k in (-1, 0):
        acc = acc + window.profile(u + k) ** 2
    return np.abs(acc - 1.0)


def coisometry_residual(window: WindowFunction, h: float, xi) -> float:
    """Fiber defect of Q Q* = Id: the tensor partition residual at h*xi."""
    v = h * np.asarray(xi, dtype=float)
    v = v - np.floor(v)
    per_axis = np.zeros(v.shape[-1])
    for k in (-1, 0):
        per_axis = per_axis + window.profile(v + k) ** 2
    return abs(float(np.prod(per_axis)) - 1.0)


def projection_defect_apply(window: WindowFunction, h: float, g, xi) -> complex:
    """(1 - Q* Q) applied to a scalar frequency function at one point:
    g(xi) - sum over mu in {0,+-1}^n of hat(h xi) hat(h xi + mu) g(xi + mu/h)."""
    xi = np.asarray(xi, dtype=float)
    n = xi.shape[0]
    acc = complex(g(xi))
    w0 = float(window.hat(h * xi))
    for mu in itertools.product((-1, 0, 1), repeat=n):
        mu_arr = np.asarray(mu, dtype=float)
        w = w0 * float(window.hat(h * xi + mu_arr))
        if w != 0.0:
            acc -= w * complex(g(xi + mu_arr / h))
    return acc


def default_grid(n: int) -> int:
    return {1: 4096, 2: 256, 3: 64}.get(n, 16)


def frequency_grid_axis(grid: int, window: WindowFunction) -> np.ndarray:
    """Scale-free axis in h*xi units covering the window support, uniform plus
    a geometric cluster hugging each transition edge."""
    if grid < 16:
        raise ValueError("grid must be at least 16 points per axis")
    sigma = window.support_radius
    per_edge = max(1, min(4, grid // 16))
    uniform = grid - 4 * per_edge
    base = np.linspace(-sigma, sigma, uniform)
    spacing = 2.0 * sigma / (uniform - 1)
    extra = []
    for edge in (window.delta, sigma):
        for k in range(1, per_edge + 1):
            p = edge - spacing * 0.5**k
            extra.extend((p, -p))
    axis = np.unique(np.concatenate([base, np.asarray(extra)]))
    return np.clip(axis, -sigma, sigma)


def _invdist(z: complex, lam: np.ndarray) -> np.ndarray:
    """1 / dist(z, {+lam, -lam}) for nonnegative lam."""
    return 1.0 / np.minimum(np.abs(lam - z), np.abs(lam + z))


def _ray_distance(w: complex, a: float) -> float:
    if w.real >= a:
        return abs(w.imag)
    return math.hypot(a - w.real, w.imag)


def _check_spectral(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0.0:
        raise ValueError("z must have nonzero imaginary part")
    return z


def _profile_shifts(window: WindowFunction, scaled_axis: np.ndarray) -> dict[int, np.ndarray]:
    return {c: window.profile(scaled_axis + c) for c in (-1, 0, 1)}


def le0_term(n: int, h: float, z: complex, window: WindowFunction, xi) -> float:
    """Pointwise le0 integrand at one frequency (without the outside-support tail)."""
    z = _check_spectral(z)
    xi = np.asarray(xi, dtype=float)
    w0 = float(window.hat(h * xi))
    lam = 2.0 * np.pi * float(np.linalg.norm(xi))
    val = (1.0 - w0 * w0) * float(_invdist(z, np.asarray(lam)))
    for mu in itertools.product((-1, 0, 1), repeat=n):
        if not any(mu):
            continue
        mu_arr = np.asarray(mu, dtype=float)
        w = w0 * float(window.hat(h * xi + mu_arr))
        if w != 0.0:
            lam_mu = 2.0 * np.pi * float(np.linalg.norm(xi + mu_arr / h))
            val += abs(w) * float(_invdist(z, np.asarray(lam_mu)))
    return val


def fiber_difference_matrix(
    n: int, h: float, z: complex, zeta, discrete_coeffs: np.ndarray | None = None
) -> np.ndarray:
    """(H_h + z)/r_z - (H + z)/R_z at a single fiber; discrete_coeffs overrides
    the forward-difference multipliers (useful to zero out the distance)."""
    zeta = np.asarray(zeta, dtype=float)
    a = forward_coeffs(n, h, zeta) if discrete_coeffs is None else np.asarray(discrete_coeffs)
    A = continuum_coeffs(zeta)
    r = squared_modulus(a) - z * z
    R = squared_modulus(A) - z * z
    m = grading_offsets(n)[-1]
    eye = np.eye(m)
    return (assemble_symbol(n, a) + z * eye) / r - (assemble_symbol(n, A) + z * eye) / R


def le1_term(n: int, h: float, z: complex, window: WindowFunction, xi, mu) -> float:
    """Windowed fiber distance for one (xi, mu) pair."""
    z = _check_spectral(z)
    xi = np.asarray(xi, dtype=float)
    mu_arr = np.asarray(mu, dtype=float)
    w = float(window.hat(h * xi)) * float(window.hat(h * xi + mu_arr))
    if w == 0.0:
        return 0.0
    M = fiber_difference_matrix(n, h, z, xi + mu_arr / h)
    return abs(w) * float(np.linalg.norm(M, 2))


def _iter_chunks(n: int, grid: int, window: WindowFunction):
    """Yield (multi_indices, axis, shifts) chunk descriptors over the tensor grid."""
    axis = frequency_grid_axis(grid, window)
    shifts = _profile_shifts(window, axis)
    G = axis.shape[0]
    total = G**n
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total))
        multi = np.unravel_index(idx, (G,) * n)
        yield multi, axis, shifts


def le0_bound(n: int, h: float, z: complex, window: WindowFunction, grid: int) -> float:
    """Grid sup of the le0 integrand plus the closed-form tail outside the window."""
    z = _check_spectral(z)
    mus = [mu for mu in itertools.product((-1, 0, 1), repeat=n) if any(mu)]
    sup = 0.0
    for multi, axis, shifts in _iter_chunks(n, grid, window):
        xi = np.stack([axis[multi[l]] for l in range(n)], axis=1) / h
        hat0 = np.ones(xi.shape[0])
        for l in range(n):
            hat0 = hat0 * shifts[0][multi[l]]
        lam = 2.0 * np.pi * np.linalg.norm(xi, axis=1)
        val = (1.0 - hat0 * hat0) * _invdist(z, lam)
        for mu in mus:
            w = hat0.copy()
            for l in range(n):
                w = w * shifts[mu[l]][multi[l]]
            nz = w > 0.0
            if not np.any(nz):
                continue
            shifted = xi[nz] + np.asarray(mu, dtype=float) / h
            lam_mu = 2.0 * np.pi * np.linalg.norm(shifted, axis=1)
            val[nz] += w[nz] * _invdist(z, lam_mu)
        sup = max(sup, float(val.max()))
    a = 2.0 * np.pi * window.support_radius / h
    tail = 1.0 / min(_ray_distance(z, a), _ray_distance(-z, a))
    return max(sup, tail)


def le1_bound(n: int, h: float, z: complex, window: WindowFunction, grid: int) -> float:
    """Grid sup over (xi, mu) of the windowed fiber resolvent distance."""
    z = _check_spectral(z)
    mus = list(itertools.product((-1, 0, 1), repeat=n))
    sup = 0.0
    for multi, axis, shifts in _iter_chunks(n, grid, window):
        xi = np.stack([axis[multi[l]] for l in range(n)], axis=1) / h
        hat0 = np.ones(xi.shape[0])
        for l in range(n):
            hat0 = hat0 * shifts[0][multi[l]]
        for mu in mus:
            w = hat0.copy()
            for l in range(n):
                w = w * shifts[mu[l]][multi[l]]
            nz = w > 0.0
            if not np.any(nz):
                continue
            zetas = xi[nz] + np.asarray(mu, dtype=float) / h
            norms = kernels.fiber_difference_norms(n, h, z, zetas)
            sup = max(sup, float((w[nz] * norms).max()))
    return sup


@dataclass
class ConvergenceReport:
    """Mesh-by-mesh bounds and the fitted log-log rate."""

    n: int
    z: complex
    grid: int
    delta: float
    rows: list[tuple[float, float, float, float]] = field(default_factory=list)
    slope: float = float("nan")
    intercept: float = float("nan")


def theorem_rate(
    n: int,
    z: complex,
    h_list,
    window: WindowFunction | None = None,
    grid: int | None = None,
) -> ConvergenceReport:
    """Compute le0 + le1 for each mesh and fit the decay rate.

    h_list must be strictly decreasing with at least two entries, otherwise
    the slope is undefined.
    """
    z = _check_spectral(z)
    if window is None:
        window = build_window()
    if grid is None:
        grid = default_grid(n)
    hs = [float(h) for h in h_list]
    if len(hs) < 2:
        raise ValueError("slope undefined: need at least two mesh widths")
    if any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("h_list must be strictly decreasing")
    rows = []
    for h in hs:
        b0 = le0_bound(n, h, z, window, grid)
        b1 = le1_bound(n, h, z, window, grid)
        rows.append((h, b0, b1, b0 + b1))
    logs_h = np.log([r[0] for r in rows])
    logs_t = np.log([r[3] for r in rows])
    slope, intercept = np.polyfit(logs_h, logs_t, 1)
    return ConvergenceReport(n, z, grid, window.delta, rows, float(slope), float(intercept))


def write_report_csv(report: ConvergenceReport, fp) -> None:
    fp.write("h,bound_le0,bound_le1,total\n")
    for h, b0, b1, t in report.rows:
        fp.write(f"{h:.17g},{b0:.17g},{b1:.17g},{t:.17g}\n")


def write_report_json(report: ConvergenceReport, fp, seed: int | None = None) -> None:
    """Flat JSON with every float rendered at 17 significant digits."""

    def f(x: float) -> str:
        return format(x, ".17g")

    rows = ",".join(
        "{" + f'"h":{f(h)},"bound_le0":{f(b0)},"bound_le1":{f(b1)},"total":{f(t)}' + "}"
        for h, b0, b1, t in report.rows
    )
    head = (
        f'"n":{report.n},"z_re":{f(report.z.real)},"z_im":{f(report.z.imag)},'
        f'"grid":{report.grid},"delta":{f(report.delta)}'
    )
    if seed is not None:
        head += f',"seed":{int(seed)}'
    fp.write(
        "{"
        + head
        + f',"rows":[{rows}],"slope":{f(report.slope)},"intercept":{f(report.intercept)}'
        + "}\n"
    )


def read_report_json(fp) -> dict:
    return json.loads(fp.read())
