import io
import itertools
import json
import math

import numpy as np
import pytest

from cubedec.continuum_limit import (
    ConvergenceReport,
    WindowFunction,
    build_window,
    coisometry_residual,
    default_grid,
    fiber_difference_matrix,
    frequency_grid_axis,
    le0_bound,
    le0_term,
    le1_bound,
    le1_term,
    partition_residual,
    projection_defect_apply,
    read_report_json,
    theorem_rate,
    write_report_csv,
    write_report_json,
)
from cubedec.symbols import continuum_symbol, discrete_symbol


def test_window_validation():
    with pytest.raises(ValueError):
        build_window(0.0)
    with pytest.raises(ValueError):
        build_window(0.5)
    w = build_window(0.25)
    assert w.support_radius == 0.75


def test_window_profile_shape():
    w = build_window()
    assert w.profile(0.0) == 1.0
    assert w.profile(w.delta) == 1.0
    assert w.profile(-w.delta) == 1.0
    assert w.profile(w.support_radius) == 0.0
    assert w.profile(5.0) == 0.0
    ts = np.linspace(w.delta, w.support_radius, 200)
    vals = w.profile(ts)
    assert np.all(np.diff(vals) <= 1e-12)
    assert np.all(vals >= 0.0) and np.all(vals <= 1.0)
    # C^1 at the seams: one-sided slopes vanish
    eps = 1e-6
    assert abs(w.profile(w.delta + eps) - 1.0) <= 1e-9
    assert abs(w.profile(w.support_radius - eps)) <= 1e-9


def test_window_supported_inside_open_interval():
    for delta in (0.1, 1.0 / 3.0, 0.45):
        w = build_window(delta)
        assert w.support_radius < 1.0
        for t in np.linspace(w.support_radius, 3.0, 50):
            assert w.profile(t) == 0.0
            assert w.profile(-t) == 0.0


def test_partition_of_unity():
    rng = np.random.default_rng(1)
    for delta in (0.1, 1.0 / 3.0, 0.45):
        w = build_window(delta)
        t = rng.uniform(-2.5, 2.5, size=100000)
        assert float(partition_residual(w, t).max()) <= 1e-12


def test_coisometry_residual():
    rng = np.random.default_rng(2)
    for n in (1, 2, 3):
        for h in (1.0, 0.25):
            w = build_window()
            for _ in range(50):
                xi = rng.uniform(-4, 4, size=n) / h
                assert coisometry_residual(w, h, xi) <= 1e-12


def test_projection_defect_endpoints():
    w = build_window()
    h = 0.5
    one = lambda xi: 1.0
    assert abs(projection_defect_apply(w, h, one, np.zeros(2))) <= 1e-12
    far = np.array([5.0, 0.0]) / h
    assert projection_defect_apply(w, h, one, far) == pytest.approx(1.0)


def test_frequency_grid_axis():
    w = build_window()
    axis = frequency_grid_axis(64, w)
    assert np.all(np.diff(axis) > 0)
    assert axis[0] == -w.support_radius
    assert axis[-1] == w.support_radius
    assert np.max(np.abs(axis + axis[::-1])) <= 1e-15
    assert 56 <= axis.size <= 64
    with pytest.raises(ValueError):
        frequency_grid_axis(8, w)


def test_default_grid_table():
    assert default_grid(1) == 4096
    assert default_grid(2) == 256
    assert default_grid(3) == 64
    assert default_grid(4) == 16


def test_fiber_difference_is_resolvent_difference():
    # independent route: invert the shifted symbols directly
    rng = np.random.default_rng(3)
    for n in (1, 2):
        for _ in range(40):
            zeta = rng.uniform(-6, 6, size=n)
            z = complex(rng.standard_normal(), rng.choice([-1, 1]) * (0.5 + rng.random()))
            h = float(rng.choice([0.5, 0.25]))
            M = fiber_difference_matrix(n, h, z, zeta)
            Sh = discrete_symbol(n, h, zeta).matrix
            C = continuum_symbol(n, zeta).matrix
            eye = np.eye(2**n)
            want = np.linalg.inv(Sh - z * eye) - np.linalg.inv(C - z * eye)
            assert np.max(np.abs(M - want)) <= 1e-12 * max(1.0, np.max(np.abs(want)))


def test_fiber_difference_override_kills_distance():
    zeta = np.array([0.3, -1.2])
    from cubedec.symbols import continuum_coeffs

    M = fiber_difference_matrix(2, 0.5, 1j, zeta, discrete_coeffs=continuum_coeffs(zeta))
    assert np.max(np.abs(M)) <= 1e-14


def test_le_terms_pointwise():
    w = build_window()
    z = 1j
    assert le0_term(1, 0.25, z, w, np.zeros(1)) == 0.0
    assert le1_term(1, 0.25, z, w, np.array([100.0]), (0,)) == 0.0
    h = 0.25
    xi = np.array([0.9 / h])  # outside the window support
    lam = 2.0 * np.pi * abs(xi[0])
    want = 1.0 / min(abs(lam - z), abs(lam + z))
    assert le0_term(1, h, z, w, xi) == pytest.approx(want)
    # windowed distance equals hat product times the dense resolvent gap
    xi2 = np.array([0.3 / h, -0.1 / h])
    mu = (1, 0)
    weight = float(w.hat(h * xi2)) * float(w.hat(h * xi2 + np.asarray(mu)))
    zeta = xi2 + np.asarray(mu, dtype=float) / h
    Sh = discrete_symbol(2, h, zeta).matrix
    C = continuum_symbol(2, zeta).matrix
    eye = np.eye(4)
    gap = np.linalg.inv(Sh - z * eye) - np.linalg.inv(C - z * eye)
    want2 = weight * np.linalg.norm(gap, 2)
    assert le1_term(2, h, z, w, xi2, mu) == pytest.approx(want2, rel=1e-12)


def test_bounds_match_scalar_recomputation():
    # the vectorized sup must agree with a plain loop over the same grid
    w = build_window()
    z = 0.5 + 1j
    for n, grid in [(1, 64), (2, 16)]:
        h = 0.25
        axis = frequency_grid_axis(grid, w) / h
        pts = itertools.product(axis, repeat=n)
        sup0 = max(le0_term(n, h, z, w, np.asarray(p)) for p in pts)
        a = 2.0 * np.pi * w.support_radius / h
        tail = 1.0 / min(
            abs(complex(a) - z) if z.real < a else abs(z.imag),
            abs(complex(a) + z) if (-z).real < a else abs(z.imag),
        )
        got0 = le0_bound(n, h, z, w, grid)
        assert got0 == pytest.approx(max(sup0, tail), rel=1e-12)
        sup1 = 0.0
        for p in itertools.product(axis, repeat=n):
            for mu in itertools.product((-1, 0, 1), repeat=n):
                sup1 = max(sup1, le1_term(n, h, z, w, np.asarray(p), mu))
        got1 = le1_bound(n, h, z, w, grid)
        assert got1 == pytest.approx(sup1, rel=1e-10)


def test_bounds_shrink_linearly():
    w = build_window()
    z = 1j
    le0_a = le0_bound(1, 2.0**-4, z, w, 256)
    le0_b = le0_bound(1, 2.0**-5, z, w, 256)
    assert 1.5 <= le0_a / le0_b <= 2.7
    le1_a = le1_bound(1, 2.0**-4, z, w, 256)
    le1_b = le1_bound(1, 2.0**-5, z, w, 256)
    assert 1.5 <= le1_a / le1_b <= 2.7


def test_rejects_real_spectral_point():
    w = build_window()
    with pytest.raises(ValueError):
        le0_bound(1, 0.5, 2.0, w, 64)
    with pytest.raises(ValueError):
        theorem_rate(1, 0.0 + 0j, [0.5, 0.25])


def test_theorem_rate_one_dimension():
    report = theorem_rate(1, 1j, [2.0**-k for k in range(3, 9)], grid=512)
    assert isinstance(report, ConvergenceReport)
    assert len(report.rows) == 6
    totals = [row[3] for row in report.rows]
    assert all(t > 0 for t in totals)
    assert all(a > b for a, b in zip(totals, totals[1:]))
    assert 0.9 <= report.slope <= 1.1
    for h, a, b, total in report.rows:
        assert total == pytest.approx(a + b, rel=1e-12)


def test_report_serialization_roundtrip():
    report = theorem_rate(1, 1j, [0.125, 0.0625, 0.03125], grid=64)
    csv_buf = io.StringIO()
    write_report_csv(report, csv_buf)
    lines = csv_buf.getvalue().strip().splitlines()
    assert lines[0].startswith("h,")
    assert len(lines) == 1 + len(report.rows)
    first = lines[1].split(",")
    assert float(first[0]) == report.rows[0][0]

    json_buf = io.StringIO()
    write_report_json(report, json_buf, seed=7)
    payload = json.loads(json_buf.getvalue())
    assert payload["seed"] == 7
    assert payload["n"] == 1
    json_buf.seek(0)
    loaded = read_report_json(json_buf)
    # seventeen digit floats survive the trip bit for bit
    assert loaded["slope"] == report.slope
    for row, back in zip(report.rows, loaded["rows"]):
        assert list(row) == [back[k] for k in ("h", "bound_le0", "bound_le1", "total")]
