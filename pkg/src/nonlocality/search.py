"""Deterministic one- and two-dimensional maximizers (grid + golden-section refinement)."""

import numpy as np

INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo, hi, tol=1e-10, max_iter=200):
    """Maximize a unimodal ``f`` on ``[lo, hi]``. Returns ``(x, f(x))``."""
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def grid_then_golden_max(f, lo, hi, n_grid=10_000, tol=1e-10):
    """Global maximum of a scalar function on an interval.

    A uniform grid picks the best cell, golden-section polishes inside the
    two neighbouring cells. Endpoints are compared explicitly so boundary
    maxima are not lost.
    """
    xs = np.linspace(lo, hi, n_grid + 1)
    vals = np.array([f(x) for x in xs])
    k = int(np.argmax(vals))
    a, b = xs[max(k - 1, 0)], xs[min(k + 1, n_grid)]
    x, fx = golden_section_max(f, a, b, tol=tol)
    if vals[k] > fx:
        return float(xs[k]), float(vals[k])
    return float(x), float(fx)


def spherical_to_cartesian(polar, azimuth):
    return np.array([
        np.sin(polar) * np.cos(azimuth),
        np.sin(polar) * np.sin(azimuth),
        np.cos(polar),
    ])


def bloch_sphere_max(f, n_polar=100, n_azimuth=100, tol=1e-8, max_rounds=60):
    """Maximize ``f(r)`` over unit vectors ``r``.

    A ``n_polar x n_azimuth`` grid seeds coordinate-wise golden-section
    refinement in (polar, azimuth) with a window that halves each round.

    Returns
    -------
    (r, value)
    """
    polars = np.linspace(0.0, np.pi, n_polar)
    azimuths = np.linspace(0.0, 2.0 * np.pi, n_azimuth, endpoint=False)
    best = (-np.inf, 0.0, 0.0)
    for t in polars:
        for p in azimuths:
            v = f(spherical_to_cartesian(t, p))
            if v > best[0]:
                best = (v, t, p)
    _, t, p = best
    h_t, h_p = polars[1] - polars[0], azimuths[1] - azimuths[0]
    for _ in range(max_rounds):
        t, _ = golden_section_max(lambda u: f(spherical_to_cartesian(u, p)), t - h_t, t + h_t, tol=tol)
        p, _ = golden_section_max(lambda u: f(spherical_to_cartesian(t, u)), p - h_p, p + h_p, tol=tol)
        h_t, h_p = 0.5 * h_t, 0.5 * h_p
        if max(h_t, h_p) < tol:
            break
    r = spherical_to_cartesian(t, p)
    return r, float(f(r))
