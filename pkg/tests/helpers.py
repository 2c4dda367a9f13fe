"""Shared oracles for the test suite: finite differences and random data."""

from __future__ import annotations

import numpy as np

from nvortex import VortexSystem


def fd_gradient(f, z: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of a scalar function."""
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    for k in range(z.size):
        zp, zm = z.copy(), z.copy()
        zp[k] += h
        zm[k] -= h
        out[k] = (f(zp) - f(zm)) / (2.0 * h)
    return out


def fd_jacobian(g, z: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of a vector function."""
    z = np.asarray(z, dtype=float)
    cols = []
    for k in range(z.size):
        zp, zm = z.copy(), z.copy()
        zp[k] += h
        zm[k] -= h
        cols.append((g(zp) - g(zm)) / (2.0 * h))
    return np.column_stack(cols)


def random_circulations(rng: np.random.Generator, n: int) -> np.ndarray:
    """Mixed-sign strengths bounded away from zero with nonzero total."""
    while True:
        gam = rng.uniform(0.2, 2.0, n) * rng.choice([-1.0, 1.0], n)
        if abs(gam.sum()) > 0.1:
            return gam


def random_configuration(rng: np.random.Generator, n: int) -> np.ndarray:
    """Positions in a box with pairwise separation at least 0.3."""
    while True:
        pts = rng.uniform(-2.0, 2.0, (n, 2))
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        if np.min(d[np.triu_indices(n, 1)]) > 0.3:
            return pts.reshape(-1)


def random_system_and_configuration(rng: np.random.Generator, n: int):
    return VortexSystem(random_circulations(rng, n)), random_configuration(rng, n)
