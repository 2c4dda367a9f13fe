"""Pure-numpy kernels for the pairwise vortex interactions.

These are the fallback implementations of the hot inner loops; a compiled
twin lives in ``_speedups``. Both operate on raw float64 arrays: ``gam`` of
shape (N,) and ``z`` of shape (2N,) in interleaved (x1, y1, ..., xN, yN)
layout, and perform no collision checking of their own.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def min_pair_distance(z: np.ndarray) -> float:
    pts = z.reshape(-1, 2)
    n = pts.shape[0]
    d = pts[:, None, :] - pts[None, :, :]
    r2 = np.einsum("ijk,ijk->ij", d, d)
    iu = np.triu_indices(n, k=1)
    return float(np.sqrt(r2[iu].min()))


def hamiltonian(gam: np.ndarray, z: np.ndarray) -> float:
    pts = z.reshape(-1, 2)
    n = pts.shape[0]
    d = pts[:, None, :] - pts[None, :, :]
    r2 = np.einsum("ijk,ijk->ij", d, d)
    gg = np.outer(gam, gam)
    iu = np.triu_indices(n, k=1)
    # log r = 0.5 log r^2 avoids the square root
    return float(-0.5 * np.sum(gg[iu] * np.log(r2[iu])))


def gradient(gam: np.ndarray, z: np.ndarray) -> np.ndarray:
    pts = z.reshape(-1, 2)
    n = pts.shape[0]
    d = pts[:, None, :] - pts[None, :, :]
    r2 = np.einsum("ijk,ijk->ij", d, d)
    np.fill_diagonal(r2, 1.0)
    w = np.outer(gam, gam) / r2
    np.fill_diagonal(w, 0.0)
    g = -np.einsum("ij,ijk->ik", w, d)
    return g.reshape(2 * n)


def hessian(gam: np.ndarray, z: np.ndarray) -> np.ndarray:
    pts = z.reshape(-1, 2)
    n = pts.shape[0]
    out = np.zeros((2 * n, 2 * n))
    eye2 = np.eye(2)
    for i in range(n):
        for j in range(i + 1, n):
            dij = pts[i] - pts[j]
            r2 = float(dij @ dij)
            u = dij / np.sqrt(r2)
            blk = (gam[i] * gam[j] / r2) * (eye2 - 2.0 * np.outer(u, u))
            out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = blk
            out[2 * j : 2 * j + 2, 2 * i : 2 * i + 2] = blk
            out[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] -= blk
            out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] -= blk
    return out
