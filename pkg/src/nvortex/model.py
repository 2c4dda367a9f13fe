"""Planar N-vortex Hamiltonian calculus.

Positions use the interleaved layout (x1, y1, ..., xN, yN) so that the
blockwise rotation generator K = diag(J, ..., J) with J = [[0, 1], [-1, 0]]
acts on contiguous 2-blocks. All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CollisionError, ZeroTotalCirculation

COLLISION_EPS = 1e-12

FloatArray = np.ndarray


@dataclass(frozen=True)
class VortexSystem:
    """Circulation strengths of N point vortices.

    Each strength must be nonzero and the total must not vanish; both
    conditions are required for the center of vorticity and the rigidly
    rotating solutions to make sense.
    """

    circulations: FloatArray

    def __init__(self, circulations) -> None:
        gam = np.asarray(circulations, dtype=float)
        if gam.ndim != 1 or gam.size < 2:
            raise ValueError("need at least two circulations")
        if np.any(gam == 0.0):
            raise ValueError("every circulation must be nonzero")
        if abs(gam.sum()) == 0.0:
            raise ZeroTotalCirculation("total circulation vanishes")
        gam.setflags(write=False)
        object.__setattr__(self, "circulations", gam)

    @property
    def n(self) -> int:
        return self.circulations.size

    @property
    def total(self) -> float:
        """Total circulation (sum of all strengths)."""
        return float(self.circulations.sum())

    @property
    def angular_momentum(self) -> float:
        """Total vortex angular momentum: sum of pairwise products."""
        gam = self.circulations
        return float((gam.sum() ** 2 - (gam**2).sum()) / 2.0)


def as_configuration(z, n: int | None = None) -> FloatArray:
    """Validate and return a flat (2N,) position vector."""
    arr = np.asarray(z, dtype=float).reshape(-1)
    if arr.size % 2 != 0 or arr.size < 4:
        raise ValueError("configuration must have even length >= 4")
    if n is not None and arr.size != 2 * n:
        raise ValueError(f"expected {2 * n} coordinates, got {arr.size}")
    return arr


def check_collisions(z: FloatArray, eps: float = COLLISION_EPS) -> None:
    pts = z.reshape(-1, 2)
    n = pts.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            r = float(np.hypot(*(pts[i] - pts[j])))
            if r <= eps:
                raise CollisionError(i, j, r)


def hamiltonian(sys: VortexSystem, z) -> float:
    """Interaction energy -sum_{i<j} G_i G_j log r_ij."""
    z = as_configuration(z, sys.n)
    check_collisions(z)
    return kernels.hamiltonian(sys.circulations, z)


def grad_hamiltonian(sys: VortexSystem, z) -> FloatArray:
    """Euclidean gradient of :func:`hamiltonian`."""
    z = as_configuration(z, sys.n)
    check_collisions(z)
    return kernels.gradient(sys.circulations, z)


def hessian(sys: VortexSystem, z) -> FloatArray:
    """Hessian of :func:`hamiltonian`, assembled from closed-form 2x2 blocks.

    The result is symmetric, anticommutes with K and annihilates the
    uniform-translation vectors s and Ks.
    """
    z = as_configuration(z, sys.n)
    check_collisions(z)
    return kernels.hessian(sys.circulations, z)


def angular_impulse(sys: VortexSystem, z) -> float:
    """Circulation-weighted second moment: 0.5 * sum G_i |z_i|^2."""
    z = as_configuration(z, sys.n)
    pts = z.reshape(-1, 2)
    return float(0.5 * np.sum(sys.circulations * np.einsum("ij,ij->i", pts, pts)))


def center_of_vorticity(sys: VortexSystem, z) -> FloatArray:
    z = as_configuration(z, sys.n)
    pts = z.reshape(-1, 2)
    total = sys.total
    if total == 0.0:
        raise ZeroTotalCirculation("total circulation vanishes")
    return sys.circulations @ pts / total


def circulation_inner(sys: VortexSystem, v, w) -> float:
    """Possibly indefinite scalar product sum G_i (v_i . w_i)."""
    v = as_configuration(v, sys.n).reshape(-1, 2)
    w = as_configuration(w, sys.n).reshape(-1, 2)
    return float(np.sum(sys.circulations * np.einsum("ij,ij->i", v, w)))


def mass_matrix(sys: VortexSystem) -> FloatArray:
    """Diagonal matrix with each circulation duplicated per coordinate."""
    return np.diag(np.repeat(sys.circulations, 2))


def poisson_matrix(n: int) -> FloatArray:
    """Blockwise rotation generator K = diag(J, ..., J)."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n), j)


def apply_poisson(v: FloatArray) -> FloatArray:
    """Apply K without forming the matrix: (x, y) -> (y, -x) per block."""
    v = np.asarray(v, dtype=float)
    out = np.empty_like(v)
    out[0::2] = v[1::2]
    out[1::2] = -v[0::2]
    return out


def translation_vector(n: int) -> FloatArray:
    """The vector s = (1, 0, 1, 0, ..., 1, 0) of uniform x-translation."""
    s = np.zeros(2 * n)
    s[0::2] = 1.0
    return s


def rotate(z: FloatArray, theta: float) -> FloatArray:
    """Apply the blockwise rotation exp(theta * K)."""
    # exp(theta J) = [[cos, sin], [-sin, cos]]
    c, s = np.cos(theta), np.sin(theta)
    pts = np.asarray(z, dtype=float).reshape(-1, 2)
    rot = np.array([[c, s], [-s, c]])
    return (pts @ rot.T).reshape(-1)
