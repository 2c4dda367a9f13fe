"""Central configurations: closed-form families, Newton solver, validation.

A central configuration is a collision-free arrangement xi with vanishing
center of vorticity satisfying grad H(xi) + omega * M xi = 0, where M is the
circulation mass matrix and omega = L / (2 I(xi)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import model
from .errors import (
    CollisionError,
    NegativeDiscriminant,
    NoConvergence,
    ParameterOutOfRange,
    SingularJacobian,
    ZeroAngularImpulse,
)
from .model import VortexSystem


class RhombusBranch(enum.Enum):
    """Sign choice in the rhombus shape equation y^2 = (b +- sqrt(b^2+4m))/2."""

    A = "A"
    B = "B"


@dataclass(frozen=True)
class CentralConfiguration:
    system: VortexSystem
    xi: np.ndarray
    omega: float
    residual_norm: float

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=float)
        xi.setflags(write=False)
        object.__setattr__(self, "xi", xi)


def cc_residual(sys: VortexSystem, z, omega: float) -> np.ndarray:
    """grad H(z) + omega * M z; zero exactly at a central configuration."""
    z = model.as_configuration(z, sys.n)
    return model.grad_hamiltonian(sys, z) + omega * np.repeat(sys.circulations, 2) * z


def omega_for(sys: VortexSystem, z) -> float:
    """Angular velocity L / (2 I(z)) forced by the circulations and scale."""
    z = model.as_configuration(z, sys.n)
    imp = model.angular_impulse(sys, z)
    scale = float(z @ z) * float(np.max(np.abs(sys.circulations)))
    if abs(imp) < 1e-14 * max(scale, 1e-300):
        raise ZeroAngularImpulse("angular impulse vanishes; omega undefined")
    return sys.angular_momentum / (2.0 * imp)


def validate_cc(sys: VortexSystem, z, tol: float = 1e-8):
    """Check the central-configuration equation at the forced omega.

    Returns (is_cc, omega, residual) where residual is relative to the
    gradient magnitude.
    """
    z = model.as_configuration(z, sys.n)
    omega = omega_for(sys, z)
    grad = model.grad_hamiltonian(sys, z)
    res = np.linalg.norm(cc_residual(sys, z, omega))
    res /= max(1.0, np.linalg.norm(grad))
    cov = np.linalg.norm(model.center_of_vorticity(sys, z))
    return (res <= tol and cov <= tol), omega, res


def _finish(sys: VortexSystem, xi: np.ndarray, omega: float) -> CentralConfiguration:
    res = float(np.linalg.norm(cc_residual(sys, xi, omega)))
    return CentralConfiguration(sys, xi, float(omega), res)


def make_equilateral_triangle(g1: float, g2: float, g3: float) -> CentralConfiguration:
    """Equilateral-triangle configuration for arbitrary nonzero strengths.

    Unit-circumradius vertices are shifted so the center of vorticity sits
    at the origin; the angular velocity is total/3 for this scale.
    """
    sys = VortexSystem([g1, g2, g3])
    root3 = np.sqrt(3.0)
    verts = np.array([1.0, 0.0, -0.5, root3 / 2.0, -0.5, -root3 / 2.0])
    c = model.center_of_vorticity(sys, verts)
    xi = (verts.reshape(3, 2) - c).reshape(-1)
    return _finish(sys, xi, sys.total / 3.0)


def rhombus_shape(m: float, branch: RhombusBranch) -> float:
    """Solve the rhombus shape equation for y > 0."""
    if branch is RhombusBranch.A:
        if not (-1.0 < m <= 1.0):
            raise ParameterOutOfRange(f"branch A needs m in (-1, 1], got {m}")
    else:
        if not (-1.0 < m < 0.0):
            raise ParameterOutOfRange(f"branch B needs m in (-1, 0), got {m}")
    beta = 3.0 * (1.0 - m)
    disc = beta * beta + 4.0 * m
    if disc < 0.0:
        raise NegativeDiscriminant(f"no real rhombus shape at m = {m}")
    sign = 1.0 if branch is RhombusBranch.A else -1.0
    y2 = 0.5 * (beta + sign * np.sqrt(disc))
    if y2 <= 0.0:
        raise ParameterOutOfRange(f"shape equation gives y^2 = {y2} at m = {m}")
    return float(np.sqrt(y2))


def make_rhombus(m: float, branch: RhombusBranch) -> CentralConfiguration:
    """Rhombus configuration with strengths (1, 1, m, m) on the axes.

    Vortices sit at (+-1, 0) and (0, +-y) with y from the shape equation;
    consistency of the inverse relation m(y) is asserted to 1e-10.
    """
    y = rhombus_shape(m, branch)
    y2 = y * y
    m_back = (3.0 * y2 - y2 * y2) / (3.0 * y2 - 1.0)
    if abs(m_back - m) > 1e-10 * max(1.0, abs(m)):
        raise ParameterOutOfRange(
            f"shape equation inconsistent: m = {m}, recovered {m_back}"
        )
    sys = VortexSystem([1.0, 1.0, m, m])
    xi = np.array([1.0, 0.0, -1.0, 0.0, 0.0, y, 0.0, -y])
    omega = 0.5 + 2.0 * m / (y2 + 1.0)
    return _finish(sys, xi, omega)


def rhombus_nontrivial_mus(m: float, branch: RhombusBranch) -> tuple[float, float]:
    """Closed forms for the two nontrivial reduced-Hessian eigenvalues."""
    y = rhombus_shape(m, branch)
    y2 = y * y
    if abs(3.0 * y2 - 1.0) < 1e-12:
        raise ParameterOutOfRange("shape degenerate: 3 y^2 = 1")
    mu1 = (7.0 * y2 * y2 - 18.0 * y2 + 7.0) / (2.0 * (y2 + 1.0) * (3.0 * y2 - 1.0))
    mu2 = 2.0 * (m + 1.0) * (1.0 - y2) / (1.0 + y2) ** 2
    alt = (
        2.0
        * (y2 - 1.0)
        * (y2 + 2.0 * y - 1.0)
        * (y2 - 2.0 * y - 1.0)
        / ((y2 + 1.0) ** 2 * (3.0 * y2 - 1.0))
    )
    if abs(alt - mu2) > 1e-10 * max(1.0, abs(mu2)):
        raise ParameterOutOfRange(
            f"factorized forms disagree at m = {m}: {mu2} vs {alt}"
        )
    return float(mu1), float(mu2)


def find_cc(
    sys: VortexSystem,
    guess,
    max_iter: int = 50,
    tol: float = 1e-12,
    max_halvings: int = 30,
) -> CentralConfiguration:
    """Newton solver for the central-configuration equation.

    Solves the augmented system in (z, omega): the configuration equation,
    conservation of the initial angular impulse, orthogonality to the
    rotation direction at the guess (fixes the phase) and a pinned center
    of vorticity. The rectangular system is solved by least squares; it is
    consistent at solutions.
    """
    z = model.as_configuration(guess, sys.n)
    model.check_collisions(z)
    n2 = 2 * sys.n
    gam2 = np.repeat(sys.circulations, 2)
    i0 = model.angular_impulse(sys, z)
    if abs(i0) < 1e-12 * max(1.0, float(z @ z)):
        raise ZeroAngularImpulse("guess has (near) zero angular impulse")
    phase_row = gam2 * model.apply_poisson(z)  # M K guess
    cov_rows = np.zeros((2, n2))
    cov_rows[0, 0::2] = sys.circulations
    cov_rows[1, 1::2] = sys.circulations
    omega = omega_for(sys, z)

    def residual(z, omega):
        return np.concatenate(
            [
                cc_residual(sys, z, omega),
                [model.angular_impulse(sys, z) - i0],
                [phase_row @ z],
                cov_rows @ z,
            ]
        )

    f = residual(z, omega)
    best = (z.copy(), omega, np.linalg.norm(f))
    for _ in range(max_iter):
        if np.linalg.norm(f) <= tol:
            return _finish(sys, z, omega)
        jac = np.zeros((n2 + 4, n2 + 1))
        jac[:n2, :n2] = model.hessian(sys, z) + omega * np.diag(gam2)
        jac[:n2, n2] = gam2 * z
        jac[n2, :n2] = gam2 * z
        jac[n2 + 1, :n2] = phase_row
        jac[n2 + 2 :, :n2] = cov_rows
        step, _, rank, _ = np.linalg.lstsq(jac, -f, rcond=None)
        if rank < n2 + 1:
            raise SingularJacobian("augmented Jacobian is rank deficient")
        scale = 1.0
        for _ in range(max_halvings):
            z_new = z + scale * step[:n2]
            try:
                model.check_collisions(z_new)
                f_new = residual(z_new, omega + scale * step[n2])
            except CollisionError:
                scale *= 0.5
                continue
            break
        else:
            raise NoConvergence(
                "step damping exhausted near collision", best[0], best[2]
            )
        z, omega, f = z_new, omega + scale * step[n2], f_new
        if np.linalg.norm(f) < best[2]:
            best = (z.copy(), omega, np.linalg.norm(f))
    if np.linalg.norm(f) <= tol:
        return _finish(sys, z, omega)
    raise NoConvergence(
        f"no convergence after {max_iter} iterations "
        f"(best residual {best[2]:.3e})",
        best[0],
        best[2],
    )
