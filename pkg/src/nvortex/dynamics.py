"""Time integration of the vortex equations and Floquet cross-checks.

The flow provides an oracle independent of the linear-algebra modules:
generated configurations must trace out exact rigid rotations, and the
monodromy multipliers of the linearized flow must match exp(lambda T)
for the eigenvalues of the stability matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import kernels, model, spectral
from .central import CentralConfiguration
from .errors import CollisionApproach, StepFailure
from .model import VortexSystem


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (n_samples, 2N)
    energy: np.ndarray
    impulse: np.ndarray
    center: np.ndarray  # shape (n_samples, 2)

    @property
    def energy_drift(self) -> float:
        ref = max(1.0, abs(self.energy[0]))
        return float(np.max(np.abs(self.energy - self.energy[0])) / ref)

    @property
    def impulse_drift(self) -> float:
        ref = max(1.0, abs(self.impulse[0]))
        return float(np.max(np.abs(self.impulse - self.impulse[0])) / ref)

    @property
    def center_drift(self) -> float:
        return float(np.max(np.linalg.norm(self.center - self.center[0], axis=1)))


@dataclass(frozen=True)
class MonodromyResult:
    period: float
    matrix: np.ndarray
    multipliers: np.ndarray

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.matrix))


def vector_field(sys: VortexSystem, z) -> np.ndarray:
    """Right-hand side of the equations of motion: M^-1 K grad H."""
    g = model.grad_hamiltonian(sys, z)
    return model.apply_poisson(g) / np.repeat(sys.circulations, 2)


def integrate(
    sys: VortexSystem,
    z0,
    t_end: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    min_distance: float = 1e-6,
    n_samples: int = 200,
) -> Trajectory:
    """Adaptive high-order integration with invariant monitoring.

    Uses an embedded 8th-order pair; energy, angular impulse and center of
    vorticity are recorded at the samples, not enforced. Raises
    CollisionApproach (with the partial trajectory attached) when any
    pairwise distance falls below ``min_distance``.
    """
    z0 = model.as_configuration(z0, sys.n)
    model.check_collisions(z0)

    def rhs(t, y):
        return vector_field(sys, y)

    def approach(t, y):
        return kernels.min_pair_distance(y) - min_distance

    approach.terminal = True
    approach.direction = -1
    sol = solve_ivp(
        rhs,
        (0.0, t_end),
        z0,
        method="DOP853",
        rtol=rtol,
        atol=atol,
        t_eval=np.linspace(0.0, t_end, n_samples),
        events=approach,
        dense_output=False,
    )
    if sol.status == -1:
        raise StepFailure(sol.message)
    states = sol.y.T
    traj = Trajectory(
        times=sol.t,
        states=states,
        energy=np.array([model.hamiltonian(sys, s) for s in states]),
        impulse=np.array([model.angular_impulse(sys, s) for s in states]),
        center=np.array([model.center_of_vorticity(sys, s) for s in states]),
    )
    if sol.status == 1:
        raise CollisionApproach(
            f"pairwise distance fell below {min_distance:g}", traj
        )
    return traj


def exact_re_orbit(cc: CentralConfiguration, t: float) -> np.ndarray:
    """Closed-form rigid rotation exp(-omega K t) applied to the configuration."""
    return model.rotate(cc.xi, -cc.omega * t)


def period_of(cc: CentralConfiguration) -> float:
    return 2.0 * np.pi / abs(cc.omega)


def monodromy(
    sys: VortexSystem,
    cc: CentralConfiguration,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> MonodromyResult:
    """Fundamental solution of the variational equation over one period.

    The coefficient matrix is evaluated along the exact rigid-rotation
    orbit, which decouples monodromy error from trajectory error. Over a
    full period the frame rotation is the identity, so the multipliers
    equal exp(lambda T) for the stability-matrix eigenvalues.
    """
    n2 = 2 * sys.n
    inv = 1.0 / np.repeat(sys.circulations, 2)
    period = period_of(cc)

    def rhs(t, y):
        h = model.hessian(sys, exact_re_orbit(cc, t))
        phi = y.reshape(n2, n2)
        return (model.apply_poisson(h @ phi) * inv[:, None]).reshape(-1)

    sol = solve_ivp(
        rhs,
        (0.0, period),
        np.eye(n2).reshape(-1),
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise StepFailure(sol.message)
    mat = sol.y[:, -1].reshape(n2, n2)
    return MonodromyResult(period, mat, np.linalg.eigvals(mat))


def floquet_vs_spectrum(
    sys: VortexSystem, cc: CentralConfiguration, result: MonodromyResult | None = None
) -> float:
    """Max distance after greedy matching of multipliers to exp(lambda T).

    Repeated predicted multipliers are compared as clusters: individual
    eigenvalues of a matrix with a nontrivial Jordan block (here the
    symmetry-forced double multiplier 1) move like the square root of the
    perturbation, but the cluster mean moves linearly, so the mean is the
    quantity that reflects integration error.
    """
    if result is None:
        result = monodromy(sys, cc)
    lam = np.linalg.eigvals(spectral.stability_matrix(sys, cc))
    predicted = np.exp(lam * result.period)
    scale = max(1.0, float(np.max(np.abs(predicted))))
    clusters: list[list[complex]] = []
    for p in predicted:
        for grp in clusters:
            if abs(p - np.mean(grp)) <= 1e-5 * scale:
                grp.append(p)
                break
        else:
            clusters.append([p])
    remaining = list(result.multipliers)
    worst = 0.0
    for grp in clusters:
        center = complex(np.mean(grp))
        matched = []
        for _ in grp:
            dists = [abs(center - q) for q in remaining]
            k = int(np.argmin(dists))
            matched.append(remaining.pop(k))
        worst = max(worst, abs(np.mean(matched) - center))
    return float(worst)
