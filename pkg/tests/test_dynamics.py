"""Flow integration, exact rigid rotations, monodromy cross-checks."""

import numpy as np
import pytest

from nvortex import RhombusBranch, VortexSystem, make_equilateral_triangle, make_rhombus
from nvortex import dynamics, model
from nvortex.errors import CollisionApproach


def test_vector_field_is_rigid_rotation_at_cc():
    cc = make_equilateral_triangle(1.0, 2.0, 0.7)
    v = dynamics.vector_field(cc.system, cc.xi)
    np.testing.assert_allclose(
        v, -cc.omega * model.apply_poisson(cc.xi), atol=1e-12
    )


def test_exact_orbit_and_period():
    cc = make_rhombus(0.6, RhombusBranch.A)
    t = dynamics.period_of(cc)
    assert t == pytest.approx(2 * np.pi / abs(cc.omega))
    np.testing.assert_allclose(dynamics.exact_re_orbit(cc, t), cc.xi, atol=1e-12)
    half = dynamics.exact_re_orbit(cc, t / 2)
    np.testing.assert_allclose(half, model.rotate(cc.xi, -np.pi * np.sign(cc.omega)), atol=1e-12)


def test_one_period_return_and_drifts():
    cc = make_equilateral_triangle(1.0, 1.0, 1.0)
    t = dynamics.period_of(cc)
    traj = dynamics.integrate(cc.system, cc.xi, t)
    assert np.linalg.norm(traj.states[-1] - cc.xi) <= 1e-7
    assert traj.energy_drift <= 1e-8
    assert traj.impulse_drift <= 1e-8
    assert traj.center_drift <= 1e-10


def test_trajectory_follows_exact_orbit():
    cc = make_rhombus(-0.4, RhombusBranch.B)
    t = dynamics.period_of(cc)
    traj = dynamics.integrate(cc.system, cc.xi, 0.25 * t, n_samples=50)
    # the orbit is unstable, so roundoff grows exponentially along it;
    # a quarter period keeps the amplification factor modest
    for tk, zk in zip(traj.times, traj.states):
        np.testing.assert_allclose(zk, dynamics.exact_re_orbit(cc, tk), atol=1e-4)


def test_collision_approach_raises_with_partial_trajectory():
    # two colliding-course dipoles with a far spectator balancing the total
    sys = VortexSystem([1.0, -1.0, -1.0, 1.0, 0.01])
    z0 = np.array([-2.0, 0.5, -2.0, -0.5, 2.0, 0.5, 2.0, -0.5, 0.0, 30.0])
    with pytest.raises(CollisionApproach) as exc:
        dynamics.integrate(sys, z0, 8.0, min_distance=0.98)
    traj = exc.value.trajectory
    assert traj is not None
    assert traj.times[-1] < 8.0


def test_monodromy_triangle():
    cc = make_equilateral_triangle(1.0, 1.0, 1.0)
    mono = dynamics.monodromy(cc.system, cc)
    assert abs(mono.determinant - 1.0) <= 1e-6
    assert dynamics.floquet_vs_spectrum(cc.system, cc, mono) <= 1e-6
    # symmetry forces at least a double multiplier at 1
    close_to_one = np.sum(np.abs(mono.multipliers - 1.0) < 1e-4)
    assert close_to_one >= 2


def test_monodromy_stable_rhombus_on_unit_circle():
    cc = make_rhombus(1.0, RhombusBranch.A)
    mono = dynamics.monodromy(cc.system, cc)
    assert np.max(np.abs(np.abs(mono.multipliers) - 1.0)) <= 1e-6
    assert dynamics.floquet_vs_spectrum(cc.system, cc, mono) <= 1e-6


def test_monodromy_unstable_rhombus_grows():
    cc = make_rhombus(-0.5, RhombusBranch.B)
    mono = dynamics.monodromy(cc.system, cc)
    assert np.max(np.abs(mono.multipliers)) > 1.0 + 1e-4
