"""Closed-form families and the Newton solver."""

import numpy as np
import pytest

from helpers import random_circulations
from nvortex import (
    RhombusBranch,
    VortexSystem,
    cc_residual,
    find_cc,
    make_equilateral_triangle,
    make_rhombus,
    omega_for,
    rhombus_nontrivial_mus,
    validate_cc,
)
from nvortex import central, model
from nvortex.errors import (
    NoConvergence,
    ParameterOutOfRange,
    ZeroAngularImpulse,
)


def test_triangle_is_central_configuration():
    rng = np.random.default_rng(21)
    for _ in range(10):
        g = random_circulations(rng, 3)
        cc = make_equilateral_triangle(*g)
        assert cc.residual_norm <= 1e-12
        ok, omega, res = validate_cc(cc.system, cc.xi)
        assert ok and res <= 1e-12
        assert omega == pytest.approx(cc.omega, rel=1e-12)


def test_triangle_omega_and_geometry():
    cc = make_equilateral_triangle(1.0, 2.0, -0.5)
    assert cc.omega == pytest.approx(cc.system.total / 3.0, rel=1e-14)
    pts = cc.xi.reshape(3, 2)
    for i in range(3):
        d = np.linalg.norm(pts[i] - pts[(i + 1) % 3])
        assert d == pytest.approx(np.sqrt(3.0), rel=1e-12)
    np.testing.assert_allclose(
        model.center_of_vorticity(cc.system, cc.xi), 0.0, atol=1e-14
    )


def test_omega_scales_inverse_square():
    cc = make_equilateral_triangle(1.0, 1.5, 0.7)
    for lam in (0.5, 2.0, 3.7):
        omega = omega_for(cc.system, lam * cc.xi)
        assert omega == pytest.approx(cc.omega / lam**2, rel=1e-12)
        assert np.linalg.norm(cc_residual(cc.system, lam * cc.xi, omega)) <= 1e-12


def test_rhombus_unit_shape():
    cc = make_rhombus(1.0, RhombusBranch.A)
    # equal strengths put all four vortices on the unit circle
    np.testing.assert_allclose(
        cc.xi, [1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0], atol=1e-14
    )
    assert cc.omega == pytest.approx(1.5, rel=1e-14)
    assert cc.residual_norm <= 1e-12
    mu1, mu2 = rhombus_nontrivial_mus(1.0, RhombusBranch.A)
    assert mu1 == pytest.approx(-0.5, abs=1e-12)
    assert mu2 == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("branch,lo,hi", [(RhombusBranch.A, -0.95, 1.0), (RhombusBranch.B, -0.95, -0.05)])
def test_rhombus_family_residuals(branch, lo, hi):
    for m in np.linspace(lo, hi, 17):
        m = float(m)
        if abs(m) < 1e-9:
            continue
        cc = make_rhombus(m, branch)
        assert cc.residual_norm <= 1e-10
        ok, omega, _ = validate_cc(cc.system, cc.xi)
        assert ok
        assert omega == pytest.approx(cc.omega, rel=1e-10, abs=1e-12)


def test_rhombus_closed_form_mus_match_spectrum():
    from nvortex import spectral

    for m, branch in [(0.5, RhombusBranch.A), (-0.2, RhombusBranch.A), (-0.5, RhombusBranch.B)]:
        cc = make_rhombus(m, branch)
        mu1, mu2 = rhombus_nontrivial_mus(m, branch)
        report = spectral.nontrivial_spectrum(cc.system, cc)
        # the nontrivial reduced-Hessian spectrum is the +- pairs of mu1, mu2
        got = sorted(np.abs(report.nontrivial_mus.real))
        expect = sorted([abs(mu1), abs(mu1), abs(mu2), abs(mu2)])
        np.testing.assert_allclose(got, expect, atol=1e-10)
        assert np.max(np.abs(report.nontrivial_mus.imag)) <= 1e-10


def test_rhombus_branch_domains():
    with pytest.raises(ParameterOutOfRange):
        make_rhombus(1.2, RhombusBranch.A)
    with pytest.raises(ParameterOutOfRange):
        make_rhombus(-1.0, RhombusBranch.A)
    with pytest.raises(ParameterOutOfRange):
        make_rhombus(0.3, RhombusBranch.B)
    with pytest.raises(ParameterOutOfRange):
        make_rhombus(-1.0, RhombusBranch.B)


def test_omega_for_zero_impulse():
    sys = VortexSystem([1.0, -0.5])
    # strengths and radii tuned so sum G_i |z_i|^2 = 0
    z = np.array([1.0, 0.0, 0.0, np.sqrt(2.0)])
    with pytest.raises(ZeroAngularImpulse):
        omega_for(sys, z)


def test_find_cc_recovers_triangle():
    rng = np.random.default_rng(22)
    cc = make_equilateral_triangle(1.0, 1.0, 1.0)
    for _ in range(5):
        guess = cc.xi + 1e-3 * rng.standard_normal(6)
        sol = find_cc(cc.system, guess, max_iter=10)
        assert sol.residual_norm <= 1e-12
        pts = sol.xi.reshape(3, 2)
        sides = [np.linalg.norm(pts[i] - pts[(i + 1) % 3]) for i in range(3)]
        assert np.ptp(sides) <= 1e-8


def test_find_cc_preserves_impulse_and_center():
    cc = make_equilateral_triangle(1.3, 0.9, 1.1)
    rng = np.random.default_rng(23)
    guess = cc.xi + 1e-3 * rng.standard_normal(6)
    i0 = model.angular_impulse(cc.system, guess)
    sol = find_cc(cc.system, guess)
    assert model.angular_impulse(cc.system, sol.xi) == pytest.approx(i0, rel=1e-10)
    np.testing.assert_allclose(
        model.center_of_vorticity(cc.system, sol.xi), 0.0, atol=1e-10
    )


def test_find_cc_no_convergence_reports_best():
    sys = VortexSystem([1.0, 1.0, 1.0])
    rng = np.random.default_rng(24)
    guess = central.make_equilateral_triangle(1, 1, 1).xi + 0.3 * rng.standard_normal(6)
    with pytest.raises(NoConvergence) as exc:
        find_cc(sys, guess, max_iter=1)
    assert np.isfinite(exc.value.residual)
    assert exc.value.best is not None
