"""Acceptance gate: ten criteria, one printed pass/fail line each.

Every expected number here is produced by an independent oracle (finite
differences, dense eigendecomposition, time integration) or is a closed
form re-derived in the library and cross-checked against those oracles.
"""

import numpy as np
import pytest

from helpers import fd_jacobian, random_circulations, random_system_and_configuration
from nvortex import (
    RhombusBranch,
    StabilityClass,
    TheoremVerdict,
    VortexSystem,
    check_theorem_b,
    classify,
    classify_from_mus,
    find_cc,
    generalized_eigenspaces,
    grad_hamiltonian,
    hessian,
    i_nu_inertia,
    inertia_of,
    m_orthogonality_check,
    make_equilateral_triangle,
    make_rhombus,
    nontrivial_spectrum,
    pairing_check,
)
from nvortex import dynamics, model, spectral
from nvortex.errors import AmbiguousClassification
from nvortex.reference import RHOMBUS_B_CUBIC, RHOMBUS_DEGENERACY, rhombus_b_transition

STABLE = (StabilityClass.LinearlyStable, StabilityClass.SpectrallyStableOnly)


def _report(num: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {num} [{name}]: {status}{suffix}")
    assert ok, f"acceptance criterion {num} ({name}) failed: {detail}"


def _bisect(label, lo, hi, tol=1e-10):
    ref = label(lo)
    assert label(hi) != ref
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if label(mid) == ref:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _class_label(m: float) -> str:
    try:
        cc = make_rhombus(m, RhombusBranch.A)
        return classify(cc.system, cc).value
    except Exception as exc:  # boundary band
        return type(exc).__name__


def _type_label(m: float) -> str:
    cc = make_rhombus(m, RhombusBranch.B)
    lam = nontrivial_spectrum(cc.system, cc).nontrivial_part
    scale = max(1.0, float(np.max(np.abs(lam))))
    return str(int(np.sum(np.abs(lam.real) > 1e-8 * scale)))


def test_criterion_1_structural_identities():
    rng = np.random.default_rng(101)
    worst_identity = 0.0
    worst_fd = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 7))
        sys, z = random_system_and_configuration(rng, n)
        g = grad_hamiltonian(sys, z)
        h = hessian(sys, z)
        k = model.poisson_matrix(n)
        s = model.translation_vector(n)
        scale = max(1.0, np.linalg.norm(g) * np.linalg.norm(z))
        worst_identity = max(
            worst_identity,
            abs(g @ z + sys.angular_momentum) / scale,
            abs(g @ model.apply_poisson(z)) / scale,
            np.max(np.abs(h @ k + k @ h)) / max(1.0, np.abs(h).max()),
            np.max(np.abs(h @ s)) / max(1.0, np.abs(h).max()),
        )
    for _ in range(10):
        n = int(rng.integers(2, 7))
        sys, z = random_system_and_configuration(rng, n)
        fd = fd_jacobian(lambda w: grad_hamiltonian(sys, w), z)
        worst_fd = max(worst_fd, float(np.max(np.abs(hessian(sys, z) - fd))))
    ok = worst_identity <= 1e-10 and worst_fd <= 1e-6
    _report(
        1,
        "structural identities",
        ok,
        f"identities {worst_identity:.2e} <= 1e-10, fd {worst_fd:.2e} <= 1e-6",
    )


def _generated_ccs():
    rng = np.random.default_rng(102)
    ccs = [make_equilateral_triangle(*random_circulations(rng, 3)) for _ in range(20)]
    for m in np.linspace(-0.95, 1.0, 25):
        if abs(m) > 0.02:
            ccs.append(make_rhombus(float(m), RhombusBranch.A))
    for m in np.linspace(-0.95, -0.05, 19):
        ccs.append(make_rhombus(float(m), RhombusBranch.B))
    return ccs


def test_criterion_2_spectrum_pairing():
    worst = 0.0
    for cc in _generated_ccs():
        lam = np.linalg.eigvals(spectral.stability_matrix(cc.system, cc))
        scale = max(1.0, float(np.max(np.abs(lam**2 + cc.omega**2))))
        worst = max(worst, pairing_check(cc.system, cc) / scale)
    _report(2, "spectrum pairing", worst <= 1e-8, f"max {worst:.2e} <= 1e-8")


def test_criterion_3_classification_equivalence():
    rng = np.random.default_rng(103)
    checked = 0
    disagreements = 0
    cases = []
    for _ in range(50):
        g = random_circulations(rng, 3)
        sys = VortexSystem(g)
        if abs(sys.angular_momentum) > 1e-3:
            cases.append(make_equilateral_triangle(*g))
    for m in np.linspace(-0.97, 0.99, 50):
        if abs(m) > 0.02:
            cases.append(make_rhombus(float(m), RhombusBranch.A))
    for m in np.linspace(-0.97, -0.03, 50):
        cases.append(make_rhombus(float(m), RhombusBranch.B))
    for cc in cases:
        try:
            a = classify(cc.system, cc)
            b = classify_from_mus(cc.system, cc)
        except AmbiguousClassification:
            continue  # declared ambiguity band
        checked += 1
        disagreements += a is not b
    ok = disagreements == 0 and checked >= 120
    _report(
        3,
        "two-route classification",
        ok,
        f"{checked} cases, {disagreements} disagreements",
    )


def test_criterion_4_synge_triangle():
    rng = np.random.default_rng(104)
    patterns = [(1, 1, 1), (1, 1, -1), (1, -1, -1), (-1, -1, -1)]
    checked = 0
    failures = 0
    for signs in patterns:
        done = 0
        while done < 100:
            g = rng.uniform(0.2, 3.0, 3) * np.array(signs, dtype=float)
            sys_l = g[0] * g[1] + g[0] * g[2] + g[1] * g[2]
            if abs(sys_l) < 1e-6 or abs(g.sum()) < 0.05:
                continue
            cc = make_equilateral_triangle(*g)
            try:
                stable = classify(cc.system, cc) in STABLE
            except AmbiguousClassification:
                continue
            failures += stable != (sys_l > 0)
            done += 1
            checked += 1
    _report(4, "Synge criterion", failures == 0, f"{checked} samples, {failures} failures")


def test_criterion_5_rhombus_a_window():
    failures = []
    for k in range(400):
        m = min(round(-0.995 + 0.005 * k, 10), 1.0)
        if abs(m) < 1e-9:
            continue
        cc = make_rhombus(m, RhombusBranch.A)
        c = classify(cc.system, cc)
        expect_stable = m > RHOMBUS_DEGENERACY
        if (c is StabilityClass.LinearlyStable) != expect_stable:
            failures.append((m, c.value))
    located = _bisect(_class_label, -0.28, -0.25)
    loc_err = abs(located - RHOMBUS_DEGENERACY)
    # structure below the degeneracy: one real pair, one imaginary pair
    structure_ok = True
    for m in (-0.9, -0.6, -0.35):
        lam = nontrivial_spectrum(
            make_rhombus(m, RhombusBranch.A).system, make_rhombus(m, RhombusBranch.A)
        ).nontrivial_part
        scale = max(1.0, float(np.max(np.abs(lam))))
        real_pair = np.sum((np.abs(lam.real) > 1e-8 * scale) & (np.abs(lam.imag) < 1e-8 * scale))
        imag_pair = np.sum((np.abs(lam.real) < 1e-8 * scale) & (np.abs(lam.imag) > 1e-8 * scale))
        structure_ok &= real_pair == 2 and imag_pair == 2
    ok = not failures and loc_err <= 1e-8 and structure_ok
    _report(
        5,
        "rhombus A stability window",
        ok,
        f"window errors {failures[:3]}, boundary offset {loc_err:.2e} <= 1e-8",
    )


def test_criterion_6_rhombus_b_unstable():
    failures = []
    for k in range(199):
        m = round(-0.995 + 0.005 * k, 10)
        cc = make_rhombus(m, RhombusBranch.B)
        try:
            c = classify(cc.system, cc)
        except AmbiguousClassification:
            continue
        if c is not StabilityClass.Unstable:
            failures.append((m, c.value))
    m_star = _bisect(_type_label, -0.62, -0.57)
    root = rhombus_b_transition()
    a, b, c3, d = RHOMBUS_B_CUBIC
    cubic = abs(((a * m_star + b) * m_star + c3) * m_star + d)
    ok = not failures and abs(m_star - root) <= 1e-8 and cubic <= 1e-6
    _report(
        6,
        "rhombus B instability",
        ok,
        f"transition at {m_star:.10f}, cubic residual {cubic:.2e} <= 1e-6",
    )


def test_criterion_7_index_formula_branches():
    rng = np.random.default_rng(107)
    checked = 0
    failures = []
    cases = []
    while len(cases) < 60:
        g = random_circulations(rng, 3)
        sys = VortexSystem(g)
        if sys.angular_momentum < 1e-3:
            continue
        cases.append(make_equilateral_triangle(*g))
    for m in np.linspace(RHOMBUS_DEGENERACY + 0.01, 1.0, 30):
        if abs(m) > 0.02:
            cases.append(make_rhombus(float(m), RhombusBranch.A))
    for cc in cases:
        try:
            report = check_theorem_b(cc.system, cc)
        except AmbiguousClassification:
            continue
        if report.verdict is TheoremVerdict.NotApplicable:
            continue
        checked += 1
        if report.verdict is not TheoremVerdict.Holds:
            failures.append(cc.system.circulations.tolist())
    # known discrepancies with the published tables: the direct values win
    tri = check_theorem_b(
        make_equilateral_triangle(1, 1, -0.4).system,
        make_equilateral_triangle(1, 1, -0.4),
    )
    rhm = check_theorem_b(
        make_rhombus(-0.2, RhombusBranch.A).system, make_rhombus(-0.2, RhombusBranch.A)
    )
    direct_ok = tri.inertia_ahat.n_minus == 2 and rhm.inertia_ahat.n_minus == 4
    ok = not failures and checked >= 80 and direct_ok
    _report(
        7,
        "index formula branches",
        ok,
        f"{checked} stable cases hold; direct indices tri=2 (table 1), "
        f"rhombus={rhm.inertia_ahat.n_minus} (table 3)",
    )


def test_criterion_8_decomposition_properties():
    worst_orth = 0.0
    ok = True
    for cc in _generated_ccs()[::3]:
        if abs(cc.system.angular_momentum) < 1e-3:
            continue
        a = spectral.corotating_matrix(cc.system, cc)
        dec = generalized_eigenspaces(a)
        worst_orth = max(worst_orth, m_orthogonality_check(cc.system, dec))
        nus = np.linalg.eigvals(a)
        np.testing.assert_allclose(
            np.sort_complex(nus),
            np.sort_complex((2.0 * cc.omega - nus).conj()),
            atol=1e-7,
        )
        parts = i_nu_inertia(cc.system, cc, dec)  # raises if additivity breaks
        for nu, triple in parts:
            if abs(complex(nu).imag) > 1e-6:
                ok &= triple.n_minus == triple.n_plus
    ok &= worst_orth <= 1e-8
    _report(
        8,
        "decomposition properties",
        ok,
        f"orthogonality {worst_orth:.2e} <= 1e-8, reflection + additivity hold",
    )


def test_criterion_9_dynamics_crosscheck():
    details = []
    ok = True
    for cc in (make_equilateral_triangle(1, 1, 1), make_rhombus(1.0, RhombusBranch.A)):
        t = dynamics.period_of(cc)
        traj = dynamics.integrate(cc.system, cc.xi, t)
        ret = float(np.linalg.norm(traj.states[-1] - cc.xi))
        mono = dynamics.monodromy(cc.system, cc)
        det = abs(mono.determinant - 1.0)
        mismatch = dynamics.floquet_vs_spectrum(cc.system, cc, mono)
        ok &= ret <= 1e-7 and det <= 1e-6 and mismatch <= 1e-6
        details.append(f"ret {ret:.1e} det {det:.1e} floq {mismatch:.1e}")
    cc = make_rhombus(-0.5, RhombusBranch.B)
    mono = dynamics.monodromy(cc.system, cc)
    grows = float(np.max(np.abs(mono.multipliers))) > 1.0
    ok &= grows
    _report(9, "dynamics cross-check", ok, "; ".join(details) + f"; growth {grows}")


def test_criterion_10_solver():
    rng = np.random.default_rng(110)
    cc0 = make_equilateral_triangle(1.0, 1.0, 1.0)
    worst = 0.0
    for _ in range(50):
        guess = cc0.xi + 1e-3 * rng.standard_normal(6)
        sol = find_cc(cc0.system, guess, max_iter=10, tol=1e-12)
        worst = max(worst, sol.residual_norm)
        pts = sol.xi.reshape(3, 2)
        sides = [np.linalg.norm(pts[i] - pts[(i + 1) % 3]) for i in range(3)]
        assert np.ptp(sides) <= 1e-8  # equilateral recovered
    solved = 0
    while solved < 10:
        g = random_circulations(rng, 3)
        sys = VortexSystem(g)
        if sys.angular_momentum <= 1e-2:
            continue
        cc = make_equilateral_triangle(*g)
        guess = cc.xi + 1e-3 * rng.standard_normal(6)
        sol = find_cc(sys, guess, max_iter=10, tol=1e-12)
        worst = max(worst, sol.residual_norm)
        solved += 1
    _report(10, "solver", worst <= 1e-12, f"max residual {worst:.2e} <= 1e-12")
