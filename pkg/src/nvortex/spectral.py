"""Linearized-flow spectrum and stability classification.

The linearization of the rigidly rotating solution is governed by
B = K (M^-1 D2H + omega I). Four eigenvalues {0, 0, +i omega, -i omega}
are forced by the translation and rotation symmetries; classification
concerns the remaining 2N - 4.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import model
from .central import CentralConfiguration
from .errors import AmbiguousClassification, DegenerateMomentum, TrivialMatchFailure
from .model import VortexSystem


class StabilityClass(enum.Enum):
    Degenerate = "Degenerate"
    SpectrallyStableOnly = "SpectrallyStableOnly"
    LinearlyStable = "LinearlyStable"
    Unstable = "Unstable"


@dataclass(frozen=True)
class SpectralReport:
    omega: float
    eigenvalues_B: np.ndarray
    trivial_part: np.ndarray
    nontrivial_part: np.ndarray
    mus: np.ndarray
    nontrivial_mus: np.ndarray
    classification: StabilityClass
    pairing_error: float
    eigenvector_condition: float


def reduced_hessian(sys: VortexSystem, cc: CentralConfiguration) -> np.ndarray:
    """M^-1 D2H(xi); generally non-symmetric for mixed-sign circulations."""
    inv = 1.0 / np.repeat(sys.circulations, 2)
    return inv[:, None] * model.hessian(sys, cc.xi)


def corotating_matrix(sys: VortexSystem, cc: CentralConfiguration) -> np.ndarray:
    """M^-1 D2H(xi) + omega I; its generalized eigenspaces reduce B."""
    return reduced_hessian(sys, cc) + cc.omega * np.eye(2 * sys.n)


def symmetric_stability_form(sys: VortexSystem, cc: CentralConfiguration) -> np.ndarray:
    """The symmetric matrix D2H(xi) + omega M whose inertia is the Morse index."""
    return model.hessian(sys, cc.xi) + cc.omega * model.mass_matrix(sys)


def stability_matrix(sys: VortexSystem, cc: CentralConfiguration) -> np.ndarray:
    """B = K (M^-1 D2H + omega I), the generator of the linearized flow."""
    k = model.poisson_matrix(sys.n)
    return k @ corotating_matrix(sys, cc)


def trivial_basis(cc: CentralConfiguration):
    """The symmetry vectors (s, Ks, xi, K xi) witnessing the forced spectrum."""
    n = cc.xi.size // 2
    s = model.translation_vector(n)
    return s, model.apply_poisson(s), np.asarray(cc.xi), model.apply_poisson(cc.xi)


def _m_rows(sys: VortexSystem, vectors) -> np.ndarray:
    gam2 = np.repeat(sys.circulations, 2)
    return np.array([gam2 * v for v in vectors])


def _null_basis(rows: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of the row constraints."""
    _, sv, vt = np.linalg.svd(rows)
    basis = vt[rows.shape[0] :].T
    if basis.shape[1] != dim:
        raise DegenerateMomentum("constraint rows are rank deficient")
    if sv[-1] <= 1e-10 * sv[0]:
        raise DegenerateMomentum("symmetry vectors are nearly dependent")
    return basis


def w_perp_basis(sys: VortexSystem, cc: CentralConfiguration) -> np.ndarray:
    """Basis of the circulation-orthogonal complement of span(xi, K xi)."""
    if abs(sys.angular_momentum) < 1e-12 * float(
        np.max(np.abs(np.outer(sys.circulations, sys.circulations)))
    ):
        raise DegenerateMomentum("angular momentum ~ 0: W meets its complement")
    _, _, xi, kxi = trivial_basis(cc)
    return _null_basis(_m_rows(sys, [xi, kxi]), 2 * sys.n - 2)


def nontrivial_invariant_basis(sys: VortexSystem, cc: CentralConfiguration) -> np.ndarray:
    """Basis of the B-invariant complement of all four symmetry directions."""
    return _null_basis(_m_rows(sys, trivial_basis(cc)), 2 * sys.n - 4)


def _restrict(mat: np.ndarray, basis: np.ndarray, tol: float) -> np.ndarray:
    """Matrix of ``mat`` on an invariant subspace spanned by ``basis``."""
    image = mat @ basis
    coeff, *_ = np.linalg.lstsq(basis, image, rcond=None)
    resid = np.linalg.norm(image - basis @ coeff)
    scale = max(1.0, np.linalg.norm(mat))
    if resid > tol * scale:
        raise TrivialMatchFailure(
            f"subspace not invariant (residual {resid:.2e}); configuration "
            "does not satisfy the central-configuration equation"
        )
    return coeff


def nontrivial_spectrum(
    sys: VortexSystem, cc: CentralConfiguration, tol: float = 1e-8
) -> SpectralReport:
    """Eigenvalues of B with the symmetry quadruple removed by witnesses.

    Deflation restricts B to the invariant complement of (s, Ks, xi, K xi)
    rather than deleting nearby values, so degenerate parameters where a
    nontrivial eigenvalue collides with a trivial one stay correct.
    """
    b = stability_matrix(sys, cc)
    a0 = reduced_hessian(sys, cc)
    omega = cc.omega
    eigs_b = np.linalg.eigvals(b)
    mus = np.linalg.eigvals(a0)

    basis = nontrivial_invariant_basis(sys, cc)
    if basis.shape[1]:
        core = _restrict(b, basis, tol)
        nontrivial, vecs = np.linalg.eig(core)
        cond = float(np.linalg.cond(vecs))
        nontrivial_mus = np.linalg.eigvals(_restrict(a0, basis, tol))
    else:
        nontrivial = np.zeros(0, dtype=complex)
        nontrivial_mus = np.zeros(0, dtype=complex)
        cond = 1.0
    trivial = np.array([0.0, 0.0, 1j * omega, -1j * omega])
    pairing = pairing_error(eigs_b, mus, omega)
    classification = _classify_lambdas(nontrivial, omega, cond)
    return SpectralReport(
        omega=omega,
        eigenvalues_B=eigs_b,
        trivial_part=trivial,
        nontrivial_part=nontrivial,
        mus=mus,
        nontrivial_mus=nontrivial_mus,
        classification=classification,
        pairing_error=pairing,
        eigenvector_condition=cond,
    )


def pairing_error(eigs_b: np.ndarray, mus: np.ndarray, omega: float) -> float:
    """Max over lambda of the closest match of lambda^2 + omega^2 to some mu^2."""
    if eigs_b.size == 0:
        return 0.0
    target = eigs_b**2 + omega**2
    return float(
        max(np.min(np.abs(t - mus**2)) for t in target)
    )


def pairing_check(sys: VortexSystem, cc: CentralConfiguration, tol: float = 1e-8) -> float:
    """Verify the lambda^2 + omega^2 = mu^2 correspondence; returns max error."""
    b = stability_matrix(sys, cc)
    mus = np.linalg.eigvals(reduced_hessian(sys, cc))
    return pairing_error(np.linalg.eigvals(b), mus, cc.omega)


_DEFAULT_KAPPA = 1e8


def _classify_lambdas(
    lambdas: np.ndarray,
    omega: float,
    cond: float,
    kappa_max: float = _DEFAULT_KAPPA,
    tol_zero: float = 1e-8,
    tol_spec: float = 1e-8,
) -> StabilityClass:
    scale = max(1.0, float(np.max(np.abs(lambdas))) if lambdas.size else 1.0)
    tol_zero = tol_zero * scale
    tol_spec = tol_spec * scale
    if lambdas.size == 0:
        return StabilityClass.LinearlyStable
    mags = np.abs(lambdas)
    res = np.abs(lambdas.real)
    # boundary guard: refuse to call values sitting on a class edge
    near_zero = (mags > tol_zero) & (mags <= 10 * tol_zero)
    near_axis = (res > tol_spec) & (res <= 10 * tol_spec)
    if np.any(near_zero) or np.any(near_axis):
        raise AmbiguousClassification(
            "an eigenvalue sits within 10x tolerance of a class boundary"
        )
    if np.any(mags <= tol_zero):
        return StabilityClass.Degenerate
    if np.any(res > tol_spec):
        return StabilityClass.Unstable
    if cond <= kappa_max:
        return StabilityClass.LinearlyStable
    return StabilityClass.SpectrallyStableOnly


def classify(
    sys: VortexSystem,
    cc: CentralConfiguration,
    tol: float = 1e-8,
    kappa_max: float = _DEFAULT_KAPPA,
    tol_zero: float = 1e-8,
    tol_spec: float = 1e-8,
) -> StabilityClass:
    """Stability class from the nontrivial eigenvalues of B.

    Degenerate when a nontrivial eigenvalue vanishes; otherwise stable when
    all are purely imaginary, with linear (as opposed to merely spectral)
    stability decided by the conditioning of the eigenvector matrix.
    """
    report = nontrivial_spectrum(sys, cc, tol)
    return _classify_lambdas(
        report.nontrivial_part,
        cc.omega,
        report.eigenvector_condition,
        kappa_max,
        tol_zero,
        tol_spec,
    )


def classify_from_mus(
    sys: VortexSystem,
    cc: CentralConfiguration,
    tol: float = 1e-8,
    kappa_max: float = _DEFAULT_KAPPA,
) -> StabilityClass:
    """Independent classification route through the reduced-Hessian spectrum.

    Stable iff every nontrivial mu is purely imaginary or real with
    |mu| <= |omega|; degenerate exactly when some mu hits +-omega.
    """
    report = nontrivial_spectrum(sys, cc, tol)
    mus = report.nontrivial_mus
    if mus.size == 0:
        return StabilityClass.LinearlyStable
    omega = abs(cc.omega)
    scale = max(1.0, float(np.max(np.abs(mus))), omega)
    eps = 1e-8 * scale
    gap = np.abs(mus**2 - omega**2)
    eps2 = 1e-8 * scale * scale
    if np.any((gap > eps2) & (gap <= 10 * eps2)):
        raise AmbiguousClassification("a mu sits within 10x tolerance of +-omega")
    if np.any(gap <= eps2):
        return StabilityClass.Degenerate
    is_real = np.abs(mus.imag) <= eps
    is_imag = np.abs(mus.real) <= eps
    stable = np.where(is_imag, True, is_real & (np.abs(mus) <= omega))
    if not np.all(stable):
        return StabilityClass.Unstable
    if report.eigenvector_condition <= kappa_max:
        return StabilityClass.LinearlyStable
    return StabilityClass.SpectrallyStableOnly
