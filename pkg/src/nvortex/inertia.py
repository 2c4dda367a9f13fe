"""Inertia (Morse index) computation and the index-formula cross-check.

Everything here treats the closed-form index relations as claims under
test: the ground truth is always a dense symmetric eigendecomposition of
the matrices involved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import model, spectral
from .central import CentralConfiguration
from .errors import (
    ClusterAmbiguity,
    DegenerateRestriction,
    IndefiniteSignXi,
    NotSymmetric,
    RankDeficientBasis,
)
from .model import VortexSystem
from .spectral import StabilityClass


@dataclass(frozen=True)
class InertiaTriple:
    n_minus: int
    n_zero: int
    n_plus: int

    def __iter__(self):
        return iter((self.n_minus, self.n_zero, self.n_plus))

    @property
    def dimension(self) -> int:
        return self.n_minus + self.n_zero + self.n_plus


@dataclass(frozen=True)
class Eigenspace:
    nu: complex
    basis: np.ndarray  # columns span the generalized eigenspace
    algebraic_multiplicity: int
    geometric_multiplicity: int


@dataclass(frozen=True)
class EigenspaceDecomposition:
    spaces: tuple[Eigenspace, ...]

    def __iter__(self):
        return iter(self.spaces)

    def __len__(self):
        return len(self.spaces)


class TheoremVerdict(enum.Enum):
    Holds = "Holds"
    Violated = "Violated"
    NotApplicable = "NotApplicable"


@dataclass(frozen=True)
class InertiaReport:
    inertia_ahat: InertiaTriple
    inertia_m: InertiaTriple
    inertia_ahat_w: InertiaTriple
    inertia_ahat_wperp: InertiaTriple
    inertia_m_wperp: InertiaTriple
    m_xi_xi: float
    omega_sign: int
    classification: StabilityClass
    predicted_n_minus: int | None
    restriction_formula_holds: bool | None
    verdict: TheoremVerdict
    details: dict


def _triple_from_eigs(eigs: np.ndarray, zero_tol: float) -> InertiaTriple:
    scale = max(1.0, float(np.max(np.abs(eigs))) if eigs.size else 1.0)
    cut = zero_tol * scale
    return InertiaTriple(
        int(np.sum(eigs < -cut)),
        int(np.sum(np.abs(eigs) <= cut)),
        int(np.sum(eigs > cut)),
    )


def inertia_of(mat: np.ndarray, zero_tol: float = 1e-9) -> InertiaTriple:
    """Signs of the spectrum of a symmetric matrix."""
    mat = np.asarray(mat, dtype=float)
    scale = max(1.0, float(np.abs(mat).max()))
    if np.abs(mat - mat.T).max() > 1e-10 * scale:
        raise NotSymmetric("matrix is not symmetric")
    return _triple_from_eigs(np.linalg.eigvalsh(0.5 * (mat + mat.T)), zero_tol)


def restricted_inertia(mat: np.ndarray, basis: np.ndarray, zero_tol: float = 1e-9) -> InertiaTriple:
    """Inertia of the quadratic form of ``mat`` on the span of ``basis``.

    ``basis`` holds column vectors, real or complex; the Gram matrix is
    Hermitian either way and its inertia is basis-independent (Sylvester).
    """
    basis = np.atleast_2d(np.asarray(basis))
    if basis.shape[0] < basis.shape[1]:
        raise RankDeficientBasis("more vectors than ambient dimension")
    sv = np.linalg.svd(basis, compute_uv=False)
    if sv[-1] <= 1e-10 * sv[0]:
        raise RankDeficientBasis("basis vectors are (nearly) dependent")
    gram = basis.conj().T @ mat @ basis
    gram = 0.5 * (gram + gram.conj().T)
    return _triple_from_eigs(np.linalg.eigvalsh(gram), zero_tol)


def _cluster(eigs: np.ndarray, tol: float):
    """Greedy union of eigenvalues within tol; returns (center, indices) pairs."""
    order = np.argsort(eigs.real + 1e-9 * eigs.imag)
    groups: list[list[int]] = []
    for idx in order:
        for grp in groups:
            if abs(eigs[idx] - np.mean(eigs[list(grp)])) <= tol:
                grp.append(int(idx))
                break
        else:
            groups.append([int(idx)])
    return [(complex(np.mean(eigs[g])), g) for g in groups]


def generalized_eigenspaces(
    matrix: np.ndarray, tol: float = 1e-6
) -> EigenspaceDecomposition:
    """Rank-detected generalized eigenspaces of a (possibly defective) matrix.

    Eigenvalues are clustered within ``tol`` times the spectral scale; each
    space is the kernel of (A - nu I)^k with k up to the cluster size,
    found by singular-value thresholding.
    """
    a = np.asarray(matrix, dtype=complex)
    dim = a.shape[0]
    eigs = np.linalg.eigvals(a)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    clusters = _cluster(eigs, tol * scale)
    centers = [c for c, _ in clusters]
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            if abs(centers[i] - centers[j]) <= 10 * tol * scale:
                raise ClusterAmbiguity(
                    f"clusters at {centers[i]:.6g} and {centers[j]:.6g} "
                    "are within 10x the clustering tolerance"
                )
    spaces = []
    for nu, members in clusters:
        mult = len(members)
        shifted = a - nu * np.eye(dim)
        geo = None
        power = np.eye(dim, dtype=complex)
        basis = None
        for k in range(1, mult + 1):
            power = power @ shifted
            _, sv, vt = np.linalg.svd(power)
            rank = int(np.sum(sv > 1e-8 * max(sv[0], 1e-300)))
            kdim = dim - rank
            if k == 1:
                geo = kdim
            basis = vt[rank:].conj().T
            if kdim >= mult:
                break
        spaces.append(Eigenspace(nu, basis, mult, int(geo)))
    return EigenspaceDecomposition(tuple(spaces))


def m_orthogonality_check(
    sys: VortexSystem, decomposition: EigenspaceDecomposition, tol: float = 1e-8
) -> float:
    """Largest circulation-product between eigenspaces of non-conjugate values."""
    m = model.mass_matrix(sys).astype(complex)
    worst = 0.0
    spaces = list(decomposition)
    for i, e1 in enumerate(spaces):
        for e2 in spaces[i + 1 :]:
            if abs(e1.nu - np.conj(e2.nu)) <= 1e-8 * max(1.0, abs(e1.nu)):
                continue
            block = e2.basis.conj().T @ m @ e1.basis
            worst = max(worst, float(np.max(np.abs(block))))
    return worst


def _paired_subspaces(decomposition: EigenspaceDecomposition):
    """Group conjugate eigenspaces: one entry per nu with Im nu >= 0."""
    spaces = list(decomposition)
    used = set()
    out = []
    for i, e in enumerate(spaces):
        if i in used:
            continue
        if abs(e.nu.imag) <= 1e-8 * max(1.0, abs(e.nu)):
            out.append((e.nu, e.basis, e.algebraic_multiplicity, False))
            used.add(i)
            continue
        partner = None
        for j in range(i + 1, len(spaces)):
            if j not in used and abs(spaces[j].nu - np.conj(e.nu)) <= 1e-6 * max(
                1.0, abs(e.nu)
            ):
                partner = j
                break
        if partner is None:
            raise ClusterAmbiguity(f"no conjugate partner found for {e.nu:.6g}")
        rep = e if e.nu.imag > 0 else spaces[partner]
        other = spaces[partner] if e.nu.imag > 0 else e
        basis = np.hstack([rep.basis, other.basis])
        out.append((rep.nu, basis, rep.algebraic_multiplicity, True))
        used.update({i, partner})
    return out


def i_nu_inertia(
    sys: VortexSystem,
    cc: CentralConfiguration,
    decomposition: EigenspaceDecomposition,
    zero_tol: float = 1e-9,
):
    """Inertia of the symmetric stability form on each invariant subspace.

    For strictly complex nu the restriction must have equally many negative
    and positive directions (each the algebraic multiplicity); for nonzero
    nu it must be non-degenerate.
    """
    ahat = spectral.symmetric_stability_form(sys, cc).astype(complex)
    out = []
    for nu, basis, mult, is_complex in _paired_subspaces(decomposition):
        triple = restricted_inertia(ahat, basis, zero_tol)
        if abs(nu) > 1e-8 and triple.n_zero > 0:
            raise DegenerateRestriction(
                f"restriction at nu = {nu:.6g} is singular: {tuple(triple)}"
            )
        if is_complex and not (triple.n_minus == triple.n_plus == mult):
            raise DegenerateRestriction(
                f"complex pair at nu = {nu:.6g} has inertia {tuple(triple)}, "
                f"expected ({mult}, 0, {mult})"
            )
        out.append((nu, triple))
    total = sum(t.n_minus for _, t in out)
    full = inertia_of(spectral.symmetric_stability_form(sys, cc), zero_tol)
    if total != full.n_minus:
        raise DegenerateRestriction(
            f"additivity failed: sum of restricted indices {total} != "
            f"{full.n_minus}"
        )
    return out


def check_theorem_b(
    sys: VortexSystem, cc: CentralConfiguration, tol: float = 1e-8
) -> InertiaReport:
    """Compare directly computed inertias against the index formulas.

    All quantities are computed by dense eigendecomposition first; the
    branch formulas (full-space and restricted to the complement of the
    symmetry plane) are then evaluated as predictions and the verdict
    records whether they match.
    """
    ahat = spectral.symmetric_stability_form(sys, cc)
    mmat = model.mass_matrix(sys)
    _, _, xi, kxi = spectral.trivial_basis(cc)
    w_basis = np.column_stack([xi, kxi])
    wp_basis = spectral.w_perp_basis(sys, cc)

    ia = inertia_of(ahat)
    im = inertia_of(mmat)
    iaw = restricted_inertia(ahat, w_basis)
    iawp = restricted_inertia(ahat, wp_basis)
    imwp = restricted_inertia(mmat, wp_basis)
    m_xi_xi = model.circulation_inner(sys, xi, xi)
    if abs(m_xi_xi) <= tol:
        raise IndefiniteSignXi("sign of the configuration norm is undecided")
    omega_sign = 1 if cc.omega > 0 else -1

    classification = spectral.classify(sys, cc, tol)
    applicable = classification in (
        StabilityClass.LinearlyStable,
        StabilityClass.SpectrallyStableOnly,
    )

    if omega_sign > 0:
        predicted = im.n_minus if m_xi_xi > 0 else im.n_minus - 1
        restriction_ok = iawp.n_minus == imwp.n_minus
    else:
        predicted = im.n_plus - 1 if m_xi_xi > 0 else im.n_plus
        restriction_ok = iawp.n_minus == imwp.n_plus

    details = {
        "n_minus_ahat": ia.n_minus,
        "n_minus_m": im.n_minus,
        "n_plus_m": im.n_plus,
        "n_minus_ahat_wperp": iawp.n_minus,
        "n_minus_m_wperp": imwp.n_minus,
        "n_plus_m_wperp": imwp.n_plus,
        "predicted_n_minus_ahat": predicted,
        "classification": classification.value,
    }
    if not applicable:
        verdict = TheoremVerdict.NotApplicable
    elif predicted == ia.n_minus and restriction_ok:
        verdict = TheoremVerdict.Holds
    else:
        verdict = TheoremVerdict.Violated
    return InertiaReport(
        inertia_ahat=ia,
        inertia_m=im,
        inertia_ahat_w=iaw,
        inertia_ahat_wperp=iawp,
        inertia_m_wperp=imwp,
        m_xi_xi=m_xi_xi,
        omega_sign=omega_sign,
        classification=classification,
        predicted_n_minus=predicted if applicable else None,
        restriction_formula_holds=restriction_ok if applicable else None,
        verdict=verdict,
        details=details,
    )
