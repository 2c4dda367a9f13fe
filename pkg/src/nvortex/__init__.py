"""Stability analysis of rigidly rotating point-vortex configurations."""

from .central import (
    CentralConfiguration,
    RhombusBranch,
    cc_residual,
    find_cc,
    make_equilateral_triangle,
    make_rhombus,
    omega_for,
    rhombus_nontrivial_mus,
    validate_cc,
)
from .inertia import (
    EigenspaceDecomposition,
    InertiaReport,
    InertiaTriple,
    TheoremVerdict,
    check_theorem_b,
    generalized_eigenspaces,
    i_nu_inertia,
    inertia_of,
    m_orthogonality_check,
    restricted_inertia,
)
from .kernels import BACKEND
from .model import (
    VortexSystem,
    angular_impulse,
    center_of_vorticity,
    circulation_inner,
    grad_hamiltonian,
    hamiltonian,
    hessian,
    mass_matrix,
    poisson_matrix,
)
from .spectral import (
    SpectralReport,
    StabilityClass,
    classify,
    classify_from_mus,
    nontrivial_spectrum,
    pairing_check,
    stability_matrix,
    symmetric_stability_form,
)

__version__ = "0.1.0"
