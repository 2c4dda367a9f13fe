"""Exception hierarchy for the N-vortex stability toolkit."""


class VortexError(Exception):
    """Base class for all package-specific errors."""


class CollisionError(VortexError):
    """Two vortices are closer than the collision threshold."""

    def __init__(self, i: int, j: int, distance: float):
        self.i = i
        self.j = j
        self.distance = distance
        super().__init__(f"vortices {i} and {j} collide (r = {distance:.3e})")


class ZeroTotalCirculation(VortexError):
    """The total circulation vanishes; center of vorticity undefined."""


class ZeroAngularImpulse(VortexError):
    """Angular impulse too close to zero to define an angular velocity."""


class ParameterOutOfRange(VortexError):
    """Family parameter outside the domain of the requested branch."""


class NegativeDiscriminant(VortexError):
    """The rhombus shape equation has no real solution."""


class NoConvergence(VortexError):
    """Newton iteration failed to reach the residual target."""

    def __init__(self, message: str, best=None, residual: float = float("nan")):
        self.best = best
        self.residual = residual
        super().__init__(message)


class SingularJacobian(VortexError):
    """Augmented Jacobian rank-deficient near a degenerate critical point."""


class DegenerateMomentum(VortexError):
    """Total vortex angular momentum too small; W and W-perp overlap."""


class TrivialMatchFailure(VortexError):
    """The four symmetry eigenvalues could not be identified."""


class AmbiguousClassification(VortexError):
    """An eigenvalue sits too close to a stability-class boundary."""


class NotSymmetric(VortexError):
    """Matrix handed to an inertia routine is not symmetric."""


class RankDeficientBasis(VortexError):
    """Subspace basis vectors are not linearly independent."""


class ClusterAmbiguity(VortexError):
    """Two eigenvalue clusters are too close to separate reliably."""


class DegenerateRestriction(VortexError):
    """Restricted quadratic form is singular where it must not be."""


class IndefiniteSignXi(VortexError):
    """The sign of the circulation norm of the configuration is undecided."""


class CollisionApproach(VortexError):
    """Time integration approached a collision; partial trajectory attached."""

    def __init__(self, message: str, trajectory=None):
        self.trajectory = trajectory
        super().__init__(message)


class StepFailure(VortexError):
    """The ODE integrator failed to complete a step."""
