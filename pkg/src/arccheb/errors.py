"""Exception types shared across the package."""


class ArcChebError(Exception):
    """Base class for all library errors."""


class PointOnArc(ArcChebError):
    """Evaluation point lies on (or too close to) the arc."""


class OutsideImage(ArcChebError):
    """Point lies inside the image disk of the exterior map."""


class InfinityPole(ArcChebError):
    """Green's function evaluated at its pole."""


class QuadratureFailure(ArcChebError):
    """Adaptive quadrature exhausted its budget without meeting tolerance."""


class SingularNode(ArcChebError):
    """Weight evaluated exactly at a node with negative exponent."""


class OutsideArc(ArcChebError):
    """Point does not lie on the target arc."""


class SizeTooSmall(ArcChebError):
    """Grid has fewer points than the requested degree allows."""


class NoConvergence(ArcChebError):
    """Iteration cap exceeded; carries the best iterate found so far."""

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class DegenerateNormalization(ArcChebError):
    """Normalization point coincides with a grid point."""


class WrongNormalization(ArcChebError):
    """Operation requires a differently normalized solution."""


class EmptyExtremalSet(ArcChebError):
    """Certificate requested but the solution has no extremal points."""


class LPFailure(ArcChebError):
    """Linear-programming oracle failed to solve."""


class IllConditionedFit(ArcChebError):
    """Extrapolation fit is not trustworthy for the given sequence."""
