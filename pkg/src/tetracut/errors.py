"""Exception types shared across the package."""


class TetracutError(Exception):
    """Base class for all package errors."""


class NegativeWeight(TetracutError):
    """A barycentric weight is below -1e-12."""


class BadSum(TetracutError):
    """Barycentric weights do not sum to 1 within 1e-9."""


class FaceMismatch(TetracutError):
    """A point was flattened through a chain ending on a different face."""


class DepthTooLarge(TetracutError):
    """Unfolding depth exceeds the exponential-blowup guard (12)."""


class NoPathFound(TetracutError):
    """No valid geodesic found; only possible with depth < 2."""


class SamePoint(TetracutError):
    """Initial directions requested for a degenerate (p, p) pair."""


class BadCell(TetracutError):
    """Continuity audit requested for the discrete cell E4."""


class UnknownFigure(TetracutError):
    """Figure name not recognized by the renderer."""


class BadParams(TetracutError):
    """Figure parameters violate the stratum window they must lie in."""
