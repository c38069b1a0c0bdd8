"""Exception types shared across the package."""


class EpgBendError(Exception):
    """Base class for all package errors."""


class NonPlanar(EpgBendError):
    """Raised when a graph admits no plane embedding.

    Attributes:
        certificate: set of edges of a Kuratowski subdivision, or None.
    """

    def __init__(self, message="graph is not planar", certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotTriangulation(EpgBendError):
    """An embedding expected to be a plane triangulation is not."""


class EmptyInterior(EpgBendError):
    """A triangle expected to enclose vertices encloses none."""


class TreewidthExceeded(EpgBendError):
    """Degree-2 reduction stalled: the graph has treewidth > 2."""


class NotPlane3Tree(EpgBendError):
    """Degree-3 peeling stalled: the input is not a plane 3-tree."""


class NotFourConnected(EpgBendError):
    """A triangulation expected to be 4-connected has a separating triangle."""


class NotOuterEdge(EpgBendError):
    """The designated edge is not on the outer face."""


class NotNst(EpgBendError):
    """Input violates the non-separating near-triangulation contract."""


class NotInterval(EpgBendError):
    """A 0-bend representation was requested for a non-interval graph."""


class OrientationMismatch(EpgBendError):
    """Visibility is only defined between segments of equal orientation."""


class BadParams(EpgBendError):
    """Generator parameters outside their documented domain."""


class InvariantBroken(EpgBendError):
    """Internal builder invariant failed; indicates a bug, not bad input."""


class RegionTooSmall(EpgBendError):
    """A fill did not fit inside its reserved region; indicates a bug."""


class Unsupported(EpgBendError):
    """No builder applies to the given input."""
