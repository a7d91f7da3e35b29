"""Exception and warning types shared across the package."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DegenerateInput(GeometryError):
    pass


class EmptySet(GeometryError):
    pass


class NotConvex(GeometryError):
    """Vertex list fails the strict-convexity / CCW requirement.

    ``index`` names the offending vertex when one can be singled out.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class PointNotInterior(GeometryError):
    pass


class DuplicateSites(GeometryError):
    pass


class BadParameter(GeometryError):
    pass


class ConstructionError(RuntimeError):
    """A constructed object violates an invariant it should hold by design."""


class DegenerateFieldWarning(UserWarning):
    """The gap field vanishes on a two-dimensional region (thick midset)."""
