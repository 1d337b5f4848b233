"""Exception types raised across the package."""


class SpaceDiscoveryError(Exception):
    pass


class SingularConfiguration(SpaceDiscoveryError):
    """The arm Jacobian has rank < 3, so the self-motion direction is undefined."""


class DegenerateSource(SpaceDiscoveryError):
    """A light source coincides with the lens center."""


class DisjointManifold(SpaceDiscoveryError):
    """Tip closer than one segment length to the base: the self-motion set splits in two."""


class NonClosure(SpaceDiscoveryError):
    pass


class BudgetExceeded(SpaceDiscoveryError):
    """Simplex search hit its iteration budget. ``x`` and ``f`` hold the best point found."""

    def __init__(self, msg, x=None, f=None):
        super().__init__(msg)
        self.x = x
        self.f = f


class DimensionMismatch(SpaceDiscoveryError):
    pass


class Unreachable(SpaceDiscoveryError):
    pass


class MissingStage(SpaceDiscoveryError):
    pass


class MissingArtifact(SpaceDiscoveryError):
    pass


class CorruptArtifact(SpaceDiscoveryError):
    pass


class ConfigError(SpaceDiscoveryError):
    pass
