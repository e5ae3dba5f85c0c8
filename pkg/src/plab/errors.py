"""Exception types shared across the package."""


class PlabError(Exception):
    """Base class for all package errors."""


class ScalarModeError(PlabError):
    """Incompatible scalar modes (exact vs float, or different sqrt fields)."""


class DimensionMismatch(PlabError):
    pass


class NotNilpotent(PlabError):
    """w^3 != 0 or trace != 0."""


class WrongRank(PlabError):
    """rank(w) != 2."""


class SquareVanishes(PlabError):
    """w^2 == 0 (or all pairings <e_i, z> vanish for a quadric datum)."""


class InKernel(PlabError):
    """Slicing requested for a vector inside ker(w^2)."""


class DimensionNot3(PlabError):
    pass


class DegenerateDatum(PlabError):
    """Quadric datum invariant failure."""


class RegionTooLarge(PlabError):
    """Enumeration guard tripped."""


class BadEpsilonRange(PlabError):
    """epsilon outside [delta*Q^-2, Q^-1]."""


class ZeroCurvature(PlabError):
    pass


class JetUnavailable(PlabError):
    """Jet evaluation impossible (non-differentiable point or exact mode on
    a transcendental node)."""


class SurfaceSyntaxError(PlabError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConfigError(PlabError):
    """Invalid experiment configuration (CLI exit code 2)."""
