########################################################
#
# Exceptions
#
########################################################


class DiffusionError(Exception):
    """Base class for diffusion-game errors"""


class InvalidSpec(DiffusionError, ValueError):
    """Graph or configuration spec string could not be parsed"""


class IndexOutOfRange(DiffusionError, IndexError):
    """Vertex index outside [0, n)"""


class SelfLoop(DiffusionError, ValueError):
    pass


class DuplicateEdge(DiffusionError, ValueError):
    pass


class InvalidSize(DiffusionError, ValueError):
    """Graph family parameters out of range"""


class Disconnected(DiffusionError, ValueError):
    """Some vertex is unreachable from the source"""


class NotBipartite(DiffusionError, ValueError):
    pass


class NotAStar(DiffusionError, ValueError):
    pass


class LengthMismatch(DiffusionError, ValueError):
    """Configuration length differs from the vertex count"""


class IntegerOverflow(DiffusionError, OverflowError):
    """A chip count would leave the int64 range"""


class NotAnInteger(DiffusionError, TypeError):
    """Chip counts must be integers"""


class InvalidParams(DiffusionError, ValueError):
    pass


class InvalidRange(DiffusionError, ValueError):
    pass


class WindowTooLarge(DiffusionError, ValueError):
    pass


class EmptyWindow(DiffusionError, ValueError):
    pass


class BoundInapplicable(DiffusionError, ValueError):
    """The graph does not have the shape the bound or oracle requires"""


class UnknownSuite(DiffusionError, ValueError):
    pass


class CertificateViolation(DiffusionError, AssertionError):
    """Property plus held but the configuration did not return after two firings"""
