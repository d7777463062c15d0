"""Exception hierarchy.

Validation errors name the offending cell in their message and carry it as
``cell``.  :class:`InternalConsistencyError` is reserved for conditions that a
theorem guarantees cannot happen; seeing one means a bug, not bad input.
"""


class RapError(Exception):
    """Base class for every error raised by :mod:`rapoly`."""


class InputError(RapError):
    """Malformed input: bad file, bad face list, bad argument."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class MalformedFace(InputError):
    pass


class EdgeNotSharedByTwoFaces(InputError):
    pass


class OrientationMismatch(InputError):
    pass


class NonManifoldVertex(InputError):
    pass


class EulerViolation(InputError):
    pass


class DisconnectedSkeleton(InputError):
    pass


class NoSuchFace(InputError):
    pass


class NoSuchEdge(InputError):
    pass


class FaceSizeMismatch(InputError):
    pass


class NTooSmall(InputError):
    pass


class NonFinite(InputError):
    pass


class TOutOfRange(InputError):
    pass


class NotTrivalent(RapError):
    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class NotAdmissible(RapError):
    """Raised by operations that require a right-angled admissible input."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class NotVeryGood(RapError):
    pass


class HasFlat(RapError):
    pass


class CircuitTooShort(RapError):
    pass


class DecompositionInvalid(RapError):
    pass


class ImproperFaceColoring(RapError):
    pass


class IncompleteTrace(RapError):
    pass


class TheoremViolation(RapError):
    """No reduction move exists for a non-Lobell admissible polyhedron."""


class InternalConsistencyError(RapError):
    pass
