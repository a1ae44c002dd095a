"""Engine error types.

Errors abort the command that raised them; the document is left unchanged
(atomicity is enforced by the session layer).
"""


class ScrapCadError(Exception):
    """Base class for all engine errors."""


# inventory
class NonPositiveDimension(ScrapCadError):
    pass


class UnknownScrap(ScrapCadError):
    pass


# part geometry
class UnknownPart(ScrapCadError):
    pass


class DegenerateGeometry(ScrapCadError):
    pass


class NonConvex(ScrapCadError):
    pass


class ResawNotAllowed(ScrapCadError):
    """Raised when an edit would change a part's thickness while resaw
    cuts are disabled."""


class IncongruentParts(ScrapCadError):
    pass


# cut plan
class UnknownPlacement(ScrapCadError):
    pass


class UnassignedPart(ScrapCadError):
    pass


# assembly
class UnresolvedCollision(ScrapCadError):
    pass


class NoSnapTarget(ScrapCadError):
    pass


class DegenerateTriangle(ScrapCadError):
    pass


# session
class MalformedCommand(ScrapCadError):
    pass


class NothingToUndo(ScrapCadError):
    pass


class NothingToRedo(ScrapCadError):
    pass


class IoFailure(ScrapCadError):
    pass


class VersionMismatch(ScrapCadError):
    pass


class SchemaViolation(ScrapCadError):
    pass
