"""Exception types shared across the library.

Every error carries a stable ``code`` string and a suggested HTTP status so
the CLI and the JSON service can report failures uniformly.
"""


class PonceletError(Exception):
    code = "InternalError"
    http_status = 500


class PointInsideConic(PonceletError):
    code = "PointInsideConic"
    http_status = 422


class InvalidAspect(PonceletError):
    code = "InvalidAspect"
    http_status = 422


class FreeParamOutOfRange(PonceletError):
    code = "FreeParamOutOfRange"
    http_status = 422


class DegenerateTriangle(PonceletError):
    code = "DegenerateTriangle"
    http_status = 422


class DegenerateDerived(PonceletError):
    code = "DegenerateDerived"
    http_status = 422


class UnknownCenter(PonceletError):
    code = "UnknownCenter"
    http_status = 400


class CenterAtInfinity(PonceletError):
    code = "CenterAtInfinity"
    http_status = 422


class AllSamplesDegenerate(PonceletError):
    code = "AllSamplesDegenerate"
    http_status = 422


class InsufficientPoints(PonceletError):
    code = "InsufficientPoints"
    http_status = 400


class ArrangementError(PonceletError):
    code = "ArrangementError"
    http_status = 500


class EmptyScene(PonceletError):
    code = "EmptyScene"
    http_status = 400


class CorruptBlob(PonceletError):
    code = "CorruptBlob"
    http_status = 400


class UnsupportedVersion(PonceletError):
    code = "UnsupportedVersion"
    http_status = 400


class OutOfRange(PonceletError):
    code = "OutOfRange"
    http_status = 400


class BadRequest(PonceletError):
    code = "BadRequest"
    http_status = 400
