"""Error types.

Every error carries the module it was raised from and the name of the
precondition that failed, so the command line can emit a machine readable
record.
"""


class TwoholError(Exception):
    module = "twohol"
    precondition = "unspecified"

    def __init__(self, message, precondition=None, module=None):
        super().__init__(message)
        if precondition is not None:
            self.precondition = precondition
        if module is not None:
            self.module = module

    def record(self):
        return {
            "error": type(self).__name__,
            "module": self.module,
            "precondition": self.precondition,
            "message": str(self),
        }


class InvalidCrossedModule(TwoholError):
    module = "group_core"
    precondition = "crossed-module axioms"


class CompositionError(TwoholError):
    module = "group_core"
    precondition = "composable arrows"


class GeometryError(TwoholError):
    module = "complex"
    precondition = "well-formed complex"


class NotRegular(GeometryError):
    precondition = "regular gluing"


class NoUnbrokenAssignment(GeometryError):
    precondition = "unbroken source path exists"


class IncompleteDecoration(TwoholError):
    module = "holonomy"
    precondition = "total decoration"


class DomainError(TwoholError):
    module = "holonomy"
    precondition = "boundary-only fixing"


class PathError(TwoholError):
    module = "holonomy"
    precondition = "edge path"


class InvalidParameter(TwoholError):
    module = "gauge"
    precondition = "valid gauge parameter"


class IncompleteDatum(TwoholError):
    module = "polyhedron"
    precondition = "gerbe datum defined on every triple"


class IncompatibleConfiguration(TwoholError):
    module = "polyhedron"
    precondition = "compatible gerbe domains"


class MoveInapplicable(TwoholError):
    module = "polyhedron"
    precondition = "move site matches local model"


class NotSimple(TwoholError):
    module = "polyhedron"
    precondition = "simple polyhedron strata"


class StackingError(TwoholError):
    module = "ribbon"
    precondition = "stackable boundaries"


class SummabilityError(TwoholError):
    module = "ribbon"
    precondition = "summable markings"


class ContractionError(TwoholError):
    module = "ribbon"
    precondition = "contractible edge"


class InconsistentGerbe(TwoholError):
    module = "wilson"
    precondition = "gerbe passes pentagon"


class SpaceMismatch(TwoholError):
    module = "wilson"
    precondition = "matching boundary spaces"


class ManifestError(TwoholError):
    module = "cli"
    precondition = "references resolve"
