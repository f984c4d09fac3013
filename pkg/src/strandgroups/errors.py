"""Exception hierarchy shared by all modules.

Every error raised on bad *domain* input derives from :class:`StrandGroupError`,
which the CLI maps to exit code 1.
"""


class StrandGroupError(ValueError):
    """Base class for domain errors."""

    kind = "error"

    def to_dict(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class UnsupportedFamilyError(StrandGroupError):
    kind = "unsupported_family"


class WordSyntaxError(StrandGroupError):
    kind = "syntax"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["offset"] = self.offset
        return d


class GeneratorIndexError(StrandGroupError):
    kind = "index_out_of_range"


class GeometryError(StrandGroupError):
    kind = "geometry"


class PresentationMismatchError(StrandGroupError):
    kind = "presentation_mismatch"


class BallCapExceeded(StrandGroupError):
    kind = "element_cap_exceeded"


class TrajectoryError(StrandGroupError):
    kind = "trajectory"


class DegenerateTangencyError(TrajectoryError):
    kind = "degenerate_tangency_interval"


class EndpointMismatchError(TrajectoryError):
    kind = "endpoint_mismatch"


class PolicyViolationError(TrajectoryError):
    kind = "policy_violation"

    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0]
        super().__init__(
            f"{len(self.violations)} policy violation(s); first: {first.describe()}"
        )

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["violations"] = [v.to_dict() for v in self.violations]
        return d


class RenderError(StrandGroupError):
    kind = "render"
