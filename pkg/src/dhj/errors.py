"""Named error types raised by the library.

Every error carries a stable ``name`` used by the CLI and the HTTP service
when reporting failures, so callers can dispatch without parsing messages.
"""


class DhjError(Exception):
    name = "error"


class GraphParseError(DhjError):
    name = "parse-error"


class MalformedJsonError(GraphParseError):
    name = "malformed-json"


class NegativeDeltaError(GraphParseError):
    name = "negative-delta"


class NonpositivePrefactorError(GraphParseError):
    name = "nonpositive-prefactor"


class DuplicateEdgeError(GraphParseError):
    name = "duplicate-edge"


class SelfLoopError(GraphParseError):
    name = "self-loop"


class UnknownVertexError(GraphParseError):
    name = "unknown-vertex"


class NotStronglyConnectedError(DhjError):
    name = "not-strongly-connected"


class AssumptionViolatedError(DhjError):
    name = "assumption-violated"


class EmptySetError(DhjError):
    name = "empty-set"


class InvalidCycleIndexError(DhjError):
    name = "invalid-cycle-index"


class SizeCapExceededError(DhjError):
    name = "size-cap-exceeded"


class VertexMissingError(DhjError):
    name = "vertex-missing"


class InfeasibleLambdaError(DhjError):
    name = "infeasible-lambda"

    def __init__(self, i, j, slack):
        super().__init__(
            f"lambda[{i}] - lambda[{j}] exceeds d(C_{j}, C_{i}) by {slack}"
        )
        self.pair = (i, j)
        self.slack = slack


class NotConstantOnCycleError(DhjError):
    name = "not-constant-on-cycle"


class NonEdgeTransitionError(DhjError):
    name = "non-edge-transition"


class UnderflowRegimeError(DhjError):
    name = "underflow-regime"


class NonReversibleEdgeSetError(DhjError):
    name = "non-reversible-edge-set"


class GradientConditionError(DhjError):
    name = "gradient-condition-violated"
