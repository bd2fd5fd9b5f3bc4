"""Exception types raised across the package."""


class MorseSpikeError(Exception):
    """Base class for all errors raised by morsespike."""


class ValidationError(MorseSpikeError):
    """Input was well-formed but violates a structural requirement."""


class MissingFace(ValidationError):
    def __init__(self, simplex, face):
        super().__init__(f"simplex {list(simplex)} is missing its face {list(face)}")
        self.simplex = tuple(simplex)
        self.face = tuple(face)


class DuplicateVertex(ValidationError):
    pass


class DimensionOutOfRange(ValidationError):
    pass


class InvalidId(ValidationError, IndexError):
    pass


class NonMonotone(ValidationError):
    pass


class EmptyCloud(ValidationError):
    pass


class NonSymmetricMatrix(ValidationError):
    pass


class UnknownName(MorseSpikeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class InvalidPair(ValidationError):
    pass


class NotIncident(InvalidPair):
    pass


class CapExceeded(MorseSpikeError):
    def __init__(self, size, cap):
        super().__init__(f"complex has {size} simplices, exceeding the cap of {cap}")
        self.size = size
        self.cap = cap


class BudgetExhausted(MorseSpikeError):
    """The collapse search visited ``node_budget`` states without a verdict."""

    def __init__(self, states_visited, node_budget):
        super().__init__(
            f"search budget of {node_budget} states exhausted "
            f"({states_visited} distinct states visited)"
        )
        self.states_visited = states_visited
        self.node_budget = node_budget


class MismatchedInputs(MorseSpikeError):
    pass


class ParseError(MorseSpikeError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
