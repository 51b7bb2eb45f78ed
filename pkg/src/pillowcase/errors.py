"""Exception hierarchy.

Split by how the CLI reports them: ``DomainError`` covers invalid values and
invariant violations (exit code 3), ``AlgorithmError`` covers iteration caps and
oracle disagreements (exit code 4). Parse and I/O failures are ordinary
``ValueError``/``OSError`` and are mapped at the CLI boundary.
"""


class DomainError(ValueError):
    """A value violates a documented invariant; message names the invariant."""


class DegenerateTriangle(DomainError):
    pass


class DegenerateInput(DomainError):
    pass


class DegenerateOutput(DomainError):
    pass


class MarkNotInterior(DomainError):
    pass


class AmbiguousStatus(DomainError):
    """Two angle-pair sums sit inside the pi-equality band at once."""


class InvalidTriangulation(DomainError):
    pass


class UnsupportedPair(DomainError):
    pass


class NonConvexQuad(DomainError):
    pass


class SelfGluedEdge(DomainError):
    pass


class NotDelaunayInput(DomainError):
    pass


class NegativeDeterminant(DomainError):
    pass


class TraceBelowTwo(DomainError):
    pass


class NonPositiveLambda(DomainError):
    pass


class BelowFour(DomainError):
    pass


class TableMismatch(DomainError):
    """Enumerated inverse solutions do not fit the 8-triple family pattern."""


class AlgorithmError(RuntimeError):
    pass


class StepLimitExceeded(AlgorithmError):
    pass


class OracleDisagreement(AlgorithmError):
    """The two normalization routes produced inequivalent surfaces."""
