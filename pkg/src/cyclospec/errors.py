"""Exception hierarchy.

ComputationError covers everything a CLI run maps to exit status 2
(poles, violated hypotheses, out-of-range requests); UsageError maps
to exit status 1.
"""


class CyclospecError(Exception):
    pass


class UsageError(CyclospecError):
    """Bad command-line flags or flag combinations."""


class ComputationError(CyclospecError):
    """Base for errors raised during evaluation."""


class PoleError(ComputationError):
    """Evaluation requested at a pole."""


class DomainError(ComputationError):
    """Argument outside the supported domain."""


class RangeError(ComputationError):
    """Argument inside the domain but outside the supported range."""


class HypothesisError(ComputationError):
    """A character/parameter hypothesis of the operation is violated."""


class NoZeroFoundError(ComputationError):
    """No sign change found in the requested bracket."""


class DisconnectedGraphError(ComputationError):
    """Spectrum has more than one zero eigenvalue."""
