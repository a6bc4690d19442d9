"""Exception hierarchy shared by every workbench module."""


class WorkbenchError(Exception):
    """Base class; the runner serializes these into the report."""


class ExhaustiveUnavailable(WorkbenchError):
    pass


class InvalidAdjacency(WorkbenchError):
    pass


class AtomCountOutOfRange(WorkbenchError):
    pass


class EmptyCandidate(WorkbenchError):
    pass


class NotAnAtom(WorkbenchError):
    pass


class TooLargeForBrute(WorkbenchError):
    pass


class BoundedTop(WorkbenchError):
    pass


class MalformedInterval(WorkbenchError):
    pass


class ModelMismatch(WorkbenchError):
    pass


class PreconditionViolated(WorkbenchError):
    pass


class CarrierEscape(WorkbenchError):
    pass


class NotATopology(WorkbenchError):
    def __init__(self, reason: str, witness=None):
        super().__init__(reason)
        self.witness = witness


class NotDense(WorkbenchError):
    pass


class NotOpen(WorkbenchError):
    pass


class NotDeltaIdeal(WorkbenchError):
    pass


class UnsupportedFamilyForModel(WorkbenchError):
    pass


class InfiniteCarrier(WorkbenchError):
    pass


class NotComposable(WorkbenchError):
    pass


class AxiomPreconditionFailed(WorkbenchError):
    pass


class NotContinuous(WorkbenchError):
    pass


class NoAdjoint(WorkbenchError):
    pass


class NotFinite(WorkbenchError):
    pass


class ParseError(WorkbenchError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnresolvedReference(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(f"unresolved reference: {name}")
        self.name = name
