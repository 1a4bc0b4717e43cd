"""Exception hierarchy.

Every error carries a ``code`` (the name reported by the CLI) and a
``category`` which decides the process exit status: ``"input"`` maps to
exit 1, ``"numerical"`` to exit 2.
"""


class HQFTError(Exception):
    code = "HQFTError"
    category = "input"


class NumericalError(HQFTError):
    category = "numerical"


# group
class NonPositiveOrder(HQFTError, ValueError):
    code = "NonPositiveOrder"


class GroupMismatch(HQFTError, ValueError):
    code = "GroupMismatch"


# frobenius
class DimensionMismatch(HQFTError, ValueError):
    code = "DimensionMismatch"


class NotAssociative(HQFTError, ValueError):
    code = "NotAssociative"


class BadUnit(HQFTError, ValueError):
    code = "BadUnit"


class SingularMetric(NumericalError, ValueError):
    code = "SingularMetric"


class ActionError(HQFTError, ValueError):
    """Base for rejected generator images; ``generator`` is the offending index."""

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class NotCentral(ActionError):
    code = "NotCentral"


class NotInvertible(ActionError):
    code = "NotInvertible"


class OrderViolation(ActionError):
    code = "OrderViolation"


# surface
class OpenSlot(HQFTError, ValueError):
    code = "OpenSlot"


class DuplicateSlot(HQFTError, ValueError):
    code = "DuplicateSlot"


class NonOrientableGluing(HQFTError, ValueError):
    code = "NonOrientableGluing"


class Disconnected(HQFTError, ValueError):
    code = "Disconnected"


class OddChi(HQFTError, ArithmeticError):
    code = "OddChi"


class NotAdjacent(HQFTError, ValueError):
    code = "NotAdjacent"


class SelfGluing(HQFTError, ValueError):
    code = "SelfGluing"


class MultiSharedEdge(HQFTError, ValueError):
    code = "MultiSharedEdge"


class BadVertex(HQFTError, ValueError):
    code = "BadVertex"


# statesum
class PlanOverflow(NumericalError, MemoryError):
    code = "PlanOverflow"


class TooLarge(NumericalError, ValueError):
    code = "TooLarge"


# cobordlang
class CobordSyntaxError(HQFTError, ValueError):
    code = "SyntaxError"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownGenerator(HQFTError, ValueError):
    code = "UnknownGenerator"


class TypeMismatch(HQFTError, TypeError):
    code = "TypeMismatch"


class NegativeGenus(HQFTError, ValueError):
    code = "NegativeGenus"
