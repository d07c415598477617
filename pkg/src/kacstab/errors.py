"""Exception hierarchy shared by all kacstab modules."""

from __future__ import annotations


class KacstabError(Exception):
    """Base class for every error raised by the library."""

    code = "error"

    def payload(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ParseError(KacstabError):
    code = "ParseError"


class ValidationError(KacstabError):
    code = "ValidationError"

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class InternalError(KacstabError):
    code = "InternalError"


class BudgetExceeded(KacstabError):
    code = "BudgetExceeded"


class BoundExceeded(KacstabError):
    code = "BoundExceeded"


class NotAStabilityFunction(KacstabError):
    code = "NotAStabilityFunction"

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Z(alpha_{index}) is not in the semiclosed upper half plane")


class ZeroCharge(KacstabError):
    code = "ZeroCharge"


class ZeroVector(KacstabError):
    code = "ZeroVector"


class NotBelow(KacstabError):
    code = "NotBelow"


class EmptySet(KacstabError):
    code = "EmptySet"


class NotUnit(KacstabError):
    code = "NotUnit"


class InconsistentType(KacstabError):
    code = "InconsistentType"


class NoGap(KacstabError):
    code = "NoGap"


class NotABasis(KacstabError):
    code = "NotABasis"


class WindowOverflow(NotABasis):
    code = "WindowOverflow"


class NotSinkOrSource(KacstabError):
    code = "NotSinkOrSource"


class NotARootResult(KacstabError):
    code = "NotARootResult"


class NoAdmissibleOrder(KacstabError):
    code = "NoAdmissibleOrder"
