"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures to stable
process statuses: 1 for a negative verdict, 2 for bad input, 3 for budget
exhaustion.
"""


class UHJPError(Exception):
    exit_code = 2

    def to_json(self):
        return {"error": type(self).__name__, "message": str(self)}


class NotAGroup(UHJPError):
    REASONS = ("not-square", "not-closed", "no-identity", "not-associative", "missing-inverse")

    def __init__(self, reason, detail=""):
        assert reason in self.REASONS, reason
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)

    def to_json(self):
        return {**super().to_json(), "reason": self.reason}


class NotASubgroup(UHJPError):
    pass


class NotNormal(UHJPError):
    pass


class NotSolvable(UHJPError):
    pass


class InvalidSeries(UHJPError):
    pass


class InvalidAction(UHJPError):
    pass


class InvalidHomomorphism(UHJPError):
    pass


class IndexOutOfRange(UHJPError):
    pass


class AlphabetMismatch(UHJPError):
    pass


class InvalidWord(UHJPError):
    pass


class InvalidDegree(UHJPError):
    pass


class LengthMismatch(UHJPError):
    pass


class NotAValidSection(UHJPError):
    pass


class WellDefinednessViolation(UHJPError):
    exit_code = 1


class PreconditionViolated(UHJPError):
    pass


class NotFound(UHJPError):
    exit_code = 1


class WitnessError(UHJPError):
    """A returned word failed its own monochromaticity certificate."""

    exit_code = 1


class DegenerateSet(UHJPError):
    pass


class SizeLimitExceeded(UHJPError):
    exit_code = 3


class LengthBudget(UHJPError):
    """Dense materialization would exceed the configured symbol budget."""

    exit_code = 3


class OverflowBudget(UHJPError):
    exit_code = 3


class BudgetExceeded(UHJPError):
    exit_code = 3
