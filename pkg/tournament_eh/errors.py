class TournamentEHError(Exception):
    """Base class for every error raised by this package."""


class SizeOutOfRange(TournamentEHError):
    ...


class ReflexivePair(TournamentEHError):
    ...


class AsymmetryViolation(TournamentEHError):
    ...


class NumberingSizeMismatch(TournamentEHError):
    ...


class InvalidGraph(TournamentEHError):
    ...


class InvalidWalk(TournamentEHError):
    ...


class UnknownName(TournamentEHError):
    ...


class CatalogMismatch(TournamentEHError):
    """A drawn catalog entry disagrees with its formula."""


class TooLarge(TournamentEHError):
    ...


class TooLargeForExactCanonicalization(TooLarge):
    ...


class NotAPurePair(TournamentEHError):
    ...


class NotAComponent(TournamentEHError):
    ...


class BudgetExhausted(TournamentEHError):
    ...


class VertexNotInBlockade(TournamentEHError):
    ...


class InvalidBlockade(TournamentEHError):
    ...


class SearchFailed(TournamentEHError):
    ...


class RetryLimitExceeded(TournamentEHError):
    ...


class VerificationFailed(TournamentEHError):
    def __init__(self, message: str, *, failed: list[str]) -> None:
        super().__init__(message)
        self.failed = failed


class InvalidParameters(TournamentEHError):
    ...


class UnknownSuite(TournamentEHError):
    ...


class UnsupportedFormat(TournamentEHError):
    ...


class ParseError(TournamentEHError):
    ...
