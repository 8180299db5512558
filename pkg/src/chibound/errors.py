"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller violated a documented precondition or supplied malformed data."""


class ParseError(InputError):
    """Malformed textual graph input; carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int = -1):
        super().__init__(message if offset < 0 else f"{message} (at byte {offset})")
        self.offset = offset


class ResourceBudgetError(RuntimeError):
    """An exact search exceeded its configured work budget.

    Raised instead of ever returning an approximate or unproven answer.
    """


class LemmaError(RuntimeError):
    """A constructive lemma could not complete despite its preconditions.

    Signals either a degenerate boundary instance or preconditions that were
    asserted by the caller but do not actually hold.
    """
