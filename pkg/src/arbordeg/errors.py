"""Error classes shared across the library.

Invalid arguments raise plain ValueError.  The classes below mark the
remaining failure modes that callers (and the CLI exit-code mapping)
need to tell apart.
"""


class WorkLimitError(RuntimeError):
    """A configured work limit (degree cap, step budget, ...) was hit."""


class SearchExhaustedError(WorkLimitError):
    """A bounded search ended without finding the requested object.

    Carries the scanned range so the caller can tell a budget failure
    from a nonexistence claim (which this is not).
    """

    def __init__(self, message, scanned=None):
        super().__init__(message)
        self.scanned = scanned


class BadReductionError(ValueError):
    """Reduction mod p hit a coefficient with negative p-adic valuation."""

    def __init__(self, p, index, coefficient):
        super().__init__(
            f"coefficient {coefficient} of x^{index} has negative {p}-adic valuation"
        )
        self.p = p
        self.index = index
        self.coefficient = coefficient


class UnsupportedPolynomialError(ValueError):
    """The polynomial is outside the supported class (e.g. irrational critical points)."""


class FalsificationError(AssertionError):
    """A proved statement failed on concrete data.

    This always indicates an implementation bug (the statements checked
    are unconditional theorems), so it is kept distinct from invalid
    input.  `transcript` holds the full failing instance.
    """

    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = transcript or {}
