"""Exception types shared across the package.

Every domain error carries a short machine-readable ``code`` which the CLI
reports verbatim.
"""


class RatDerivError(Exception):
    code = "error"

    def __init__(self, message=None, witness=None):
        super().__init__(message or self.default_message)
        self.witness = witness

    default_message = "error"


class PoleError(RatDerivError, ZeroDivisionError):
    code = "pole"
    default_message = "pole: evaluation point is a root of the denominator"


class InvalidParameters(RatDerivError, ValueError):
    """Dummy parameters make some denominator vanish, or break the s/s_i rules.

    ``witness`` is the first offending index tuple when one exists.
    """

    code = "invalid_parameters"
    default_message = "invalid parameters"


class NOutOfRange(RatDerivError, ValueError):
    code = "n_below_admissible_range"
    default_message = "N below admissible range"


class FormulaInadmissible(RatDerivError, ValueError):
    code = "formula_ii_inadmissible"
    default_message = "formula II inadmissible: sum of n_m plus t must be at least 1"


class RootsMismatch(RatDerivError, ValueError):
    code = "roots_mismatch"
    default_message = "roots do not expand to q"


class ParseError(RatDerivError, ValueError):
    code = "parse_error"
    default_message = "parse error"

    def __init__(self, message=None, position=None):
        if position is not None and message:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
