"""Exception types shared across the package, mapped to CLI exit codes."""


class PreconditionError(ValueError):
    """The requested computation is not defined for the given input (exit code 2)."""


class InvariantError(RuntimeError):
    """Enumerated data violates a structural identity it must satisfy (exit code 3)."""


class NonGenericGammaError(PreconditionError):
    """The chosen one-parameter subgroup pairs to zero with a normal-bundle character."""
