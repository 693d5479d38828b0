"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the documented domain."""


class StructureError(ValueError):
    """Input graph does not have the required structure (e.g. not a tree)."""


class ConstraintError(ValueError):
    """Input violates a side constraint such as a prescribed independent set."""
