"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a structural or numerical invariant."""


class SchemaError(ValidationError):
    """A JSON document does not match the expected schema."""


class DegenerateModelError(ValueError):
    """A model is too degenerate for gauge extraction to be well defined."""
