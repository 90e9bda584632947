"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid parameters, or operands that live in different structures."""


class ParseError(ValueError):
    """Malformed element literal; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class VerificationError(RuntimeError):
    """An internal solver or construction produced an inconsistent result."""


class ConstructionError(VerificationError):
    """Generator images violate the defining relations of the source algebra."""
