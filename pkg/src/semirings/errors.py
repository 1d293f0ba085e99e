class UsageError(ValueError):
    """Malformed input: bad order, mismatched table sizes, invalid entries."""


class CapabilityError(RuntimeError):
    """The requested census is outside what this engine can compute."""
