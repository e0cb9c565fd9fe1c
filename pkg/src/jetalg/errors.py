"""Error types shared across the package."""


class ConsistencyError(RuntimeError):
    """A theorem-backed guarantee failed; indicates a bug or violated hypothesis."""
