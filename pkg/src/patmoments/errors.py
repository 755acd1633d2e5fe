"""Error types shared across the package."""


class GuardrailError(RuntimeError):
    """A resource guardrail refused the computation (raise the limit to proceed)."""


class InternalCheckError(RuntimeError):
    """An exact internal consistency check failed; this signals a bug, not bad input."""
