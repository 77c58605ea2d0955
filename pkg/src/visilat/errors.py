"""Shared exception types."""


class FieldError(ValueError):
    """Rejected field construction (bad d, reducible minimal polynomial...)."""


class CapExceeded(ValueError):
    """A computation was refused because its state space exceeds a cap.

    ``estimate`` carries the estimated size that tripped the cap.
    """

    def __init__(self, message: str, estimate: int):
        super().__init__(f"{message} (estimated size {estimate})")
        self.estimate = estimate


class ConfigError(ValueError):
    """Invalid experiment configuration."""
