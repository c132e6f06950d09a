class DomainError(ValueError):
    """Raised when an input violates a physical or numerical precondition."""


class SweepValueError(DomainError):
    """A sweep axis value produced an invalid parameter set."""

    def __init__(self, axis: str, value, reason: str):
        self.axis = axis
        self.value = value
        self.reason = reason
        super().__init__(f"{axis} value {value!r} is invalid: {reason}")

    def __reduce__(self):
        return type(self), (self.axis, self.value, self.reason)
