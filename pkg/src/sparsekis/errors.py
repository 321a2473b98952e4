"""Shared exception types for solver resource guards."""


class ResourceLimit(RuntimeError):
    """Raised when a solver would exceed a configured size or memory cap.

    Carries enough context to report what blew up and at which limit.
    """

    def __init__(self, what: str, needed, cap) -> None:
        super().__init__(f"{what}: needed {needed}, cap {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap
