class PancakeLabError(Exception):
    pass


class DomainError(PancakeLabError, ValueError):
    """An argument lies outside the domain of the operation (bad index, mismatched n, not a permutation)."""


class ScaleRefusal(PancakeLabError):
    """The requested computation exceeds a stated bound; the message names the operation and the bound."""

    def __init__(self, operation, bound, requested):
        self.operation = operation
        self.bound = bound
        self.requested = requested
        super().__init__(f'{operation} refused: {requested} exceeds the bound {bound}')


class TheoremViolation(PancakeLabError):
    def __init__(self, failures):
        self.failures = failures
        super().__init__(f'{len(failures)} check(s) disagree with the expected outcome: {", ".join(failures)}')
