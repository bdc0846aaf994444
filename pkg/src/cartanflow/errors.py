"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """Input violates a documented precondition (shape, definiteness, range)."""


class NotPositiveDefiniteError(InvalidArgumentError):
    """Matrix failed the positive definiteness test."""


class NumericalFailure(ArithmeticError):
    """An iterative kernel hit its iteration or pivot cap."""


class ConvergenceError(NumericalFailure):
    """Barycenter iteration stopped at ``max_iter`` above tolerance."""

    def __init__(self, report, context: str = ""):
        self.report = report
        msg = (
            f"barycenter solver did not converge after {report.iterations} iterations "
            f"(residual {report.residual_norm:.3e})"
        )
        super().__init__(f"{msg}: {context}" if context else msg)
