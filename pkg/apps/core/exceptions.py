from __future__ import annotations


class AnalysisError(ValueError):
    """Base class for every invalid-input condition raised by the analysis apps."""


class InvalidSeriesError(AnalysisError):
    pass


class ParameterError(AnalysisError):
    pass


class IntegrationDivergenceError(AnalysisError):
    def __init__(self, step: int) -> None:
        self.step = step
        super().__init__(f"Integration diverged: non-finite state at step {step}.")


class DegenerateVarianceError(AnalysisError):
    pass


class SeriesLengthError(AnalysisError):
    def __init__(self, message: str, *, required: int, actual: int) -> None:
        self.required = required
        self.actual = actual
        super().__init__(f"{message} (requires at least {required} samples, got {actual}).")


class WindowBoundsError(AnalysisError):
    def __init__(self, *, offset: int, length: int, available: int) -> None:
        self.offset = offset
        self.length = length
        self.available = available
        super().__init__(
            f"Window [{offset}, {offset + length}) does not fit a series of {available} samples."
        )


class NoPlateauError(AnalysisError):
    pass


class UndefinedRatioError(AnalysisError):
    pass


class RecordingParseError(AnalysisError):
    def __init__(self, message: str, *, line: int | None = None, column: str | None = None) -> None:
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class ConfigurationError(AnalysisError):
    pass
