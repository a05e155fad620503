"""Exception types shared across the package."""


class MatroidError(Exception):
    """Base class for all matroidc errors."""


class EmptyBases(MatroidError):
    pass


class BadPopcount(MatroidError):
    pass


class BitOutOfRange(MatroidError):
    pass


class ExchangeViolation(MatroidError):
    """Basis exchange failed; carries a witness triple (S, T, x) as masks/element."""

    def __init__(self, s_mask, t_mask, x, line=None):
        self.s_mask = s_mask
        self.t_mask = t_mask
        self.x = x
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(
            f"basis exchange fails for S={s_mask:#x}, T={t_mask:#x}, x={x}{where}"
        )


class InvalidRank(MatroidError):
    pass


class InvalidGenus(MatroidError):
    pass


class RaggedMatrix(MatroidError):
    pass


class ElementOutOfRange(MatroidError):
    pass


class DegreeTooLarge(MatroidError):
    pass


class SourceIncomplete(MatroidError):
    pass


class ParseError(MatroidError):
    def __init__(self, message, line=None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


class InvalidSpec(MatroidError):
    pass


class PropertyNotDualityStable(MatroidError):
    pass


class MixedDegree(MatroidError):
    pass
