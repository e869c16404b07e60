class ParseError(ValueError):
    """Malformed input file; ``where`` names the line or field at fault."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class InvalidModel(ValueError):
    """Correlation structure that is not a valid Gaussian law."""
