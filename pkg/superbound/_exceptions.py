# coding: utf-8
class Error(Exception):
    pass


class GradingError(Error):
    pass


class ParityError(Error):
    pass


class SpaceError(Error):
    pass


class SingularPointError(Error):
    pass


class BoundaryError(Error):
    pass


class ConfigError(Error):
    """Invalid run configuration. `field` names the offending field."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__("{}: {}".format(field, message))
        self.field = field
