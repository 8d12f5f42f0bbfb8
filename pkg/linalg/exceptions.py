class DimensionMismatch(ValueError):
    pass


class FieldError(Exception):
    pass
