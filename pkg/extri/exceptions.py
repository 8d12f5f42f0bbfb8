class StructureError(Exception):
    pass


class RealizationError(StructureError):
    """An extension could not be realized by a conflation in the category."""
    pass


class MissingConeData(RealizationError):
    """A table backend was asked for a cone it has no data for."""
    pass


class NotExtensionClosed(RealizationError):
    """A realized middle term leaves the subcategory."""
    pass
