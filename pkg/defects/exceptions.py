class SerreError(Exception):
    """A set of objects does not describe the Serre subcategory asked for."""
    pass
