class CategoryError(Exception):
    pass


class ShapeMismatch(CategoryError):
    pass


class NonLocalEndomorphisms(CategoryError):
    """An endomorphism algebra is not local, or its residue field is not k."""
    pass


class ParsingError(CategoryError):
    pass
