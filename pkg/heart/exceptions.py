class CotorsionError(Exception):
    """Input that cannot describe a cotorsion pair of the backend."""
    pass


class SearchExhausted(Exception):
    """A witness search ran out of candidates within the caps.

    This is not a mathematical failure: larger caps may still find one.
    """
    pass


class ReflectionNotFound(SearchExhausted):
    """No (co)reflection triangle was found within the caps."""
    pass
