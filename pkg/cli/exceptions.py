from typing import Sequence, Union


class LoadError(Exception):
    """An input file could not be turned into a structure.

    ``location`` is the path of keys and indices into the JSON document
    where the problem was found (empty if it concerns the whole file).
    """

    def __init__(self, message: str, location: Sequence[Union[str, int]] = ()):
        self.location = tuple(location)
        if self.location:
            message = '{}: {}'.format('/'.join(str(part) for part in self.location), message)
        super().__init__(message)


class UsageError(Exception):
    pass
