from .objects import FormalObject, BlockMorphism, as_object
from .category import FiniteLinearCategory
from .algebra import FiniteAlgebra
from .quiver import Quiver
from .validate import validate_category
from .report import Report, CheckResult, PASS, FAIL, SKIPPED, jsonable
from .exceptions import CategoryError, ShapeMismatch, NonLocalEndomorphisms, ParsingError
