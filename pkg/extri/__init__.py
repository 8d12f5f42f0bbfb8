from .caps import Caps
from .triangle import ETriangle
from .structure import ExtriStructure, StructureFlags, SquareData, LONG_EXACT_POSITIONS
from .abelian import AbelianStructure, unique_names
from .triangulated import TriangulatedStructure, Cone
from .stable import StableStructure, Envelope, envelope
from .table import TableStructure
from .subcategory import SubcategoryStructure
from .factory import BACKENDS, backend_class
from .exceptions import StructureError, RealizationError, MissingConeData, NotExtensionClosed
