"""Backend classes by descriptor tag."""
from typing import Type

from frozendict import frozendict

from .structure import ExtriStructure
from .abelian import AbelianStructure
from .stable import StableStructure
from .table import TableStructure
from .subcategory import SubcategoryStructure
from .exceptions import StructureError

BACKENDS = frozendict({
    AbelianStructure.tag: AbelianStructure,
    StableStructure.tag: StableStructure,
    TableStructure.tag: TableStructure,
    SubcategoryStructure.tag: SubcategoryStructure,
})


def backend_class(tag: str) -> Type[ExtriStructure]:
    try:
        return BACKENDS[tag]
    except KeyError:
        raise StructureError("unknown backend {!r} (known: {})".format(tag, ', '.join(sorted(BACKENDS))))
