"""Input descriptors.

A descriptor has the top-level keys ``backend``, ``payload`` and optionally
``field`` (default F101), ``pair`` and ``caps``. The payload is validated against
the model registered for the backend tag in :py:data:`PAYLOADS`.
Scalars are integers or fraction strings such as ``"1/2"``.
"""
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from frozendict import frozendict
from pydantic import BaseModel, ConfigDict, Field, StrictInt, model_validator

DEFAULT_PRIME = 101

Scalar = Union[StrictInt, str]
Vector = List[Scalar]
Blocks = List[List[Vector]]


class Strict(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)


class FieldSpec(Strict):
    """``{"prime": p}`` or ``{"rationals": true}``."""

    prime: Optional[int] = Field(default=None, ge=2)
    rationals: bool = False

    @model_validator(mode='after')
    def _one_field(self) -> 'FieldSpec':
        if (self.prime is None) == (not self.rationals):
            raise ValueError('give exactly one of "prime" and "rationals"')
        return self

    def as_dict(self) -> dict:
        return {'prime': self.prime} if self.prime is not None else {'rationals': True}


class AlgebraSpec(Strict):
    """An algebra by structure constants.

    ``products`` lists triples ``[i, j, coefficients]`` giving the
    coordinates of ``b_i · b_j``; missing products are zero.
    ``idempotents`` names a complete set of primitive orthogonal
    idempotents, which become the objects (default: the unit alone,
    named ``A``).
    """

    basis: List[str] = Field(min_length=1)
    unit: Vector
    products: List[Tuple[int, int, Vector]] = []
    idempotents: Optional[Dict[str, Vector]] = None


class QuiverSpec(Strict):
    """A bound quiver; relations are lists of ``[coefficient, path]``."""

    vertices: List[str] = Field(min_length=1)
    arrows: List[Tuple[str, str, str]] = []
    relations: List[List[Tuple[Scalar, List[str]]]] = []
    bound: int = Field(default=2, ge=0)


class CategorySpec(Strict):
    """A finite linear category by hom dimensions and composition tensors.

    ``composition`` entries are ``[X, Y, Z, tensor]`` with the tensor of
    shape (dim Hom(Y,Z), dim Hom(X,Y), dim Hom(X,Z)); missing triples
    compose to zero.
    """

    objects: List[str] = Field(min_length=1)
    homs: List[Tuple[str, str, int]] = []
    composition: List[Tuple[str, str, str, List[List[Vector]]]] = []
    identities: Dict[str, Vector]


class Source(Strict):
    """Exactly one description of the underlying category."""

    algebra: Optional[AlgebraSpec] = None
    quiver: Optional[QuiverSpec] = None
    category: Optional[CategorySpec] = None

    @model_validator(mode='after')
    def _one_source(self) -> 'Source':
        given = [name for name in ('algebra', 'quiver', 'category') if getattr(self, name) is not None]
        if len(given) != 1:
            raise ValueError('give exactly one of "algebra", "quiver" and "category", got {}'.format(given or 'none'))
        return self


class ModulePayload(Source):
    """mod of the category (abelian) or its stable category (stable)."""

    max_dim: int = Field(default=4, ge=1)


class ParentSpec(Strict):
    backend: Literal['abelian', 'stable', 'table', 'subcategory']
    payload: Dict[str, Any]


class SubcategoryPayload(Strict):
    """An extension-closed subcategory, by labels or ``"projectives"``."""

    parent: ParentSpec
    objects: Union[Literal['projectives'], List[str]]


class ConeSpec(Strict):
    """The triangle X -f-> Y -u-> C -w-> X[1] of a basis morphism f."""

    morphism: Tuple[str, str, int]
    cone: List[str] = []
    u: Blocks = []
    w: Blocks = []


class TablePayload(Strict):
    category: CategorySpec
    shift: Dict[str, str]
    cones: List[ConeSpec] = []
    shift_matrices: List[Tuple[str, str, List[Vector]]] = []


class PairSpec(Strict):
    """A cotorsion pair by its indecomposables.

    ``heart_hom_dims`` overrides entries of the heart hom table that
    verify-theorem-b certifies; by default the computed table is used.
    """

    u: List[str] = []
    v: List[str] = []
    heart_hom_dims: List[Tuple[str, str, int]] = []


class InputDescriptor(Strict):
    field: FieldSpec = FieldSpec(prime=DEFAULT_PRIME)
    backend: Literal['abelian', 'stable', 'table', 'subcategory']
    payload: Dict[str, Any]
    pair: Optional[PairSpec] = None
    caps: Dict[str, int] = {}


PAYLOADS = frozendict({
    'abelian': ModulePayload,
    'stable': ModulePayload,
    'subcategory': SubcategoryPayload,
    'table': TablePayload,
})
