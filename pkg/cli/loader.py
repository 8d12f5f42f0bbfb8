"""Reading descriptor files into validated structures.

JSON is the canonical input format; ``.toml`` files are read as a mirror
of the same schema. Every problem is reported as a :py:class:`LoadError`
naming its location in the document.
"""
from typing import Any, Dict, List, Optional, Sequence, Tuple

import hashlib
import json
import logging
import os

from dataclasses import dataclass, field as dataclass_field

import numpy as np
from pydantic import ValidationError

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from linalg import Field, FieldError, DimensionMismatch, field_from_spec, field_from_option
from category import (FiniteLinearCategory, FiniteAlgebra, Quiver, FormalObject, Report,
                      CategoryError, validate_category)
from functors import ModuleError
from extri import (Caps, ExtriStructure, AbelianStructure, StableStructure, TableStructure,
                   SubcategoryStructure, StructureError, MissingConeData)
from defects import projectives
from heart import CotorsionPair, CotorsionError
from .descriptor import InputDescriptor, PairSpec, Source, CategorySpec, AlgebraSpec, PAYLOADS
from .exceptions import LoadError

logger = logging.getLogger(__name__)

Location = Tuple[Any, ...]

BUILD_ERRORS = (CategoryError, StructureError, FieldError, DimensionMismatch, ModuleError)


@dataclass
class Loaded:
    """A descriptor file turned into structures.

    ``structure`` is None when the input category fails validation; the
    ``validate`` command reports this, every other command refuses to
    run (see :py:meth:`require_structure`).
    """

    path: Optional[str]
    digest: str
    descriptor: InputDescriptor
    field: Field
    caps: Caps
    category: FiniteLinearCategory
    validation: Report
    structure: Optional[ExtriStructure] = None
    pair: Optional[CotorsionPair] = None
    heart_hom_dims: Dict[Tuple[str, str], int] = dataclass_field(default_factory=dict)

    def require_structure(self) -> ExtriStructure:
        if self.structure is None:
            failed = ', '.join(r.name for r in self.validation.failures())
            raise LoadError("the category fails validation ({}); run validate for the witnesses".format(failed))
        return self.structure

    def require_pair(self) -> CotorsionPair:
        self.require_structure()
        if self.pair is None:
            raise LoadError("this command needs a cotorsion pair (input key 'pair' or --pair)", ('pair',))
        return self.pair


# ------------ Public interface ----------------

def read_document(path: str) -> dict:
    """Parse a JSON or TOML descriptor file."""
    try:
        with open(path, 'rb') as file:
            raw = file.read()
    except OSError as error:
        raise LoadError("cannot read {}: {}".format(path, error.strerror))
    try:
        if os.path.splitext(path)[1].lower() == '.toml':
            document = tomllib.loads(raw.decode('utf-8'))
        else:
            document = json.loads(raw.decode('utf-8'))
    except (ValueError, UnicodeDecodeError) as error:
        raise LoadError("{} does not parse: {}".format(path, error))
    if not isinstance(document, dict):
        raise LoadError("the top level of {} must be an object".format(path))
    return document


def digest(document: dict) -> str:
    """sha256 of the canonical JSON form, so a TOML mirror digests like its JSON original."""
    canonical = json.dumps(document, sort_keys=True, separators=(',', ':'), ensure_ascii=False)
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def parse_descriptor(document: dict) -> InputDescriptor:
    descriptor = _validated(InputDescriptor, document, ())
    _validated(PAYLOADS[descriptor.backend], descriptor.payload, ('payload',))
    return descriptor


def load(path: str, field: str = None, caps: str = None, seed: int = None,
         pair: PairSpec = None) -> Loaded:
    """Load a descriptor file, applying command line overrides."""
    return load_document(read_document(path), path, field, caps, seed, pair)


def load_document(document: dict, path: str = None, field: str = None, caps: str = None,
                  seed: int = None, pair: PairSpec = None) -> Loaded:
    descriptor = parse_descriptor(document)
    try:
        k = field_from_option(field) if field else field_from_spec(descriptor.field.as_dict())
    except FieldError as error:
        raise LoadError(str(error), () if field else ('field',))
    limits = _caps(descriptor, caps, seed)
    structure, category, validation = build_structure(descriptor.backend, descriptor.payload, k, limits,
                                                      ('payload',))
    loaded = Loaded(path, digest(document), descriptor, k, limits, category, validation, structure)
    spec = pair or descriptor.pair
    if spec is not None and structure is not None:
        location = () if pair else ('pair',)
        for key, labels in (('u', spec.u), ('v', spec.v)):
            for i, label in enumerate(labels):
                _known(label, structure.labels, location + (key, i))
        try:
            loaded.pair = CotorsionPair(structure, tuple(spec.u), tuple(spec.v))
        except CotorsionError as error:
            raise LoadError(str(error), location)
        loaded.heart_hom_dims = {(x, y): d for x, y, d in spec.heart_hom_dims}
    logger.info("loaded %s: %s backend on %s", path or 'document', descriptor.backend,
                list(structure.labels) if structure is not None else 'an invalid category')
    return loaded


def build_structure(backend: str, payload: Dict[str, Any], field: Field, caps: Caps,
                    location: Location) -> Tuple[Optional[ExtriStructure], FiniteLinearCategory, Report]:
    """The backend for a payload, its input category and that category's validation report."""
    spec = _validated(PAYLOADS[backend], payload, location)
    if backend == 'subcategory':
        return _subcategory(spec, field, caps, location)
    if backend == 'table':
        category = build_category(spec.category, field, location + ('category',))
    else:
        category = build_category(spec, field, location)
    validation = validate_category(category)
    if not validation.passed:
        logger.warning("input category fails validation: %s", validation.statuses())
        return None, category, validation
    try:
        if backend == 'abelian':
            structure = AbelianStructure.from_algebra(category, spec.max_dim, rng=caps.rng('abelian'))
        elif backend == 'stable':
            structure = StableStructure.from_algebra(category, spec.max_dim, rng=caps.rng('stable'))
        else:
            structure = _table(spec, category, location)
    except BUILD_ERRORS as error:
        raise LoadError(str(error), location)
    return structure, category, validation


def build_category(spec, field: Field, location: Location) -> FiniteLinearCategory:
    """The finite linear category of an algebra, quiver or category payload."""
    if isinstance(spec, CategorySpec):
        return _explicit_category(spec, field, location)
    source: Source = spec
    if source.algebra is not None:
        return _algebra_category(source.algebra, field, location + ('algebra',))
    if source.quiver is not None:
        q = source.quiver
        try:
            quiver = Quiver(q.vertices, [tuple(a) for a in q.arrows], q.relations, q.bound)
            return quiver.vertex_category(field)
        except BUILD_ERRORS as error:
            raise LoadError(str(error), location + ('quiver',))
    return _explicit_category(source.category, field, location + ('category',))


# ------------------- private helpers -------------------

def _validated(model, document, location: Location):
    try:
        return model.model_validate(document)
    except ValidationError as error:
        first = error.errors()[0]
        raise LoadError(first['msg'], location + tuple(first['loc']))


def _known(label: str, labels: Sequence[str], location: Location) -> None:
    if label not in labels:
        raise LoadError("unknown object label {!r} (known: {})".format(label, ', '.join(labels)), location)


def _caps(descriptor: InputDescriptor, option: Optional[str], seed: Optional[int]) -> Caps:
    try:
        caps = Caps().updated(descriptor.caps)
    except StructureError as error:
        raise LoadError(str(error), ('caps',))
    try:
        caps = Caps.parse(option or '', caps)
        if seed is not None:
            caps = caps.updated({'seed': seed})
    except StructureError as error:
        raise LoadError(str(error))
    return caps


def _algebra_category(spec: AlgebraSpec, field: Field, location: Location) -> FiniteLinearCategory:
    n = len(spec.basis)
    structure = np.zeros((n, n, n), dtype=field.dtype)
    for k, (i, j, coefficients) in enumerate(spec.products):
        if not (0 <= i < n and 0 <= j < n):
            raise LoadError("basis index out of range in product [{}, {}]".format(i, j), location + ('products', k))
        if len(coefficients) != n:
            raise LoadError("product has {} coordinates, expected {}".format(len(coefficients), n),
                            location + ('products', k))
        structure[i, j, :] = field.vector(coefficients)
    if len(spec.unit) != n:
        raise LoadError("unit has {} coordinates, expected {}".format(len(spec.unit), n), location + ('unit',))
    algebra = FiniteAlgebra(field, spec.basis, structure, field.vector(spec.unit))
    labels, idempotents = ['A'], None
    if spec.idempotents is not None:
        labels = list(spec.idempotents)
        idempotents = []
        for label, vector in spec.idempotents.items():
            if len(vector) != n:
                raise LoadError("idempotent has {} coordinates, expected {}".format(len(vector), n),
                                location + ('idempotents', label))
            idempotents.append(field.vector(vector))
    try:
        return algebra.vertex_category(idempotents, labels)
    except BUILD_ERRORS as error:
        raise LoadError(str(error), location + ('idempotents',))


def _explicit_category(spec: CategorySpec, field: Field, location: Location) -> FiniteLinearCategory:
    labels = spec.objects
    if len(set(labels)) != len(labels):
        raise LoadError("duplicate object labels", location + ('objects',))
    hom_dims = {}
    for k, (x, y, d) in enumerate(spec.homs):
        _known(x, labels, location + ('homs', k, 0))
        _known(y, labels, location + ('homs', k, 1))
        hom_dims[x, y] = d
    composition = {}
    for k, (x, y, z, tensor) in enumerate(spec.composition):
        for position, label in enumerate((x, y, z)):
            _known(label, labels, location + ('composition', k, position))
        shape = (hom_dims.get((y, z), 0), hom_dims.get((x, y), 0), hom_dims.get((x, z), 0))
        flat = [s for row in tensor for vector in row for s in vector]
        if len(flat) != shape[0] * shape[1] * shape[2]:
            raise LoadError("tensor of {},{},{} has {} entries, expected shape {}".format(x, y, z, len(flat), shape),
                            location + ('composition', k, 3))
        composition[x, y, z] = field.vector(flat).reshape(shape)
    for x, y, z in ((x, y, z) for x in labels for y in labels for z in labels):
        if (x, y, z) not in composition:
            shape = (hom_dims.get((y, z), 0), hom_dims.get((x, y), 0), hom_dims.get((x, z), 0))
            composition[x, y, z] = np.zeros(shape, dtype=field.dtype)
    identities = {}
    for x, vector in spec.identities.items():
        _known(x, labels, location + ('identities', x))
        identities[x] = field.vector(vector)
    try:
        return FiniteLinearCategory(field, labels, hom_dims, composition, identities)
    except BUILD_ERRORS as error:
        raise LoadError(str(error), location)


def _table(spec, category: FiniteLinearCategory, location: Location) -> TableStructure:
    field = category.field
    labels = category.labels
    for x, y in spec.shift.items():
        _known(x, labels, location + ('shift', x))
        _known(y, labels, location + ('shift', x))
    cones = {}
    for k, cone in enumerate(spec.cones):
        here = location + ('cones', k)
        x, y, index = cone.morphism
        _known(x, labels, here + ('morphism', 0))
        _known(y, labels, here + ('morphism', 1))
        for i, label in enumerate(cone.cone):
            _known(label, labels, here + ('cone', i))
        c = FormalObject(cone.cone)
        shifted = FormalObject((spec.shift.get(x, x),))
        try:
            if c.is_zero:
                u, w = category.zero(y, c), category.zero(c, shifted)
            else:
                u = category.morphism(y, c, cone.u)
                w = category.morphism(c, shifted, cone.w)
        except BUILD_ERRORS as error:
            raise LoadError(str(error), here)
        cones[x, y, index] = (c, u, w)
    matrices = {(x, y): field.matrix(m) for x, y, m in spec.shift_matrices}
    try:
        return TableStructure(category, spec.shift, cones, matrices)
    except MissingConeData as error:
        raise LoadError(str(error), location + ('cones',))


def _subcategory(spec, field: Field, caps: Caps, location: Location):
    parent, category, validation = build_structure(spec.parent.backend, spec.parent.payload, field, caps,
                                                   location + ('parent', 'payload'))
    if parent is None:
        return None, category, validation
    if spec.objects == 'projectives':
        labels: List[str] = list(projectives(parent))
    else:
        labels = list(spec.objects)
        for i, label in enumerate(labels):
            _known(label, parent.labels, location + ('objects', i))
    try:
        return SubcategoryStructure(parent, labels), category, validation
    except BUILD_ERRORS as error:
        raise LoadError(str(error), location + ('objects',))
