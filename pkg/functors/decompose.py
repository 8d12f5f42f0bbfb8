"""Krull-Schmidt decomposition of modules.

Indecomposable summands are split off by Fitting's lemma: for an
endomorphism φ with eigenvalue λ, M = ker (φ-λ)^N ⊕ im (φ-λ)^N. A module
none of whose sampled endomorphisms splits it is certified local by
checking that the non-invertible endomorphisms form a nilpotent ideal of
codimension one.
"""
from typing import List, Optional, Tuple

import itertools
import logging

from dataclasses import dataclass

import numpy as np

from .module import FpModule, ModuleMap, identity_map
from .homological import HomSpace, kernel, image
from .exceptions import DecompositionError, NonSplitResidueField

logger = logging.getLogger(__name__)

RANDOM_CANDIDATES = 20


@dataclass(frozen=True, eq=False)
class Summand:
    """An indecomposable direct summand with its split inclusion and projection."""

    module: FpModule
    inclusion: ModuleMap
    projection: ModuleMap


def decompose(module: FpModule, rng: np.random.Generator = None) -> List[Summand]:
    """Decompose a module into indecomposables.

    Parameters
    ----------
    module
        The module to decompose.
    rng
        Source of random endomorphisms tried after the basis and its
        pairwise sums. Seeded deterministically if omitted.

    Returns
    -------
    The summands, each with inclusion into and projection from `module`;
    their inclusions add up to an isomorphism. The zero module has no
    summands.

    Raises
    ------
    NonSplitResidueField
        If some endomorphism has eigenvalues outside the field.
    DecompositionError
        If no splitting endomorphism was found although the module is
        not local.
    """
    if module.is_zero():
        return []
    if rng is None:
        rng = np.random.default_rng(0)
    split = _split(module, rng)
    if split is None:
        return [Summand(module, identity_map(module), identity_map(module))]
    result = []
    for part, inclusion, projection in split:
        for summand in decompose(part, rng):
            result.append(Summand(summand.module, inclusion @ summand.inclusion,
                                  summand.projection @ projection))
    return result


def is_indecomposable(module: FpModule) -> bool:
    return not module.is_zero() and _split(module, np.random.default_rng(0)) is None


def endomorphism_residue(module: FpModule) -> Tuple[HomSpace, np.ndarray]:
    """The residue map End(M) -> k of a local module, on the basis of End(M).

    Raises
    ------
    DecompositionError
        If End(M) is not local.
    """
    ends = HomSpace(module, module)
    residue = _local_residue(module, ends)
    if residue is None:
        raise DecompositionError("End({}) is not local".format(module))
    return ends, residue


def isomorphism(source: FpModule, target: FpModule) -> Optional[ModuleMap]:
    """An isomorphism between two indecomposable modules, or None.

    Maps between indecomposables that are not isomorphisms form a
    subspace, so some basis map is an isomorphism if any map is.
    """
    if source.dim_vector != target.dim_vector:
        return None
    for alpha in HomSpace(source, target).basis:
        if alpha.is_isomorphism():
            return alpha
    return None


def find_isomorphism(source: FpModule, target: FpModule,
                     rng: np.random.Generator = None) -> Optional[ModuleMap]:
    """An isomorphism between arbitrary modules, or None.

    Summands are matched greedily, which is complete by Krull-Schmidt.
    """
    if source.dim_vector != target.dim_vector:
        return None
    left, right = decompose(source, rng), decompose(target, rng)
    if len(left) != len(right):
        return None
    free = list(range(len(right)))
    total = ModuleMap(source, target)
    for summand in left:
        for j in free:
            alpha = isomorphism(summand.module, right[j].module)
            if alpha is not None:
                total = total + right[j].inclusion @ alpha @ summand.projection
                free.remove(j)
                break
        else:
            return None
    return total


def are_isomorphic(source: FpModule, target: FpModule) -> bool:
    return find_isomorphism(source, target) is not None


def multiplicities(module: FpModule, rng: np.random.Generator = None) -> List[Tuple[FpModule, int]]:
    """Indecomposable summands up to isomorphism with their multiplicities."""
    result = []
    for summand in decompose(module, rng):
        for k, (known, count) in enumerate(result):
            if isomorphism(summand.module, known) is not None:
                result[k] = (known, count + 1)
                break
        else:
            result.append((summand.module, 1))
    return result


def _split(module: FpModule, rng: np.random.Generator):
    ends = HomSpace(module, module)
    field = module.field
    for phi in _candidates(ends, rng):
        parts = _fitting(module, phi)
        if parts is not None:
            return parts
    if _local_residue(module, ends) is None:
        raise DecompositionError("no splitting endomorphism found for {} "
                                 "although its endomorphisms are not local over {}".format(module, field))
    return None


def _candidates(ends: HomSpace, rng: np.random.Generator):
    basis = ends.basis
    yield from basis
    for a, b in itertools.combinations(basis, 2):
        yield a + b
    for _ in range(RANDOM_CANDIDATES if len(basis) > 1 else 0):
        yield ends.element(ends.field.random_vector(ends.dimension, rng))


def _eigenvalues(phi: ModuleMap) -> List:
    field = phi.field
    values = []
    for x in phi.category.labels:
        matrix = phi[x]
        if not matrix.shape[0]:
            continue
        roots = field.eigenvalues(matrix)
        if not roots:
            raise NonSplitResidueField("an endomorphism of {} has no eigenvalue in {}".format(phi.source, field))
        values.extend(r for r in roots if r not in values)
    return values


def _fitting(module: FpModule, phi: ModuleMap):
    """The Fitting splitting at the first eigenvalue, or None if φ is λ + nilpotent."""
    field = module.field
    values = _eigenvalues(phi)
    shifted = phi - identity_map(module).scaled(values[0])
    n = module.total_dim
    power = ModuleMap(module, module, {x: field.power(shifted[x], n) for x in module.category.labels})
    if len(values) == 1:
        if not power.is_zero():
            raise NonSplitResidueField("an endomorphism of {} has eigenvalues outside {}".format(module, field))
        return None
    head, head_inclusion = kernel(power)
    tail, tail_inclusion = image(power)
    projections = {}, {}
    for x in module.category.labels:
        change = field.inverse(field.hstack([head_inclusion[x], tail_inclusion[x]], rows=module.dims[x]))
        d = head.dims[x]
        projections[0][x] = change[:d]
        projections[1][x] = change[d:]
    logger.debug("split %s into %s + %s", module, head.dim_vector, tail.dim_vector)
    return [(head, head_inclusion, ModuleMap(module, head, projections[0])),
            (tail, tail_inclusion, ModuleMap(module, tail, projections[1]))]


def _local_residue(module: FpModule, ends: HomSpace) -> Optional[np.ndarray]:
    """Residue values of the End basis if End(M) is local, else None."""
    field = module.field
    basis = ends.basis
    identity = ends.coordinates(identity_map(module))
    values, shifted = [], []
    for phi in basis:
        roots = _eigenvalues(phi)
        if len(roots) != 1:
            return None
        values.append(roots[0])
        shifted.append(field.sub(ends.coordinates(phi), field.scale(roots[0], identity)))
    d = len(basis)
    nil = field.column_space(field.hstack([v.reshape(-1, 1) for v in shifted], rows=d))
    if nil.shape[1] != d - 1:
        return None
    maps = [ends.element(column) for column in nil.T]
    for a in basis:
        for n in maps:
            for product in (a @ n, n @ a):
                if not field.in_span(nil, ends.coordinates(product)):
                    return None
    for n in maps:
        if not all(field.is_nilpotent(n[x]) for x in module.category.labels if module.dims[x]):
            return None
    return field.vector(values)
