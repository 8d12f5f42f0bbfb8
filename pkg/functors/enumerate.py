"""Iso-classes of indecomposable modules of bounded total dimension.

An indecomposable module E of dimension n > 1 has a simple quotient S
whose kernel K has dimension n - 1, so E is the middle term of an
extension of S by a sum of smaller indecomposables. The extension class
splits into one block per copy of a summand of K; a zero block or two
dependent blocks for copies of the same summand make E decomposable, and
rescaling a copy normalizes its block.
"""
from typing import Dict, List, Tuple

import logging

import numpy as np

from linalg import multiplicity_vectors, normalized_vectors
from category import FiniteLinearCategory
from .module import FpModule, ModuleMap, direct_sum, inclusions_and_projections, simple
from .homological import ExtData, projective_presentation, realize_cocycle
from .decompose import is_indecomposable, isomorphism

logger = logging.getLogger(__name__)


def enumerate_indecomposables(category: FiniteLinearCategory, max_dim: int,
                              rng: np.random.Generator = None, limit: int = 10000,
                              samples: int = 100) -> Tuple[List[FpModule], bool]:
    """Indecomposable modules up to isomorphism with total dimension at most `max_dim`.

    Parameters
    ----------
    category
        A category with split local endomorphism rings.
    max_dim
        Bound on the total dimension.
    rng
        Used when an extension space is too large to enumerate.
    limit
        Largest number of extension classes enumerated exhaustively for
        one choice of simple top and kernel.
    samples
        Number of random classes tried beyond that limit.

    Returns
    -------
    The modules ordered by total dimension and a flag telling whether the
    list is known to be complete.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    field = category.field
    if max_dim < 1:
        return [], True
    simples = [simple(category, x) for x in category.labels]
    presentations = [projective_presentation(s) for s in simples]
    found: List[FpModule] = list(simples)
    ext_cache: Dict[Tuple[int, int], ExtData] = {}
    exhaustive = True

    def ext(i: int, j: int) -> ExtData:
        if (i, j) not in ext_cache:
            ext_cache[i, j] = ExtData(simples[i], found[j], presentations[i])
        return ext_cache[i, j]

    for n in range(2, max_dim + 1):
        smaller = len(found)
        for i, top in enumerate(simples):
            bounds = [ext(i, j).dimension if found[j].total_dim < n else 0 for j in range(smaller)]
            for counts in multiplicity_vectors(bounds, minimum=1):
                if sum(counts) > n - 1:
                    break
                if sum(c * found[j].total_dim for j, c in enumerate(counts)) != n - 1:
                    continue
                copies = [j for j, c in enumerate(counts) for _ in range(c)]
                block_dims = [ext(i, j).dimension for j in copies]
                vectors, complete = normalized_vectors(field, block_dims, rng, limit, samples)
                if not complete:
                    logger.warning("extensions of %s by %s were sampled, not enumerated", top,
                                   [found[j] for j in copies])
                exhaustive = exhaustive and complete
                parts = [found[j] for j in copies]
                kernel_module = direct_sum(*parts)
                _, inclusions, _ = inclusions_and_projections(parts, kernel_module)
                for vector in vectors:
                    blocks = _blocks(vector, block_dims)
                    if not _independent_copies(field, copies, blocks):
                        continue
                    eta = ModuleMap(presentations[i].syzygy, kernel_module)
                    for c, j in enumerate(copies):
                        eta = eta + inclusions[c] @ ext(i, j).cocycle(blocks[c])
                    middle, _, _ = realize_cocycle(presentations[i], kernel_module, eta)
                    if not is_indecomposable(middle):
                        continue
                    if any(isomorphism(middle, known) is not None for known in found[smaller:]):
                        continue
                    found.append(middle)
        logger.debug("%d indecomposables of total dimension at most %d", len(found), n)
    return found, exhaustive


def _blocks(vector: np.ndarray, dims: List[int]) -> List[np.ndarray]:
    blocks, offset = [], 0
    for d in dims:
        blocks.append(vector[offset:offset + d])
        offset += d
    return blocks


def _independent_copies(field, copies: List[int], blocks: List[np.ndarray]) -> bool:
    for j in set(copies):
        group = [blocks[c] for c, k in enumerate(copies) if k == j]
        if len(group) > 1 and field.rank(np.stack(group).astype(field.dtype)) < len(group):
            return False
    return True
