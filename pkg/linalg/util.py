from typing import Iterator, List, Sequence, Tuple

import itertools

import numpy as np

from .field import Field


def multiplicity_vectors(bounds: Sequence[int], minimum: int = 0) -> Iterator[Tuple[int, ...]]:
    """All integer vectors ``0 <= m <= bounds``, by increasing total.

    Vectors with the same total come in a fixed order, so the
    enumeration is deterministic.
    """
    bounds = [max(0, int(b)) for b in bounds]
    for total in range(minimum, sum(bounds) + 1):
        for vector in _vectors_with_total(bounds, total):
            yield vector


def _vectors_with_total(bounds: List[int], total: int) -> Iterator[Tuple[int, ...]]:
    if not bounds:
        if total == 0:
            yield ()
        return
    rest = sum(bounds[1:])
    for first in range(min(bounds[0], total), -1, -1):
        if total - first > rest:
            break
        for tail in _vectors_with_total(bounds[1:], total - first):
            yield (first,) + tail


def projective_points(field: Field, dim: int) -> List[np.ndarray]:
    """Nonzero vectors of k^dim with first nonzero coordinate 1.

    Only finite fields can be enumerated.
    """
    points = []
    values = list(field.elements())
    for lead in range(dim):
        for tail in itertools.product(values, repeat=dim - lead - 1):
            v = field.zero_vector(dim)
            v[lead] = 1
            v[lead + 1:] = tail
            points.append(v)
    return points


def count_normalized(field: Field, block_dims: Sequence[int]):
    """Number of vectors produced by an exhaustive `normalized_vectors`."""
    if field.size is None:
        return None
    count = 1
    for d in block_dims:
        count *= (field.size ** d - 1) // (field.size - 1)
    return count


def normalized_vectors(field: Field, block_dims: Sequence[int], rng: np.random.Generator,
                       limit: int, samples: int) -> Tuple[List[np.ndarray], bool]:
    """Vectors of k^d_1 + ... + k^d_n whose blocks are all nonzero and
    normalized (first nonzero coordinate 1).

    Normalizing blocks one by one does not lose any iso-class of the
    object built from the vector, since every summand may be rescaled
    independently.

    Returns
    -------
    The vectors and a flag telling whether the enumeration is exhaustive.
    If there are more than `limit` candidates (or the field is infinite),
    the unit vectors plus `samples` random normalized vectors are
    returned instead.
    """
    if any(d == 0 for d in block_dims):
        return [], True
    if not block_dims:
        return [field.zero_vector(0)], True
    count = count_normalized(field, block_dims)
    if count is not None and count <= limit:
        per_block = [projective_points(field, d) for d in block_dims]
        return [np.concatenate(parts).astype(field.dtype)
                for parts in itertools.product(*per_block)], True
    vectors = [np.concatenate([field.unit_vector(d, 0) for d in block_dims]).astype(field.dtype)]
    for _ in range(samples):
        parts = []
        for d in block_dims:
            v = field.random_vector(d, rng)
            while field.is_zero(v):
                v = field.random_vector(d, rng)
            parts.append(field.normalize(v))
        vectors.append(np.concatenate(parts).astype(field.dtype))
    return vectors, False


def element_vectors(field: Field, dim: int, rng: np.random.Generator,
                    limit: int, samples: int) -> Tuple[np.ndarray, bool]:
    """Columns running over all of k^dim when it has at most `limit`
    points; otherwise the basis plus `samples` random vectors (flagged)."""
    size = field.size
    if size is not None and size ** dim <= limit:
        return field.all_vectors(dim), True
    columns = [field.eye(dim)]
    columns.extend(field.random_vector(dim, rng).reshape(-1, 1) for _ in range(samples))
    return field.hstack(columns, rows=dim), False
