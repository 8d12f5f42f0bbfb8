from typing import Iterable, Iterator, List, Mapping, Sequence, Tuple

from dataclasses import dataclass

import numpy as np
from frozendict import frozendict

from .exceptions import ShapeMismatch


class FormalObject:
    """A finite direct sum of indecomposable objects.

    The summands are kept as an ordered tuple of labels: the order fixes
    the block layout of morphisms, while :py:attr:`multiplicities` gives
    the underlying multiset. The zero object is the empty sum.
    """

    __slots__ = ('_summands',)

    def __init__(self, summands: Iterable[str] = ()):
        if isinstance(summands, str):
            summands = (summands,)
        self._summands = tuple(summands)

    @classmethod
    def zero(cls) -> 'FormalObject':
        return cls(())

    @classmethod
    def from_multiplicities(cls, multiplicities: Mapping[str, int],
                            order: Sequence[str]) -> 'FormalObject':
        """Build a sum listing the labels in the given order."""
        return cls(label for label in order for _ in range(multiplicities.get(label, 0)))

    @property
    def summands(self) -> Tuple[str, ...]:
        return self._summands

    @property
    def multiplicities(self) -> frozendict:
        counts = {}
        for label in self._summands:
            counts[label] = counts.get(label, 0) + 1
        return frozendict(counts)

    @property
    def is_zero(self) -> bool:
        return not self._summands

    def same_multiset(self, other: 'FormalObject') -> bool:
        return self.multiplicities == other.multiplicities

    def sorted(self, order: Sequence[str]) -> 'FormalObject':
        index = {label: i for i, label in enumerate(order)}
        return FormalObject(sorted(self._summands, key=lambda label: index[label]))

    def labels(self) -> List[str]:
        """The distinct labels, in order of first appearance."""
        return list(dict.fromkeys(self._summands))

    def __iter__(self) -> Iterator[str]:
        return iter(self._summands)

    def __len__(self) -> int:
        return len(self._summands)

    def __getitem__(self, item) -> str:
        return self._summands[item]

    def __add__(self, other: 'FormalObject') -> 'FormalObject':
        return FormalObject(self._summands + as_object(other)._summands)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalObject) and other._summands == self._summands

    def __hash__(self) -> int:
        return hash(self._summands)

    def __repr__(self) -> str:
        return '+'.join(self._summands) if self._summands else '0'

    def to_json(self) -> list:
        return list(self._summands)


def as_object(value) -> FormalObject:
    """Accept labels, label sequences and formal objects alike."""
    if isinstance(value, FormalObject):
        return value
    return FormalObject(value)


@dataclass(frozen=True, eq=False)
class BlockMorphism:
    """A morphism between formal direct sums.

    ``blocks[i][j]`` is the coordinate vector (in the chosen hom basis)
    of the component from source summand ``j`` to target summand ``i``.
    """

    category: 'FiniteLinearCategory'
    source: FormalObject
    target: FormalObject
    blocks: Tuple[Tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.target):
            raise ShapeMismatch("expected {} block rows, got {}".format(len(self.target), len(self.blocks)))
        for i, row in enumerate(self.blocks):
            if len(row) != len(self.source):
                raise ShapeMismatch("expected {} block columns, got {}".format(len(self.source), len(row)))
            for j, vector in enumerate(row):
                expected = self.category.hom_dim(self.source[j], self.target[i])
                if vector.shape != (expected,):
                    raise ShapeMismatch("block ({}, {}) of {} -> {} should have length {}, got shape {}"
                                        .format(i, j, self.source, self.target, expected, vector.shape))

    @property
    def field(self):
        return self.category.field

    def component(self, i: int, j: int) -> np.ndarray:
        return self.blocks[i][j]

    def flat(self) -> np.ndarray:
        """All coordinates, row-major over (target summand, source summand)."""
        parts = [vector for row in self.blocks for vector in row]
        if not parts:
            return self.field.zero_vector(0)
        return np.concatenate(parts).astype(self.field.dtype)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.flat())

    def _combine(self, other: 'BlockMorphism', operation) -> 'BlockMorphism':
        if other.source != self.source or other.target != self.target:
            raise ShapeMismatch("cannot combine {} -> {} with {} -> {}"
                                .format(self.source, self.target, other.source, other.target))
        blocks = tuple(tuple(operation(a, b) for a, b in zip(row, other_row))
                       for row, other_row in zip(self.blocks, other.blocks))
        return BlockMorphism(self.category, self.source, self.target, blocks)

    def __add__(self, other: 'BlockMorphism') -> 'BlockMorphism':
        return self._combine(other, self.field.add)

    def __sub__(self, other: 'BlockMorphism') -> 'BlockMorphism':
        return self._combine(other, self.field.sub)

    def __neg__(self) -> 'BlockMorphism':
        return self.scaled(-1)

    def scaled(self, c) -> 'BlockMorphism':
        blocks = tuple(tuple(self.field.scale(c, v) for v in row) for row in self.blocks)
        return BlockMorphism(self.category, self.source, self.target, blocks)

    def equals(self, other: 'BlockMorphism') -> bool:
        return (self.source == other.source and self.target == other.target
                and self.field.equal(self.flat(), other.flat()))

    def __matmul__(self, other: 'BlockMorphism') -> 'BlockMorphism':
        """``g @ f`` is the composite g∘f."""
        return self.category.compose(self, other)

    def __repr__(self) -> str:
        return 'BlockMorphism({} -> {}: {})'.format(self.source, self.target,
                                                     self.field.to_list(self.flat()))

    def to_json(self) -> dict:
        return {
            'source': self.source.to_json(),
            'target': self.target.to_json(),
            'blocks': [[self.field.to_list(v) for v in row] for row in self.blocks],
        }
