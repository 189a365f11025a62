"""Poset, unary operation and subset types with the L/U cone calculus.

Subsets are bitmasks over element indices: bit i stands for the i-th element
in file order. Every cone helper takes and returns such masks.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from config.config import settings
from .errors import CarrierTooLarge, CycleDetected, DimensionMismatch, DuplicateElement, ParseError

logger = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def check_carrier(size: int, max_carrier: Optional[int] = None) -> None:
    """Raise CarrierTooLarge when size is above the carrier cap."""
    limit = settings.MAX_CARRIER if max_carrier is None else max_carrier
    if size > limit:
        raise CarrierTooLarge(
            f"Carrier has {size} elements, cap is {limit} (set RESIDUA_MAX_CARRIER to raise it)"
        )


@dataclass(frozen=True)
class Subset:
    """A set of element indices stored as a bitmask."""

    mask: int = 0

    @classmethod
    def of(cls, indices: Iterable[int]) -> "Subset":
        """Build a subset from element indices."""
        mask = 0
        for index in indices:
            if index < 0:
                raise ValueError(f"Element index must be non-negative, got {index}")
            mask |= 1 << index
        return cls(mask)

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __or__(self, other: "Subset") -> "Subset":
        return Subset(self.mask | other.mask)

    def __and__(self, other: "Subset") -> "Subset":
        return Subset(self.mask & other.mask)

    def issubset(self, other: "Subset") -> bool:
        return self.mask & ~other.mask == 0


@dataclass(frozen=True)
class Poset:
    """
    A finite poset given by its closed order relation.

    down[j] is the mask of all i with i <= j and up[i] the mask of all j with
    i <= j; leq is the same relation as a read-only boolean matrix.
    """

    elements: Tuple[str, ...]
    down: Tuple[int, ...]
    up: Tuple[int, ...]
    bottom: Optional[int] = None
    top: Optional[int] = None
    leq: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @classmethod
    def from_matrix(cls, elements: Sequence[str], leq, max_carrier: Optional[int] = None) -> "Poset":
        """
        Build a poset from a full order matrix, checking the partial order axioms.

        Args:
            elements: Element identifiers in file order
            leq: n x n boolean relation, leq[i][j] meaning element i <= element j
            max_carrier: Carrier cap (optional, uses config if not provided)

        Returns:
            Validated Poset with bottom/top detected
        """
        elements = tuple(elements)
        n = len(elements)
        if n == 0:
            raise ParseError("Carrier is empty")
        check_carrier(n, max_carrier)
        if len(set(elements)) != n:
            duplicate = next(name for name in elements if elements.count(name) > 1)
            raise DuplicateElement(f"Element '{duplicate}' is listed more than once")

        matrix = np.array(leq, dtype=bool)
        if matrix.shape != (n, n):
            raise ParseError(f"Order matrix has shape {matrix.shape}, expected ({n}, {n})")
        if not matrix.diagonal().all():
            raise ParseError("Order relation is not reflexive")
        clash = np.argwhere(matrix & matrix.T & ~np.eye(n, dtype=bool))
        if len(clash):
            i, j = clash[0]
            raise CycleDetected([elements[i], elements[j]])
        counts = matrix.astype(np.int64) @ matrix.astype(np.int64)
        if ((counts > 0) & ~matrix).any():
            raise ParseError("Order relation is not transitive")
        matrix.setflags(write=False)

        down = tuple(sum(1 << int(i) for i in np.flatnonzero(matrix[:, j])) for j in range(n))
        up = tuple(sum(1 << int(j) for j in np.flatnonzero(matrix[i, :])) for i in range(n))
        full = (1 << n) - 1
        bottom = next((i for i in range(n) if up[i] == full), None)
        top = next((i for i in range(n) if down[i] == full), None)
        return cls(elements, down, up, bottom, top, matrix)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        """Mask of the whole carrier."""
        return (1 << len(self.elements)) - 1

    @property
    def bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    def index(self, name: str) -> int:
        return self.elements.index(name)

    def le(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def lower(self, mask: int) -> int:
        """Common lower bounds of the elements of mask; L of the empty set is P."""
        result = self.full
        for i in iter_bits(mask):
            result &= self.down[i]
        return result

    def upper(self, mask: int) -> int:
        """Common upper bounds of the elements of mask; U of the empty set is P."""
        result = self.full
        for i in iter_bits(mask):
            result &= self.up[i]
        return result

    def is_downset(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in iter_bits(mask))

    def is_upset(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in iter_bits(mask))

    def join(self, i: int, j: int) -> Optional[int]:
        """Least upper bound of i and j, or None."""
        bounds = self.up[i] & self.up[j]
        for k in iter_bits(bounds):
            if bounds & ~self.up[k] == 0:
                return k
        return None

    def meet(self, i: int, j: int) -> Optional[int]:
        """Greatest lower bound of i and j, or None."""
        bounds = self.down[i] & self.down[j]
        for k in iter_bits(bounds):
            if bounds & ~self.down[k] == 0:
                return k
        return None

    def names(self, mask: int) -> List[str]:
        """Element names of mask in file order."""
        return [self.elements[i] for i in iter_bits(mask)]

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    def covers(self) -> List[Tuple[int, int]]:
        """Cover pairs (lower, upper) of the order, via transitive reduction."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from(
            (i, j) for i in range(self.size) for j in iter_bits(self.up[i]) if i != j
        )
        return sorted(nx.transitive_reduction(graph).edges())


@dataclass(frozen=True)
class UnaryOp:
    """The ' operation as a total self-map on element indices. No law is assumed."""

    images: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        bad = [image for image in self.images if not 0 <= image < n]
        if bad:
            raise DimensionMismatch(f"Operation maps outside the carrier: {bad}")

    def __call__(self, index: int) -> int:
        return self.images[index]

    def image(self, mask: int) -> int:
        """Elementwise image of a subset mask."""
        result = 0
        for i in iter_bits(mask):
            result |= 1 << self.images[i]
        return result


@dataclass(frozen=True)
class StructuredPoset:
    """A poset together with its unary operation and a display name."""

    poset: Poset
    op: UnaryOp
    name: str = "unnamed"

    def __post_init__(self):
        if len(self.op.images) != self.poset.size:
            raise DimensionMismatch(
                f"Operation acts on {len(self.op.images)} elements, poset has {self.poset.size}"
            )

    def prime(self, index: int) -> int:
        return self.op.images[index]


Part = Union[Subset, int, str]


def _parts_mask(p: Poset, parts: Sequence[Part]) -> int:
    mask = 0
    for part in parts:
        if isinstance(part, Subset):
            if part.mask & ~p.full:
                raise IndexError(f"Subset {part} is not inside the carrier")
            mask |= part.mask
        elif isinstance(part, str):
            mask |= 1 << p.index(part)
        else:
            if not 0 <= part < p.size:
                raise IndexError(f"Element index {part} is not in the carrier")
            mask |= 1 << part
    return mask


def lower_cone(p: Poset, parts: Sequence[Part]) -> Subset:
    """L of the union of all parts (elements count as singletons)."""
    return Subset(p.lower(_parts_mask(p, parts)))


def upper_cone(p: Poset, parts: Sequence[Part]) -> Subset:
    """U of the union of all parts (elements count as singletons)."""
    return Subset(p.upper(_parts_mask(p, parts)))


def image_prime(op: UnaryOp, subset: Subset) -> Subset:
    """A' = {x' | x in A}."""
    return Subset(op.image(subset.mask))
