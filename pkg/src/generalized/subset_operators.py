"""M and R lifted to subsets of the carrier."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Union

from src.poset_core.poset import StructuredPoset, Subset


@dataclass(frozen=True)
class SubsetOperatorTable:
    """
    M(A,B) = L(A,B) and R(A,B) = L(U(B,A')), evaluated on demand.

    Restricted to singletons these are the meet-scheme operators.
    """

    sp: StructuredPoset

    def m(self, a: int, b: int) -> int:
        return self.sp.poset.lower(a | b)

    def r(self, a: int, b: int) -> int:
        p = self.sp.poset
        return p.lower(p.upper(b | self.sp.op.image(a)))

    def M(self, a: Subset, b: Subset) -> Subset:
        return Subset(self.m(a.mask, b.mask))

    def R(self, a: Subset, b: Subset) -> Subset:
        return Subset(self.r(a.mask, b.mask))


@dataclass(frozen=True)
class ConeTables:
    """Per-subset cones L(A), U(A) and U(A') for every mask of a domain."""

    lower: Union[List[int], Dict[int, int]]
    upper: Union[List[int], Dict[int, int]]
    prime_upper: Union[List[int], Dict[int, int]]


@lru_cache(maxsize=16)
def all_subset_cones(sp: StructuredPoset) -> ConeTables:
    """Cones of all 2^n subsets, each derived from the subset without its lowest bit."""
    p, prime = sp.poset, sp.op.images
    size = 1 << p.size
    lower: List[int] = [p.full] * size
    upper: List[int] = [p.full] * size
    prime_upper: List[int] = [p.full] * size
    for mask in range(1, size):
        low = mask & -mask
        rest = mask ^ low
        i = low.bit_length() - 1
        lower[mask] = lower[rest] & p.down[i]
        upper[mask] = upper[rest] & p.up[i]
        prime_upper[mask] = prime_upper[rest] & p.up[prime[i]]
    return ConeTables(lower, upper, prime_upper)


def singleton_cones(sp: StructuredPoset) -> ConeTables:
    """Cones of the singletons only, keyed by mask."""
    p, prime = sp.poset, sp.op.images
    masks = [1 << i for i in range(p.size)]
    return ConeTables(
        lower={mask: p.down[i] for i, mask in enumerate(masks)},
        upper={mask: p.up[i] for i, mask in enumerate(masks)},
        prime_upper={mask: p.up[prime[i]] for i, mask in enumerate(masks)},
    )
