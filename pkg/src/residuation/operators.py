"""Operator tables for the cone and meet schemes and the lattice residuation."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from src.classify.predicates import is_complementation, is_lattice, require_bounds
from src.poset_core.errors import NotALattice
from src.poset_core.poset import Poset, StructuredPoset

logger = logging.getLogger(__name__)


class Scheme(str, Enum):
    """
    How M and R are built from the cone calculus.

    cone: M(x,y) = L(U(x,y'),y),  R(x,y) = L(U(L(y,x),x'))
    meet: M(x,y) = L(x,y),        R(x,y) = L(U(y,x'))
    """

    CONE = "cone"
    MEET = "meet"


@dataclass(frozen=True)
class OperatorTable:
    """M and R as n x n tables of downset masks, indexed [x][y]."""

    scheme: Scheme
    poset: Poset
    m: Tuple[Tuple[int, ...], ...]
    r: Tuple[Tuple[int, ...], ...]

    def M(self, x: int, y: int) -> int:
        return self.m[x][y]

    def R(self, x: int, y: int) -> int:
        return self.r[x][y]

    def rows(self) -> List[str]:
        """Table dump, one 'M(x,y) = {...}' line per pair, M rows first."""
        names = self.poset.elements
        lines = []
        for label, table in (("M", self.m), ("R", self.r)):
            for x, row in enumerate(table):
                for y, mask in enumerate(row):
                    lines.append(f"{label}({names[x]},{names[y]}) = {self.poset.format(mask)}")
        return lines


def build_operators(sp: StructuredPoset, scheme: Scheme = Scheme.CONE) -> OperatorTable:
    """
    Compute M and R pointwise over P x P.

    Args:
        sp: Bounded structured poset
        scheme: Scheme.CONE or Scheme.MEET

    Returns:
        OperatorTable for the scheme
    """
    p, prime = sp.poset, sp.op.images
    scheme = Scheme(scheme)
    require_bounds(p, f"{scheme.value} scheme operators")
    n = p.size

    if scheme is Scheme.CONE:
        m = tuple(
            tuple(p.lower(p.upper(1 << x | 1 << prime[y]) | 1 << y) for y in range(n)) for x in range(n)
        )
        r = tuple(
            tuple(p.lower(p.upper(p.lower(1 << y | 1 << x) | 1 << prime[x])) for y in range(n)) for x in range(n)
        )
    else:
        m = tuple(tuple(p.lower(1 << x | 1 << y) for y in range(n)) for x in range(n))
        r = tuple(tuple(p.lower(p.upper(1 << y | 1 << prime[x])) for y in range(n)) for x in range(n))

    logger.debug(f"Built {scheme.value} operator tables for {sp.name}")
    return OperatorTable(scheme=scheme, poset=p, m=m, r=r)


@dataclass(frozen=True)
class LatticeResiduationTable:
    """x*y = (x join y') meet y and x->y = (y meet x) join x', as element indices."""

    poset: Poset
    odot: Tuple[Tuple[int, ...], ...]
    arrow: Tuple[Tuple[int, ...], ...]
    complemented: bool = True


def build_lattice_residuation(sp: StructuredPoset) -> LatticeResiduationTable:
    """Build the lattice operations; raises NotALattice when a join or meet is missing."""
    p, prime = sp.poset, sp.op.images
    lattice = is_lattice(p)
    if not lattice.holds:
        pair = ", ".join(lattice.witness.assignment.values())
        raise NotALattice(f"{sp.name} is not a lattice: {lattice.witness.identity} fails for ({pair})")

    complemented = is_complementation(sp).holds
    if not complemented:
        logger.warning(f"{sp.name}: ' is not a complementation, lattice residuation built anyway")

    n = p.size
    odot = tuple(tuple(p.meet(p.join(x, prime[y]), y) for y in range(n)) for x in range(n))
    arrow = tuple(tuple(p.join(p.meet(y, x), prime[x]) for y in range(n)) for x in range(n))
    return LatticeResiduationTable(poset=p, odot=odot, arrow=arrow, complemented=complemented)
