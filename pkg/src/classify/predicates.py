"""
Predicates on bounded posets with a unary operation.

Every predicate returns a CheckResult; a failing result carries the least
failing assignment in element order together with both evaluated sides.
"""

import logging
from typing import Callable, Dict, Optional, Tuple, Union

from src.poset_core.errors import NotALattice, UnboundedPoset, UnknownPredicate
from src.poset_core.poset import Poset, StructuredPoset
from src.poset_core.reports import CheckResult, Witness
from src.poset_core.scan import scan

logger = logging.getLogger(__name__)

Target = Union[Poset, StructuredPoset]


def _poset(target: Target) -> Poset:
    return target.poset if isinstance(target, StructuredPoset) else target


def require_bounds(poset: Poset, predicate: str) -> Tuple[int, int]:
    """Return (bottom, top) or raise UnboundedPoset naming the predicate."""
    if not poset.bounded:
        missing = "bottom" if poset.bottom is None else "top"
        raise UnboundedPoset(f"{predicate} needs a bounded poset, no {missing} element found")
    return poset.bottom, poset.top


def _renamed(result: CheckResult, name: str, note: Optional[str] = None) -> CheckResult:
    return result.model_copy(update={"name": name, "note": note or result.note})


# Definition of complementation and its parts

def _complement_bounds(sp: StructuredPoset, threads: Optional[int]) -> CheckResult:
    p, prime = sp.poset, sp.op.images
    bottom, top = require_bounds(p, "complementation")

    def sides(x):
        pair = 1 << x | 1 << prime[x]
        yield "L(x,x') = {0}", p.lower(pair), 1 << bottom, "eq", None
        yield "U(x,x') = {1}", p.upper(pair), 1 << top, "eq", None

    return scan(p, 1, sides, "complement_bounds", threads)


def is_antitone(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    """x <= y implies y' <= x', compared as L(y') <= L(x')."""
    p, prime = sp.poset, sp.op.images

    def sides(x, y):
        if p.le(x, y):
            yield "x <= y implies L(y') <= L(x')", p.down[prime[y]], p.down[prime[x]], "sub", None

    return scan(p, 2, sides, "antitone", threads)


def is_involution(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    p, prime = sp.poset, sp.op.images

    def sides(x):
        yield "L(x'') = L(x)", p.down[prime[prime[x]]], p.down[x], "eq", None

    return scan(p, 1, sides, "involution", threads)


def is_antitone_involution(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    for result in (is_antitone(sp, threads), is_involution(sp, threads)):
        if not result.holds:
            return _renamed(result, "antitone_involution")
    return CheckResult(name="antitone_involution", holds=True)


def is_complementation(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    """
    Check that ' is a complementation.

    The cone bounds L(x,x') = {0} and U(x,x') = {1} are checked first, then
    antitonicity, then the involution law. Raises UnboundedPoset without 0 or 1.
    """
    for check in (_complement_bounds, is_antitone, is_involution):
        result = check(sp, threads)
        if not result.holds:
            return _renamed(result, "complementation")
    return CheckResult(name="complementation", holds=True)


def one_prime_zero(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    p = sp.poset
    bottom, top = require_bounds(p, "one_prime_zero")
    image = sp.prime(top)
    if image == bottom:
        return CheckResult(name="one_prime_zero", holds=True)
    witness = Witness(identity="1' = 0", assignment={}, left=[p.elements[image]], right=[p.elements[bottom]])
    return CheckResult(name="one_prime_zero", holds=False, witness=witness)


# Distributivity

def distributive_identity(target: Target, which: int = 1, threads: Optional[int] = None) -> CheckResult:
    """
    One of the two cone-level distributive identities over all triples.

    which=1: L(U(x,y),z) = L(U(L(x,z),L(y,z)))
    which=2: U(L(x,y),z) = U(L(U(x,z),U(y,z)))
    """
    p = _poset(target)

    if which == 1:
        def sides(x, y, z):
            left = p.lower(p.upper(1 << x | 1 << y) | 1 << z)
            right = p.lower(p.upper(p.lower(1 << x | 1 << z) | p.lower(1 << y | 1 << z)))
            yield "L(U(x,y),z) = L(U(L(x,z),L(y,z)))", left, right, "eq", None
    else:
        def sides(x, y, z):
            left = p.upper(p.lower(1 << x | 1 << y) | 1 << z)
            right = p.upper(p.lower(p.upper(1 << x | 1 << z) | p.upper(1 << y | 1 << z)))
            yield "U(L(x,y),z) = U(L(U(x,z),U(y,z)))", left, right, "eq", None

    name = "distributive" if which == 1 else "distributive_dual"
    return scan(p, 3, sides, name, threads)


def is_distributive(target: Target, threads: Optional[int] = None) -> CheckResult:
    first = distributive_identity(target, 1, threads)
    second = distributive_identity(target, 2, threads)
    if first.holds != second.holds:
        logger.warning(f"Distributive identities disagree: first={first.holds}, second={second.holds}")
        return first.model_copy(update={"note": "the second distributive identity gives a different verdict"})
    return first


def is_boolean_poset(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    """Complementation plus distributivity."""
    for result in (is_complementation(sp, threads), is_distributive(sp, threads)):
        if not result.holds:
            return _renamed(result, "boolean")
    return CheckResult(name="boolean", holds=True)


# Pseudo-Boolean and pseudo-orthomodular identities

def pseudo_boolean_identity(sp: StructuredPoset, which: int = 1, threads: Optional[int] = None) -> CheckResult:
    """which=1: L(U(x,y),y') = L(x,y'); which=2: U(L(x,y),y') = U(x,y')."""
    p, prime = sp.poset, sp.op.images

    if which == 1:
        def sides(x, y):
            yp = 1 << prime[y]
            left = p.lower(p.upper(1 << x | 1 << y) | yp)
            yield "L(U(x,y),y') = L(x,y')", left, p.lower(1 << x | yp), "eq", None
    else:
        def sides(x, y):
            yp = 1 << prime[y]
            left = p.upper(p.lower(1 << x | 1 << y) | yp)
            yield "U(L(x,y),y') = U(x,y')", left, p.upper(1 << x | yp), "eq", None

    name = "pseudo_boolean" if which == 1 else "pseudo_boolean_dual"
    return scan(p, 2, sides, name, threads)


def pseudo_orthomodular_identity(sp: StructuredPoset, which: int = 1, threads: Optional[int] = None) -> CheckResult:
    """which=1: L(U(L(x,y),y'),y) = L(x,y); which=2: U(L(U(x,y),y'),y) = U(x,y)."""
    p, prime = sp.poset, sp.op.images

    if which == 1:
        def sides(x, y):
            xy = 1 << x | 1 << y
            left = p.lower(p.upper(p.lower(xy) | 1 << prime[y]) | 1 << y)
            yield "L(U(L(x,y),y'),y) = L(x,y)", left, p.lower(xy), "eq", None
    else:
        def sides(x, y):
            xy = 1 << x | 1 << y
            left = p.upper(p.lower(p.upper(xy) | 1 << prime[y]) | 1 << y)
            yield "U(L(U(x,y),y'),y) = U(x,y)", left, p.upper(xy), "eq", None

    name = "pseudo_orthomodular" if which == 1 else "pseudo_orthomodular_dual"
    return scan(p, 2, sides, name, threads)


def _complemented_identity(sp, identity, name, which, threads) -> CheckResult:
    complementation = is_complementation(sp, threads)
    if not complementation.holds:
        return _renamed(complementation, name, "no complementation")
    return _renamed(identity(sp, which, threads), name)


def is_pseudo_boolean(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    """Complementation plus L(U(x,y),y') = L(x,y')."""
    return _complemented_identity(sp, pseudo_boolean_identity, "pseudo_boolean", 1, threads)


def is_pseudo_boolean_dual(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    return _complemented_identity(sp, pseudo_boolean_identity, "pseudo_boolean_dual", 2, threads)


def is_pseudo_orthomodular(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    """Complementation plus L(U(L(x,y),y'),y) = L(x,y)."""
    return _complemented_identity(sp, pseudo_orthomodular_identity, "pseudo_orthomodular", 1, threads)


def is_pseudo_orthomodular_dual(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    return _complemented_identity(sp, pseudo_orthomodular_identity, "pseudo_orthomodular_dual", 2, threads)


# Lattices

def is_lattice(target: Target, threads: Optional[int] = None) -> CheckResult:
    """Every pair has a join and a meet; the witness is the least pair lacking one."""
    p = _poset(target)
    for x in range(p.size):
        for y in range(x + 1, p.size):
            pair = 1 << x | 1 << y
            if p.join(x, y) is None:
                bounds = p.upper(pair)
                witness = Witness(
                    identity="join(x,y) exists", assignment={"x": p.elements[x], "y": p.elements[y]},
                    left=p.names(bounds), right=[], details={"U(x,y)": p.names(bounds)},
                )
                return CheckResult(name="lattice", holds=False, witness=witness)
            if p.meet(x, y) is None:
                bounds = p.lower(pair)
                witness = Witness(
                    identity="meet(x,y) exists", assignment={"x": p.elements[x], "y": p.elements[y]},
                    left=p.names(bounds), right=[], details={"L(x,y)": p.names(bounds)},
                )
                return CheckResult(name="lattice", holds=False, witness=witness)
    return CheckResult(name="lattice", holds=True)


def orthomodular_law(sp: StructuredPoset, which: int = 1, threads: Optional[int] = None) -> CheckResult:
    """
    The orthomodular law over comparable pairs of a lattice.

    which=1: x <= y implies x = y meet (x join y')
    which=2: x <= y implies y = x join (y meet x')
    """
    p, prime = sp.poset, sp.op.images
    lattice = is_lattice(p)
    if not lattice.holds:
        pair = ", ".join(lattice.witness.assignment.values())
        raise NotALattice(f"The orthomodular law needs a lattice: {lattice.witness.identity} fails for ({pair})")

    if which == 1:
        def sides(x, y):
            if p.le(x, y):
                rebuilt = p.meet(y, p.join(x, prime[y]))
                yield "x <= y implies x = y meet (x join y')", 1 << x, 1 << rebuilt, "eq", None
    else:
        def sides(x, y):
            if p.le(x, y):
                rebuilt = p.join(x, p.meet(y, prime[x]))
                yield "x <= y implies y = x join (y meet x')", 1 << y, 1 << rebuilt, "eq", None

    name = "orthomodular_lattice" if which == 1 else "orthomodular_lattice_dual"
    return scan(p, 2, sides, name, threads)


def _orthomodular(sp: StructuredPoset, which: int, threads: Optional[int]) -> CheckResult:
    name = "orthomodular_lattice" if which == 1 else "orthomodular_lattice_dual"
    lattice = is_lattice(sp)
    if not lattice.holds:
        return _renamed(lattice, name, "NotALattice")
    complementation = is_complementation(sp, threads)
    if not complementation.holds:
        return _renamed(complementation, name, "no complementation")
    return orthomodular_law(sp, which, threads)


def is_orthomodular_lattice(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    """Lattice with complementation satisfying x <= y implies x = y meet (x join y')."""
    return _orthomodular(sp, 1, threads)


def is_orthomodular_lattice_dual(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
    return _orthomodular(sp, 2, threads)


# Sufficient conditions for operator residuation

def check_condition(sp: StructuredPoset, which: int, threads: Optional[int] = None) -> CheckResult:
    """
    Check one of the conditions (1), (2), (7), (8) over all pairs (x, y).

    (1) L(x) <= L(U(L(U(x,y'),y),y'))
    (2) L(U(L(x,y),y'),y) <= L(x)
    (7) L(x) <= L(U(L(x,y),y'))
    (8) L(U(x,y'),y) <= L(x)
    """
    p, prime = sp.poset, sp.op.images

    def condition_1(x, y):
        yp = 1 << prime[y]
        right = p.lower(p.upper(p.lower(p.upper(1 << x | yp) | 1 << y) | yp))
        yield "L(x) <= L(U(L(U(x,y'),y),y'))", p.down[x], right, "sub", None

    def condition_2(x, y):
        left = p.lower(p.upper(p.lower(1 << x | 1 << y) | 1 << prime[y]) | 1 << y)
        yield "L(U(L(x,y),y'),y) <= L(x)", left, p.down[x], "sub", None

    def condition_7(x, y):
        right = p.lower(p.upper(p.lower(1 << x | 1 << y) | 1 << prime[y]))
        yield "L(x) <= L(U(L(x,y),y'))", p.down[x], right, "sub", None

    def condition_8(x, y):
        left = p.lower(p.upper(1 << x | 1 << prime[y]) | 1 << y)
        yield "L(U(x,y'),y) <= L(x)", left, p.down[x], "sub", None

    conditions = {1: condition_1, 2: condition_2, 7: condition_7, 8: condition_8}
    if which not in conditions:
        raise UnknownPredicate(f"Unknown condition {which}, expected one of 1, 2, 7, 8")
    return scan(p, 2, conditions[which], f"condition_{which}", threads)


Predicate = Callable[[StructuredPoset, Optional[int]], CheckResult]

PREDICATES: Dict[str, Predicate] = {
    "complementation": is_complementation,
    "antitone": is_antitone,
    "involution": is_involution,
    "antitone_involution": is_antitone_involution,
    "one_prime_zero": one_prime_zero,
    "distributive": lambda sp, threads=None: is_distributive(sp, threads),
    "boolean": is_boolean_poset,
    "pseudo_boolean": is_pseudo_boolean,
    "pseudo_orthomodular": is_pseudo_orthomodular,
    "lattice": lambda sp, threads=None: is_lattice(sp, threads),
    "orthomodular_lattice": is_orthomodular_lattice,
    "condition_1": lambda sp, threads=None: check_condition(sp, 1, threads),
    "condition_2": lambda sp, threads=None: check_condition(sp, 2, threads),
    "condition_7": lambda sp, threads=None: check_condition(sp, 7, threads),
    "condition_8": lambda sp, threads=None: check_condition(sp, 8, threads),
}


def get_predicate(name: str) -> Predicate:
    try:
        return PREDICATES[name]
    except KeyError:
        raise UnknownPredicate(
            f"Unknown predicate '{name}', expected one of: {', '.join(sorted(PREDICATES))}"
        ) from None
