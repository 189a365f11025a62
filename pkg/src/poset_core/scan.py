"""Exhaustive element-level identity checks with least-witness reporting."""

import itertools
import logging
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

from .parallel import least_hit
from .poset import Poset
from .reports import CheckResult, Witness

logger = logging.getLogger(__name__)

VARIABLES = ("x", "y", "z")

# (identity label, left mask, right mask, relation, details)
# relation is "eq" for set equality and "sub" for left ⊆ right
Side = Tuple[str, int, int, str, Optional[Dict[str, int]]]
Sides = Callable[..., Iterable[Side]]


def relation_holds(left: int, right: int, relation: str) -> bool:
    if relation == "eq":
        return left == right
    return left & ~right == 0


def make_witness(poset: Poset, identity: str, args: Sequence[int], left: int, right: int,
                 details: Optional[Dict[str, int]] = None, variables: Sequence[str] = VARIABLES) -> Witness:
    """Render masks and element indices of a failing instance by name."""
    return Witness(
        identity=identity,
        assignment={var: poset.elements[arg] for var, arg in zip(variables, args)},
        left=poset.names(left),
        right=poset.names(right),
        details={key: poset.names(mask) for key, mask in (details or {}).items()},
    )


def scan(poset: Poset, arity: int, sides: Sides, name: str, threads: Optional[int] = None,
         variables: Sequence[str] = VARIABLES, method: str = "direct") -> CheckResult:
    """
    Evaluate sides(*args) on every argument tuple in lexicographic order.

    The first failing side of the least failing tuple becomes the witness.

    Args:
        poset: Poset supplying element names for the witness
        arity: Number of element variables
        sides: Callable returning the (label, left, right, relation, details) sides to test
        name: Check name for the result
        threads: Worker budget (optional, uses config if not provided)

    Returns:
        CheckResult, holding iff no side fails anywhere
    """
    n = poset.size

    def scan_slice(heads):
        for head in heads:
            for tail in itertools.product(range(n), repeat=arity - 1):
                args = (head,) + tail
                for label, left, right, relation, details in sides(*args):
                    if not relation_holds(left, right, relation):
                        return args, (label, left, right, details)
        return None

    hit = least_hit(range(n), scan_slice, threads)
    if hit is None:
        logger.debug(f"{name}: holds on all {n ** arity} assignments")
        return CheckResult(name=name, holds=True, method=method)

    args, (label, left, right, details) = hit
    logger.debug(f"{name}: fails at {[poset.elements[a] for a in args]}")
    return CheckResult(
        name=name,
        holds=False,
        method=method,
        witness=make_witness(poset, label, args, left, right, details, variables),
    )
