"""
Generation of bounded posets with a unary operation, one per isomorphism class.

A bounded poset of size n >= 2 is an inner poset on n - 2 points with a new
least element "0" and greatest element "1" added. Inner posets are kept in a
canonical labelling (the greatest flattened relation over all relabellings),
so two bounded posets are isomorphic exactly when their inner forms are equal.
For a fixed poset, an operation is emitted only when it is the least member of
its conjugacy class under the automorphism group.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from config.config import settings
from src.classify.predicates import get_predicate
from src.poset_core.errors import SizeCapExceeded
from src.poset_core.poset import Poset, StructuredPoset, UnaryOp

logger = logging.getLogger(__name__)

INNER_NAMES = "abcde"

# Predicates that force ' to be an involution
INVOLUTIVE = frozenset({
    "complementation", "involution", "antitone_involution",
    "boolean", "pseudo_boolean", "pseudo_orthomodular", "orthomodular_lattice",
})
# Predicates that force 1' = 0
TOP_TO_BOTTOM = frozenset({
    "one_prime_zero", "complementation", "boolean", "pseudo_boolean",
    "pseudo_orthomodular", "orthomodular_lattice",
})


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate: carrier size, required predicates, and whether to dedupe."""

    size: int
    require: Tuple[str, ...] = ()
    canonical: bool = True

    def __post_init__(self):
        object.__setattr__(self, "require", tuple(self.require))
        if self.size < 1:
            raise SizeCapExceeded(f"Enumeration size must be at least 1, got {self.size}")
        for name in self.require:
            get_predicate(name)


@lru_cache(maxsize=None)
def inner_posets(k: int) -> Tuple[Tuple[int, ...], ...]:
    """Strict orders on k points up to isomorphism, as flattened k x k 0/1 tuples."""
    if k == 0:
        return ((),)
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    perms = list(itertools.permutations(range(k)))
    forms = set()
    for bits in range(1 << len(pairs)):
        relation = {pairs[t] for t in range(len(pairs)) if bits >> t & 1}
        if any((i, l) not in relation for i, j in relation for j2, l in relation if j2 == j):
            continue
        forms.add(max(
            tuple(int((perm[u], perm[v]) in relation) for u in range(k) for v in range(k))
            for perm in perms
        ))
    return tuple(sorted(forms))


def linear_extensions(poset: Poset) -> int:
    """Number of linear extensions, counted over down-closed masks."""
    n = poset.size
    counts = [0] * (1 << n)
    counts[0] = 1
    for mask in range(1 << n):
        if not counts[mask]:
            continue
        for i in range(n):
            if not mask >> i & 1 and poset.down[i] & ~(1 << i) & ~mask == 0:
                counts[mask | 1 << i] += counts[mask]
    return counts[-1]


def _order_key(poset: Poset) -> Tuple[int, Tuple[bool, ...]]:
    return linear_extensions(poset), tuple(bool(v) for v in poset.leq.flatten())


@lru_cache(maxsize=None)
def bounded_posets(n: int) -> Tuple[Poset, ...]:
    """
    All bounded posets of size n up to isomorphism.

    Ordered by linear extension count, then by the flattened order matrix.
    """
    if n == 1:
        return (Poset.from_matrix(["0"], [[True]]),)
    k = n - 2
    names = ["0"] + list(INNER_NAMES[:k]) + ["1"]
    posets = []
    for form in inner_posets(k):
        leq = np.eye(n, dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        for u in range(k):
            for v in range(k):
                if form[u * k + v]:
                    leq[1 + u, 1 + v] = True
        posets.append(Poset.from_matrix(names, leq))
    return tuple(sorted(posets, key=_order_key))


@lru_cache(maxsize=None)
def labeled_bounded_posets(n: int) -> Tuple[Poset, ...]:
    """Every bounded order on the labels p0..p{n-1}, without dedupe."""
    names = [f"p{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    posets = []
    for bits in range(1 << len(pairs)):
        leq = np.eye(n, dtype=bool)
        for t, (i, j) in enumerate(pairs):
            if bits >> t & 1:
                leq[i, j] = True
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            continue
        m = leq.astype(np.int64)
        if ((m @ m > 0) & ~leq).any():
            continue
        if not (leq.all(axis=1).any() and leq.all(axis=0).any()):
            continue
        posets.append(Poset.from_matrix(names, leq))
    return tuple(posets)


def automorphisms(poset: Poset) -> List[Tuple[int, ...]]:
    """Non-identity order automorphisms; 0 and 1 are always fixed."""
    n = poset.size
    if n <= 2:
        return []
    result = []
    for inner in itertools.permutations(range(1, n - 1)):
        sigma = (0,) + inner + (n - 1,)
        if all(inner[i - 1] == i for i in range(1, n - 1)):
            continue
        if all(poset.le(sigma[i], sigma[j]) == poset.le(i, j) for i in range(n) for j in range(n)):
            result.append(sigma)
    return result


def involutions(n: int) -> List[Tuple[int, ...]]:
    """All involutive maps on range(n), in lexicographic order."""
    found = []

    def extend(images: List[int]):
        try:
            i = images.index(-1)
        except ValueError:
            found.append(tuple(images))
            return
        for j in range(i, n):
            if images[j] != -1:
                continue
            images[i], images[j] = j, i
            extend(images)
            images[i] = images[j] = -1

    extend([-1] * n)
    return sorted(found)


def candidate_ops(n: int, involutive: bool = False, top_to_bottom: bool = False) -> Iterator[Tuple[int, ...]]:
    """Operations in lexicographic order, optionally restricted to involutions or to 1' = 0."""
    if involutive:
        for op in involutions(n):
            if not top_to_bottom or op[n - 1] == 0:
                yield op
        return
    if top_to_bottom:
        for head in itertools.product(range(n), repeat=n - 1):
            yield head + (0,)
        return
    yield from itertools.product(range(n), repeat=n)


def is_canonical_op(op: Sequence[int], autos: Sequence[Sequence[int]]) -> bool:
    """True when op is lexicographically least among its conjugates sigma . op . sigma^-1."""
    op = tuple(op)
    n = len(op)
    for sigma in autos:
        conjugate = [0] * n
        for i in range(n):
            conjugate[sigma[i]] = sigma[op[i]]
        if tuple(conjugate) < op:
            return False
    return True


def structure_name(poset: Poset, index: int, op: Sequence[int], canonical: bool = True) -> str:
    prefix = "enum" if canonical else "raw"
    return f"{prefix}-n{poset.size}-p{index}-f" + "-".join(poset.elements[i] for i in op)


def enumerate_structured(spec: EnumSpec) -> Iterator[StructuredPoset]:
    """
    Stream every structure of the given size that satisfies the required predicates.

    With spec.canonical, each (order, ') isomorphism class appears exactly once;
    otherwise all labelled bounded orders with all operations are produced.

    Raises:
        SizeCapExceeded: size above the hard cap (7, or the raw cap without dedupe)
    """
    cap = settings.ENUM_SIZE_CAP if spec.canonical else settings.RAW_ENUM_SIZE_CAP
    if spec.size > cap:
        raise SizeCapExceeded(f"Enumeration size {spec.size} is above the cap of {cap}")

    n = spec.size
    checks = [get_predicate(name) for name in spec.require]
    involutive = bool(INVOLUTIVE.intersection(spec.require))
    top_to_bottom = bool(TOP_TO_BOTTOM.intersection(spec.require))
    posets = bounded_posets(n) if spec.canonical else labeled_bounded_posets(n)
    logger.info(f"Enumerating size {n}: {len(posets)} posets, require={list(spec.require)}")

    emitted = 0
    progress = tqdm(posets, desc=f"size {n}", disable=not settings.SHOW_PROGRESS)
    for index, poset in enumerate(progress):
        autos = automorphisms(poset) if spec.canonical else []
        for op in candidate_ops(n, involutive, top_to_bottom):
            if autos and not is_canonical_op(op, autos):
                continue
            structured = StructuredPoset(poset, UnaryOp(op), structure_name(poset, index, op, spec.canonical))
            if all(check(structured).holds for check in checks):
                emitted += 1
                yield structured
    logger.info(f"Size {n}: {emitted} structures")
