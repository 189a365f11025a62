"""
Subset-level residuation checks.

Conditions (11) and (12) quantify over pairs of subsets, the adjointness
directions (15) and (16) over triples. The pair conditions decide the triple
ones, which is what theorem3_reduction uses for carriers above the triple cap.
Searches run over one representative (the least mask) per class of subsets
that the formula cannot tell apart; the least failing tuple is always made of
representatives, so pruned and unpruned runs report the same witness.
"""

import itertools
import logging
import time
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from config.config import settings
from src.classify.predicates import require_bounds
from src.poset_core.errors import CarrierTooLarge
from src.poset_core.parallel import least_hit
from src.poset_core.poset import StructuredPoset
from src.poset_core.reports import CheckResult, Witness, all_hold, format_result
from src.residuation.operators import Scheme, build_operators
from src.residuation.verify import verify_definition1
from .subset_operators import ConeTables, all_subset_cones, singleton_cones

logger = logging.getLogger(__name__)

SUBSET_VARIABLES = ("A", "B", "C")
ELEMENT_VARIABLES = ("x", "y", "z")

# Templates are filled with the variable names of the domain
IDENTITIES = {
    11: "L({A}) <= L(U(L({A},{B}),{B}'))",
    12: "L(U({A},{B}'),{B}) <= L({A})",
    15: "M({A},{B}) <= L({C}) implies L({A}) <= R({B},{C})",
    16: "L({A}) <= R({B},{C}) implies M({A},{B}) <= L({C})",
}

Failure = Optional[Tuple[int, int, Dict[str, int]]]


class GeneralizedReport(BaseModel):
    """Subset-level verdicts for one structure."""

    structure: str
    holds: bool
    checks: List[CheckResult]
    flags: Dict[str, bool] = Field(default_factory=dict)
    label: Optional[str] = None

    def check(self, name: str, method: Optional[str] = None) -> CheckResult:
        return next(
            result for result in self.checks
            if result.name == name and (method is None or result.method == method)
        )

    def to_text(self) -> str:
        lines = [f"{self.structure}: {'pass' if self.holds else 'FAIL'}" + (f" - {self.label}" if self.label else "")]
        lines.extend(format_result(result) for result in self.checks)
        lines.extend(f"  {name:<28} {'yes' if value else 'no'}" for name, value in self.flags.items())
        return "\n".join(lines)


class SubsetDomain:
    """The range of the variables: all subsets, or singletons only."""

    def __init__(self, sp: StructuredPoset, singletons: bool = False):
        """
        Initialize the domain and its cone tables.

        Args:
            sp: Structured poset
            singletons: Restrict every variable to one-element subsets
        """
        self.sp = sp
        self.singletons = singletons
        n = sp.poset.size
        if singletons:
            self.masks: Sequence[int] = [1 << i for i in range(n)]
            self.cones: ConeTables = singleton_cones(sp)
            self.variables = ELEMENT_VARIABLES
        else:
            self.masks = range(1 << n)
            self.cones = all_subset_cones(sp)
            self.variables = SUBSET_VARIABLES

    def render(self, mask: int) -> str:
        poset = self.sp.poset
        if self.singletons:
            return poset.elements[mask.bit_length() - 1]
        return poset.format(mask)

    def witness(self, number: int, args: Sequence[int], failure: Tuple[int, int, Dict[str, int]]) -> Witness:
        poset = self.sp.poset
        names = dict(zip(SUBSET_VARIABLES, self.variables))
        left, right, details = failure
        return Witness(
            identity=IDENTITIES[number].format(**names),
            assignment={var: self.render(arg) for var, arg in zip(self.variables, args)},
            left=poset.names(left),
            right=poset.names(right),
            details={key.format(**names): poset.names(mask) for key, mask in details.items()},
        )


def representatives(masks: Sequence[int], key: Callable[[int], Hashable]) -> List[int]:
    """Least mask of every key class, in ascending order."""
    seen = set()
    chosen = []
    for mask in masks:
        k = key(mask)
        if k not in seen:
            seen.add(k)
            chosen.append(mask)
    return chosen


def _check_cap(sp: StructuredPoset, cap: int, kind: str, hint: str = "") -> None:
    if sp.poset.size > cap:
        raise CarrierTooLarge(
            f"{sp.name} has {sp.poset.size} elements, the {kind} cap is {cap}{hint}"
        )


def _search(domains: Sequence[Sequence[int]], evaluate: Callable[..., Failure], threads: Optional[int]):
    heads, rest = domains[0], domains[1:]

    def scan_slice(chunk):
        for head in chunk:
            for tail in itertools.product(*rest):
                args = (head,) + tail
                failure = evaluate(*args)
                if failure is not None:
                    return args, failure
        return None

    return least_hit(heads, scan_slice, threads)


def _result(domain: SubsetDomain, number: int, hit, method: str = "direct", note: Optional[str] = None) -> CheckResult:
    name = f"condition_{number}"
    if hit is None:
        return CheckResult(name=name, holds=True, method=method, note=note)
    args, failure = hit
    return CheckResult(name=name, holds=False, method=method, note=note,
                       witness=domain.witness(number, args, failure))


def check_condition_11(sp: StructuredPoset, prune: bool = True, pair_cap: Optional[int] = None,
                       threads: Optional[int] = None, singletons: bool = False) -> CheckResult:
    """
    L(A) <= L(U(L(A,B),B')) for all subsets A, B.

    Raises CarrierTooLarge above the pair cap (singleton runs are exempt).
    """
    if not singletons:
        _check_cap(sp, settings.PAIR_CAP if pair_cap is None else pair_cap, "pair")
    p = sp.poset
    domain = SubsetDomain(sp, singletons)
    lower, prime_upper = domain.cones.lower, domain.cones.prime_upper

    a_masks, b_masks = domain.masks, domain.masks
    if prune:
        a_masks = representatives(domain.masks, lambda a: lower[a])
        b_masks = representatives(domain.masks, lambda b: (lower[b], prime_upper[b]))

    def evaluate(a, b):
        la = lower[a]
        right = p.lower(p.upper(la & lower[b]) & prime_upper[b])
        if la & ~right:
            return la, right, {}
        return None

    started = time.perf_counter()
    hit = _search([a_masks, b_masks], evaluate, threads)
    logger.info(f"{sp.name}: condition (11) over {len(a_masks)}x{len(b_masks)} pairs "
                f"in {time.perf_counter() - started:.3f}s")
    return _result(domain, 11, hit)


def check_condition_12(sp: StructuredPoset, prune: bool = True, pair_cap: Optional[int] = None,
                       threads: Optional[int] = None, singletons: bool = False) -> CheckResult:
    """L(U(A,B'),B) <= L(A) for all subsets A, B."""
    if not singletons:
        _check_cap(sp, settings.PAIR_CAP if pair_cap is None else pair_cap, "pair")
    p = sp.poset
    domain = SubsetDomain(sp, singletons)
    lower, upper, prime_upper = domain.cones.lower, domain.cones.upper, domain.cones.prime_upper

    a_masks, b_masks = domain.masks, domain.masks
    if prune:
        a_masks = representatives(domain.masks, lambda a: (lower[a], upper[a]))
        b_masks = representatives(domain.masks, lambda b: (lower[b], prime_upper[b]))

    def evaluate(a, b):
        left = p.lower(upper[a] & prime_upper[b]) & lower[b]
        if left & ~lower[a]:
            return left, lower[a], {}
        return None

    started = time.perf_counter()
    hit = _search([a_masks, b_masks], evaluate, threads)
    logger.info(f"{sp.name}: condition (12) over {len(a_masks)}x{len(b_masks)} pairs "
                f"in {time.perf_counter() - started:.3f}s")
    return _result(domain, 12, hit)


def check_generalized_adjointness(sp: StructuredPoset, direction: int, prune: bool = True,
                                  include_empty_c: bool = False, triple_cap: Optional[int] = None,
                                  sample_c: Optional[int] = None, seed: int = 0,
                                  threads: Optional[int] = None, singletons: bool = False) -> CheckResult:
    """
    Check one direction of subset-level adjointness over all triples (A, B, C).

    15: M(A,B) <= L(C) implies L(A) <= R(B,C)
    16: L(A) <= R(B,C) implies M(A,B) <= L(C)

    Args:
        sp: Structured poset
        direction: 15 or 16
        prune: Search one representative per indistinguishable class
        include_empty_c: Let C range over the empty set as well
        triple_cap: Carrier cap for triple enumeration (optional, uses config if not provided)
        sample_c: Check only this many C masks drawn with the given seed; the result is tagged "sampled"
        seed: Seed for sample_c
        threads: Worker budget
        singletons: Restrict A, B, C to singletons

    Returns:
        CheckResult named condition_15 or condition_16
    """
    if direction not in (15, 16):
        raise ValueError(f"direction must be 15 or 16, got {direction}")
    if not singletons:
        _check_cap(sp, settings.TRIPLE_CAP if triple_cap is None else triple_cap, "triple",
                   " (use theorem3_reduction, or --method reduction, for larger carriers)")
    p = sp.poset
    domain = SubsetDomain(sp, singletons)
    lower, upper, prime_upper = domain.cones.lower, domain.cones.upper, domain.cones.prime_upper

    a_masks, b_masks = domain.masks, domain.masks
    c_masks = domain.masks if singletons or include_empty_c else range(1, 1 << p.size)
    method = "direct"
    if sample_c is not None and not singletons:
        rng = np.random.default_rng(seed)
        pool = np.fromiter(c_masks, dtype=np.int64)
        chosen = rng.choice(pool, size=min(sample_c, len(pool)), replace=False)
        c_masks = sorted(int(c) for c in chosen)
        method = "sampled"
        logger.warning(f"{sp.name}: condition ({direction}) checked on {len(c_masks)} sampled C only")
    if prune:
        a_masks = representatives(a_masks, lambda a: lower[a])
        b_masks = representatives(b_masks, lambda b: (lower[b], prime_upper[b]))
        c_masks = representatives(c_masks, lambda c: (lower[c], upper[c]))
    r_table = {(b, c): p.lower(upper[c] & prime_upper[b]) for b in b_masks for c in c_masks}

    if direction == 15:
        def evaluate(a, b, c):
            la, lc = lower[a], lower[c]
            m = la & lower[b]
            if m & ~lc:
                return None
            r = r_table[b, c]
            if la & ~r:
                return la, r, {"M({A},{B})": m, "L({C})": lc}
            return None
    else:
        def evaluate(a, b, c):
            la, r = lower[a], r_table[b, c]
            if la & ~r:
                return None
            m, lc = la & lower[b], lower[c]
            if m & ~lc:
                return m, lc, {"L({A})": la, "R({B},{C})": r}
            return None

    started = time.perf_counter()
    hit = _search([a_masks, b_masks, c_masks], evaluate, threads)
    logger.info(f"{sp.name}: condition ({direction}) over {len(a_masks)}x{len(b_masks)}x{len(c_masks)} "
                f"triples in {time.perf_counter() - started:.3f}s")
    note = "C ranges over the empty set too" if include_empty_c and not singletons else None
    return _result(domain, direction, hit, method, note)


def theorem3_reduction(sp: StructuredPoset, prune: bool = True, pair_cap: Optional[int] = None,
                       threads: Optional[int] = None) -> List[CheckResult]:
    """
    Verdicts of (15) and (16) obtained from (11) and (12).

    The witnesses are the refuting pairs of (11) and (12).
    """
    results = []
    for direction, check in ((15, check_condition_11), (16, check_condition_12)):
        source = check(sp, prune=prune, pair_cap=pair_cap, threads=threads)
        results.append(CheckResult(
            name=f"condition_{direction}",
            holds=source.holds,
            witness=source.witness,
            method="reduction",
            note=None if source.holds else f"refuted through {source.name}",
        ))
    return results


def verify_corollary2(sp: StructuredPoset, prune: bool = True, pair_cap: Optional[int] = None,
                      threads: Optional[int] = None) -> GeneralizedReport:
    """
    Decide generalized operator residuation from (11) and (12).

    The unit law and R(x,0) = L(x') are taken on singletons with the
    meet-scheme operators; M(A,B) = L(A u B) is symmetric, so the verdict is
    "residuated" whenever it holds.
    """
    require_bounds(sp.poset, "generalized operator residuation")
    definition = verify_definition1(sp, build_operators(sp, Scheme.MEET), threads)
    checks = [
        check_condition_11(sp, prune=prune, pair_cap=pair_cap, threads=threads),
        check_condition_12(sp, prune=prune, pair_cap=pair_cap, threads=threads),
        definition.check("i"),
        definition.check("iii"),
    ]
    holds = all_hold(checks)
    label = "generalized operator residuated" if holds else "not generalized operator residuated"
    return GeneralizedReport(
        structure=sp.name, holds=holds, checks=checks,
        flags={"m_commutative": definition.flags["m_commutative"]}, label=label,
    )


def restrict_to_singletons(sp: StructuredPoset, threads: Optional[int] = None) -> Dict[int, CheckResult]:
    """Conditions (11), (12), (15), (16) with every variable ranging over singletons."""
    return {
        11: check_condition_11(sp, prune=False, threads=threads, singletons=True),
        12: check_condition_12(sp, prune=False, threads=threads, singletons=True),
        15: check_generalized_adjointness(sp, 15, prune=False, threads=threads, singletons=True),
        16: check_generalized_adjointness(sp, 16, prune=False, threads=threads, singletons=True),
    }


def generalized_report(sp: StructuredPoset, direction: str = "both", method: str = "both",
                       prune: bool = True, include_empty_c: bool = False,
                       triple_cap: Optional[int] = None, pair_cap: Optional[int] = None,
                       sample_c: Optional[int] = None, seed: int = 0,
                       threads: Optional[int] = None) -> GeneralizedReport:
    """
    Run the requested directions with the requested methods.

    The report holds when every requested direction holds and, with
    method "both", the direct and reduction verdicts agree.
    """
    directions = (15, 16) if direction == "both" else (int(direction),)
    logger.info(f"Generalized check of {sp.name}: directions {directions}, method {method}")

    reductions: Dict[int, CheckResult] = {}
    if method in ("reduction", "both"):
        reductions = dict(zip((15, 16), theorem3_reduction(sp, prune=prune, pair_cap=pair_cap, threads=threads)))

    checks: List[CheckResult] = []
    flags: Dict[str, bool] = {}
    for d in directions:
        verdicts = []
        if method in ("direct", "both"):
            direct = check_generalized_adjointness(
                sp, d, prune=prune, include_empty_c=include_empty_c, triple_cap=triple_cap,
                sample_c=sample_c, seed=seed, threads=threads,
            )
            checks.append(direct)
            verdicts.append(direct.holds)
        if d in reductions:
            checks.append(reductions[d])
            verdicts.append(reductions[d].holds)
        if len(verdicts) == 2:
            flags[f"methods_agree_{d}"] = verdicts[0] == verdicts[1]
            if verdicts[0] != verdicts[1]:
                logger.error(f"{sp.name}: direct and reduction verdicts of ({d}) disagree")

    holds = all_hold(checks) and all(flags.values())
    if direction == "both":
        label = "generalized operator residuated" if all_hold(checks) else "not generalized operator residuated"
    else:
        label = None
    return GeneralizedReport(structure=sp.name, holds=holds, checks=checks, flags=flags, label=label)
