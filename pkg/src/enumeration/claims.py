"""Implications between predicates and the counterexample search over them."""

import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from config.config import settings
from src.classify.predicates import PREDICATES, check_condition, get_predicate, one_prime_zero
from src.poset_core.errors import UnknownClaim, UnknownPredicate
from src.poset_core.loader import to_json_dict
from src.poset_core.parallel import ordered_map
from src.poset_core.poset import StructuredPoset
from src.poset_core.reports import CheckResult
from src.residuation.operators import Scheme, build_operators
from src.residuation.verify import verify_definition1
from .generator import EnumSpec, enumerate_structured

logger = logging.getLogger(__name__)

BATCH_SIZE = 256

Check = Callable[[StructuredPoset, Optional[int]], CheckResult]


def _first_failure(name: str, results: Iterable[CheckResult]) -> CheckResult:
    for result in results:
        if not result.holds:
            return result.model_copy(update={"name": name, "note": result.note or f"fails at {result.name}"})
    return CheckResult(name=name, holds=True)


def _definition1_parts(scheme: Scheme, parts: Sequence[str], name: str) -> Check:
    def check(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
        report = verify_definition1(sp, build_operators(sp, scheme), threads)
        return _first_failure(name, (report.check(part) for part in parts))
    return check


def _conditions(numbers: Sequence[int], name: str, with_one_prime_zero: bool = False) -> Check:
    def check(sp: StructuredPoset, threads: Optional[int] = None) -> CheckResult:
        results = (check_condition(sp, number, threads) for number in numbers)
        if with_one_prime_zero:
            results = (*results, one_prime_zero(sp))
        return _first_failure(name, results)
    return check


VOCABULARY: Dict[str, Check] = {
    **PREDICATES,
    "conditions_1_2": _conditions((1, 2), "conditions_1_2"),
    "conditions_7_8": _conditions((7, 8), "conditions_7_8"),
    "cone_hypotheses": _conditions((1, 2), "cone_hypotheses", with_one_prime_zero=True),
    "cone_i_ii": _definition1_parts(Scheme.CONE, ("i", "ii_forward", "ii_backward"), "cone_i_ii"),
    "cone_iii": _definition1_parts(Scheme.CONE, ("iii",), "cone_iii"),
    "meet_i_ii": _definition1_parts(Scheme.MEET, ("i", "ii_forward", "ii_backward"), "meet_i_ii"),
    "meet_iii": _definition1_parts(Scheme.MEET, ("iii",), "meet_iii"),
    "cone_left_residuated": _definition1_parts(
        Scheme.CONE, ("i", "ii_forward", "ii_backward", "iii"), "cone_left_residuated"
    ),
    "meet_residuated": _definition1_parts(
        Scheme.MEET, ("i", "ii_forward", "ii_backward", "iii", "m_commutative"), "meet_residuated"
    ),
}

# Implications with a known answer at desk scale
NAMED_CLAIMS = {
    "boolean=>pseudo_boolean": "every Boolean poset is pseudo-Boolean",
    "pseudo_boolean=>pseudo_orthomodular": "every pseudo-Boolean poset is pseudo-orthomodular",
    "pseudo_orthomodular=>boolean": "false: fig1 and MO2 are pseudo-orthomodular but not Boolean",
    "complementation=>pseudo_orthomodular": "false: the benzene ring O6",
    "pseudo_orthomodular=>conditions_1_2": "pseudo-orthomodular posets satisfy (1) and (2)",
    "pseudo_boolean=>conditions_7_8": "pseudo-Boolean posets satisfy (7) and (8)",
    "cone_hypotheses=>cone_left_residuated": "(1), (2) and 1'=0 give a cone-scheme left residuation",
    "conditions_7_8=>meet_residuated": "(7) and (8) give a commutative meet-scheme residuation",
    "cone_i_ii=>cone_iii": "separating model for (iii) under the cone scheme",
    "meet_i_ii=>meet_iii": "separating model for (iii) under the meet scheme",
}


class Counterexample(BaseModel):
    """A structure satisfying the antecedent of a claim but not its consequent."""

    claim: str
    structure: str
    size: int
    consequent: CheckResult
    poset: Dict


def parse_claim(claim: str) -> Tuple[str, str]:
    """Split 'antecedent=>consequent' and check both names against the vocabulary."""
    parts = claim.split("=>")
    if len(parts) != 2 or not all(part.strip() for part in parts):
        raise UnknownClaim(f"Claim '{claim}' is not of the form 'antecedent=>consequent'")
    antecedent, consequent = (part.strip() for part in parts)
    for name in (antecedent, consequent):
        if name not in VOCABULARY:
            raise UnknownPredicate(
                f"Unknown predicate '{name}' in claim, expected one of: {', '.join(sorted(VOCABULARY))}"
            )
    return antecedent, consequent


def evaluate_claim(sp: StructuredPoset, antecedent: str, consequent: str,
                   threads: Optional[int] = None) -> Optional[CheckResult]:
    """The failing consequent when sp refutes the claim, else None."""
    if not VOCABULARY[antecedent](sp, threads).holds:
        return None
    result = VOCABULARY[consequent](sp, threads)
    return None if result.holds else result


def _batches(structures: Iterable[StructuredPoset], size: int) -> Iterable[List[StructuredPoset]]:
    batch: List[StructuredPoset] = []
    for structure in structures:
        batch.append(structure)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def find_counterexample(spec: EnumSpec, claim: str, fixtures: Sequence[StructuredPoset] = (),
                        min_size: int = 1, threads: Optional[int] = None) -> Optional[Counterexample]:
    """
    First structure refuting the claim, or None.

    Enumerated sizes min_size..min(spec.size, 7) are searched first, in stream
    order, then the fixtures meeting spec.require whose size lies in
    [min_size, spec.size], sorted by (size, name). Structures are evaluated
    in batches across workers.
    """
    antecedent, consequent = parse_claim(claim)
    logger.info(f"Searching for a counterexample to {claim} up to size {spec.size}")

    def refute(sp: StructuredPoset) -> Optional[CheckResult]:
        return evaluate_claim(sp, antecedent, consequent)

    def found(sp: StructuredPoset, result: CheckResult) -> Counterexample:
        logger.info(f"Counterexample to {claim}: {sp.name}")
        return Counterexample(claim=claim, structure=sp.name, size=sp.poset.size,
                              consequent=result, poset=to_json_dict(sp))

    for size in range(min_size, min(spec.size, settings.ENUM_SIZE_CAP) + 1):
        stream = enumerate_structured(EnumSpec(size, spec.require, spec.canonical))
        for batch in _batches(stream, BATCH_SIZE):
            for sp, result in zip(batch, ordered_map(refute, batch, threads)):
                if result is not None:
                    return found(sp, result)

    candidates = sorted(
        (
            sp for sp in fixtures
            if min_size <= sp.poset.size <= spec.size
            and all(get_predicate(name)(sp).holds for name in spec.require)
        ),
        key=lambda sp: (sp.poset.size, sp.name),
    )
    for sp in candidates:
        result = refute(sp)
        if result is not None:
            return found(sp, result)

    logger.info(f"No counterexample to {claim}")
    return None
