"""Full classification report for one structured poset."""

import logging
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel

from src.poset_core.poset import StructuredPoset
from src.poset_core.reports import CheckResult, format_result
from .predicates import (
    check_condition,
    is_antitone,
    is_antitone_involution,
    is_boolean_poset,
    is_complementation,
    is_distributive,
    is_involution,
    is_lattice,
    is_orthomodular_lattice,
    is_orthomodular_lattice_dual,
    is_pseudo_boolean,
    is_pseudo_boolean_dual,
    is_pseudo_orthomodular,
    is_pseudo_orthomodular_dual,
    distributive_identity,
    one_prime_zero,
)

logger = logging.getLogger(__name__)

# Report order
CLASSIFY_CHECKS: Dict[str, Callable[[StructuredPoset, Optional[int]], CheckResult]] = {
    "complementation": is_complementation,
    "antitone": is_antitone,
    "involution": is_involution,
    "antitone_involution": is_antitone_involution,
    "one_prime_zero": one_prime_zero,
    "distributive": is_distributive,
    "distributive_dual": lambda sp, threads: distributive_identity(sp, 2, threads),
    "boolean": is_boolean_poset,
    "pseudo_boolean": is_pseudo_boolean,
    "pseudo_boolean_dual": is_pseudo_boolean_dual,
    "pseudo_orthomodular": is_pseudo_orthomodular,
    "pseudo_orthomodular_dual": is_pseudo_orthomodular_dual,
    "lattice": lambda sp, threads: is_lattice(sp),
    "orthomodular_lattice": is_orthomodular_lattice,
    "orthomodular_lattice_dual": is_orthomodular_lattice_dual,
    "condition_1": lambda sp, threads: check_condition(sp, 1, threads),
    "condition_2": lambda sp, threads: check_condition(sp, 2, threads),
    "condition_7": lambda sp, threads: check_condition(sp, 7, threads),
    "condition_8": lambda sp, threads: check_condition(sp, 8, threads),
}


class ClassReport(BaseModel):
    """Per-predicate verdicts for one structure, keyed by predicate name."""

    structure: str
    elements: List[str]
    checks: Dict[str, CheckResult]

    def verdict(self, name: str) -> bool:
        return self.checks[name].holds

    def failing(self) -> List[str]:
        return [name for name, result in self.checks.items() if not result.holds]

    def to_text(self) -> str:
        lines = [f"{self.structure} ({len(self.elements)} elements)"]
        lines.extend(format_result(result) for result in self.checks.values())
        return "\n".join(lines)


def classify(sp: StructuredPoset, threads: Optional[int] = None) -> ClassReport:
    """
    Run every structural predicate on sp.

    Args:
        sp: Structured poset (must be bounded)
        threads: Worker budget for the per-pair and per-triple scans

    Returns:
        ClassReport with one CheckResult per predicate
    """
    logger.info(f"Classifying {sp.name} ({sp.poset.size} elements)")
    checks = {name: check(sp, threads) for name, check in CLASSIFY_CHECKS.items()}
    for name, result in checks.items():
        logger.debug(f"{sp.name}: {name} = {result.holds}")
    return ClassReport(structure=sp.name, elements=list(sp.poset.elements), checks=checks)
