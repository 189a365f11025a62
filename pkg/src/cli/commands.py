"""Commands behind the CLI; each returns a RunReport."""

import json
import logging
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from src.classify.predicates import is_complementation, is_lattice
from src.classify.report import CLASSIFY_CHECKS, classify
from src.enumeration.census import census
from src.enumeration.claims import find_counterexample
from src.enumeration.export import export_structures
from src.enumeration.generator import EnumSpec, enumerate_structured
from src.generalized.conditions import generalized_report, verify_corollary2
from src.poset_core.errors import UnknownPredicate
from src.poset_core.loader import list_fixtures, load_fixture, load_structured
from src.poset_core.poset import StructuredPoset
from src.residuation.operators import Scheme, build_lattice_residuation, build_operators
from src.residuation.verify import (
    verify_definition1,
    verify_divisibility_lemma,
    verify_left_adjointness_lattice,
    verify_proposition,
)

logger = logging.getLogger(__name__)

FIRST_STRUCTURES = 20


class RunReport(BaseModel):
    """What one command found. Timings and the text rendering stay out of the JSON."""

    command: str
    input: Optional[str] = None
    passed: bool
    verdicts: Dict[str, bool] = Field(default_factory=dict)
    methods: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)
    timings: Dict[str, float] = Field(default_factory=dict, exclude=True)
    text: str = Field(default="", exclude=True)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2)


class _Timer:
    """Collects wall time per phase and logs it."""

    def __init__(self, command: str):
        self.command = command
        self.timings: Dict[str, float] = {}

    def run(self, phase: str, fn, *args, **kwargs):
        started = time.perf_counter()
        result = fn(*args, **kwargs)
        self.timings[phase] = time.perf_counter() - started
        logger.info(f"{self.command}: {phase} took {self.timings[phase]:.3f}s")
        return result


def resolve_input(source: str) -> StructuredPoset:
    """Load a poset file, or a bundled fixture when given a bare fixture name."""
    path = Path(source)
    if not path.exists() and source in list_fixtures():
        return load_fixture(source)
    return load_structured(path)


def cmd_classify(source: str, expect: Sequence[str] = (), threads: Optional[int] = None) -> RunReport:
    """
    Classify one poset file.

    The run passes unless a predicate named in expect is false.
    """
    for name in expect:
        if name not in CLASSIFY_CHECKS:
            raise UnknownPredicate(f"Unknown predicate '{name}' in --expect")
    timer = _Timer("classify")
    sp = timer.run("load", resolve_input, source)
    report = timer.run("classify", classify, sp, threads)
    verdicts = {name: result.holds for name, result in report.checks.items()}
    passed = all(verdicts[name] for name in expect)
    return RunReport(
        command="classify", input=sp.name, passed=passed, verdicts=verdicts, methods=["direct"],
        details={"classify": report.model_dump(mode="json")},
        timings=timer.timings, text=report.to_text(),
    )


def cmd_residuate(source: str, scheme: str = "cone", threads: Optional[int] = None) -> RunReport:
    """
    Verify operator residuation under one scheme.

    Passes when (i), (ii), (iii), the divisibility lemma and, if its
    hypothesis holds, the M/R definability check all pass.
    """
    scheme = Scheme(scheme)
    timer = _Timer("residuate")
    sp = timer.run("load", resolve_input, source)
    table = timer.run("operators", build_operators, sp, scheme)
    definition = timer.run("definition", verify_definition1, sp, table, threads)
    lemma = timer.run("lemma", verify_divisibility_lemma, sp, table, threads)
    proposition = timer.run("proposition", verify_proposition, sp, scheme, threads)
    hypothesis_met = all(proposition.flags.values())

    verdicts = {result.name: result.holds for result in definition.checks}
    verdicts["divisibility_lemma"] = lemma.holds
    verdicts["proposition"] = proposition.holds
    verdicts["operator_left_residuated"] = definition.holds
    verdicts["operator_residuated"] = definition.holds and definition.flags["m_commutative"]
    details = {
        "definition1": definition.model_dump(mode="json"),
        "divisibility_lemma": lemma.model_dump(mode="json"),
        "proposition": proposition.model_dump(mode="json"),
    }
    sections = [definition, lemma, proposition]

    if is_lattice(sp).holds and is_complementation(sp, threads).holds:
        lattice_table = build_lattice_residuation(sp)
        adjointness = timer.run("lattice", verify_left_adjointness_lattice, sp, lattice_table, threads)
        verdicts["lattice_left_adjointness"] = adjointness.holds
        details["lattice_adjointness"] = adjointness.model_dump(mode="json")
        sections.append(adjointness)

    passed = definition.holds and lemma.holds and (proposition.holds or not hypothesis_met)
    return RunReport(
        command="residuate", input=sp.name, passed=passed, verdicts=verdicts, methods=["direct"],
        details=details, timings=timer.timings,
        text="\n".join(section.to_text() for section in sections),
    )


def cmd_generalized(source: str, direction: str = "both", method: str = "both",
                    triple_cap: Optional[int] = None, pair_cap: Optional[int] = None,
                    prune: bool = True, include_empty_c: bool = False,
                    threads: Optional[int] = None) -> RunReport:
    """Subset-level adjointness; passes when the requested directions hold and the methods agree."""
    timer = _Timer("generalized")
    sp = timer.run("load", resolve_input, source)
    report = timer.run(
        "adjointness", generalized_report, sp, direction=direction, method=method, prune=prune,
        include_empty_c=include_empty_c, triple_cap=triple_cap, pair_cap=pair_cap, threads=threads,
    )
    corollary = timer.run("corollary", verify_corollary2, sp, prune=prune, pair_cap=pair_cap, threads=threads)

    verdicts = {f"{result.name}[{result.method}]": result.holds for result in report.checks}
    verdicts.update(report.flags)
    verdicts["generalized_residuated"] = corollary.holds
    return RunReport(
        command="generalized", input=sp.name, passed=report.holds, verdicts=verdicts,
        methods=sorted({result.method for result in report.checks}),
        details={"adjointness": report.model_dump(mode="json"), "corollary": corollary.model_dump(mode="json")},
        timings=timer.timings, text=report.to_text() + "\n" + corollary.to_text(),
    )


def cmd_enumerate(size: int, require: Sequence[str] = (), claim: Optional[str] = None,
                  with_census: bool = False, export_dir: Optional[str] = None, raw: bool = False,
                  with_fixtures: bool = False, min_size: int = 1,
                  threads: Optional[int] = None) -> RunReport:
    """
    Enumerate structures, search a claim for a counterexample, or tabulate a census.

    With a claim the run fails exactly when a counterexample is found.
    """
    timer = _Timer("enumerate")
    spec = EnumSpec(size, tuple(require), canonical=not raw)

    if claim:
        fixtures = [load_fixture(name) for name in list_fixtures()] if with_fixtures else []
        found = timer.run("search", find_counterexample, spec, claim, fixtures, min_size, threads)
        text = f"{claim}: no counterexample up to size {size}"
        if found is not None:
            text = f"{claim}: counterexample {found.structure} ({found.size} elements)"
        return RunReport(
            command="enumerate", input=claim, passed=found is None, verdicts={claim: found is None},
            methods=["direct"],
            details={"counterexample": found.model_dump(mode="json") if found else None, "size": size},
            timings=timer.timings, text=text,
        )

    structures = timer.run("enumerate", lambda: list(enumerate_structured(spec)))
    details: Dict[str, Any] = {
        "size": size,
        "require": list(spec.require),
        "canonical": spec.canonical,
        "count": len(structures),
        "first": [sp.name for sp in structures[:FIRST_STRUCTURES]],
    }
    text = f"size {size}, require {list(spec.require)}: {len(structures)} structures"
    if export_dir:
        paths = timer.run("export", export_structures, structures, export_dir)
        details["exported"] = len(paths)
    if with_census:
        frame = timer.run("census", census, range(1, size + 1), spec.require, threads)
        details["census"] = json.loads(frame.reset_index().to_json(orient="records"))
        text += "\n" + frame.to_string()
    return RunReport(
        command="enumerate", input=None, passed=True, methods=["direct"],
        details=details, timings=timer.timings, text=text,
    )


def cmd_tables(source: str, scheme: str = "cone") -> RunReport:
    sp = resolve_input(source)
    table = build_operators(sp, Scheme(scheme))
    rows = table.rows()
    return RunReport(
        command="tables", input=sp.name, passed=True, details={"scheme": table.scheme.value, "rows": rows},
        text="\n".join(rows),
    )
