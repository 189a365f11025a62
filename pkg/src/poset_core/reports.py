"""Check results and witnesses shared by every verifier."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class Witness(BaseModel):
    """A concrete assignment on which an identity fails."""

    identity: str
    assignment: Dict[str, str]
    left: List[str]
    right: List[str]
    details: Dict[str, List[str]] = Field(default_factory=dict)


class CheckResult(BaseModel):
    """Outcome of one named check. A failing check carries its least witness."""

    name: str
    holds: bool
    witness: Optional[Witness] = None
    method: str = "direct"
    note: Optional[str] = None


def all_hold(results: List[CheckResult]) -> bool:
    return all(result.holds for result in results)


def format_witness(witness: Witness) -> str:
    assignment = ", ".join(f"{var}={value}" for var, value in witness.assignment.items())
    left = "{" + ",".join(witness.left) + "}"
    right = "{" + ",".join(witness.right) + "}"
    text = f"{witness.identity} fails at {assignment or 'the constants'}: left {left}, right {right}"
    for key, names in witness.details.items():
        text += f", {key} = {{{','.join(names)}}}"
    return text


def format_result(result: CheckResult, width: int = 28) -> str:
    """One report line: name, verdict and (for failures) the witness."""
    line = f"  {result.name:<{width}} {'yes' if result.holds else 'no'}"
    if result.method != "direct":
        line += f" [{result.method}]"
    if result.witness is not None:
        line += f"  ({format_witness(result.witness)})"
    if result.note:
        line += f"  note: {result.note}"
    return line
