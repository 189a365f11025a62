"""Checks of operator (left) residuation on a fixed structured poset."""

import logging
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from src.classify.predicates import is_complementation, is_pseudo_orthomodular, require_bounds
from src.poset_core.poset import StructuredPoset
from src.poset_core.reports import CheckResult, all_hold, format_result
from src.poset_core.scan import scan
from .operators import LatticeResiduationTable, OperatorTable, Scheme, build_operators

logger = logging.getLogger(__name__)


class VerifyReport(BaseModel):
    """Results of one verification subject (definition, lemma, proposition, adjointness)."""

    structure: str
    subject: str
    scheme: Optional[str] = None
    holds: bool
    checks: List[CheckResult]
    flags: Dict[str, bool] = Field(default_factory=dict)
    label: Optional[str] = None

    def check(self, name: str) -> CheckResult:
        return next(result for result in self.checks if result.name == name)

    def to_text(self) -> str:
        header = f"{self.subject}"
        if self.scheme:
            header += f" ({self.scheme} scheme)"
        header += f": {'pass' if self.holds else 'FAIL'}"
        if self.label:
            header += f" - {self.label}"
        lines = [header]
        lines.extend(format_result(result) for result in self.checks)
        lines.extend(f"  {name:<28} {'yes' if value else 'no'}" for name, value in self.flags.items())
        return "\n".join(lines)


def verify_definition1(sp: StructuredPoset, table: OperatorTable, threads: Optional[int] = None) -> VerifyReport:
    """
    Check the operator residuation axioms for the given M and R.

    (i)   M(x,1) = M(1,x) = L(x)
    (ii)  M(x,y) <= L(z) iff L(x) <= R(y,z), reported per direction
    (iii) R(x,0) = L(x')

    Commutativity of M is recorded and upgrades "left residuated" to "residuated".
    """
    p, prime = sp.poset, sp.op.images
    bottom, top = require_bounds(p, "Definition of operator residuation")
    m, r, down = table.m, table.r, p.down
    logger.info(f"Verifying operator residuation of {sp.name} ({table.scheme.value} scheme)")

    def unit(x):
        yield "M(x,1) = L(x)", m[x][top], down[x], "eq", None
        yield "M(1,x) = L(x)", m[top][x], down[x], "eq", None

    def forward(x, y, z):
        if m[x][y] & ~down[z] == 0:
            yield ("M(x,y) <= L(z) implies L(x) <= R(y,z)", down[x], r[y][z], "sub",
                   {"M(x,y)": m[x][y], "L(z)": down[z]})

    def backward(x, y, z):
        if down[x] & ~r[y][z] == 0:
            yield ("L(x) <= R(y,z) implies M(x,y) <= L(z)", m[x][y], down[z], "sub",
                   {"L(x)": down[x], "R(y,z)": r[y][z]})

    def zero(x):
        yield "R(x,0) = L(x')", r[x][bottom], down[prime[x]], "eq", None

    def commutative(x, y):
        yield "M(x,y) = M(y,x)", m[x][y], m[y][x], "eq", None

    checks = [
        scan(p, 1, unit, "i", threads),
        scan(p, 3, forward, "ii_forward", threads),
        scan(p, 3, backward, "ii_backward", threads),
        scan(p, 1, zero, "iii", threads),
    ]
    m_commutative = scan(p, 2, commutative, "m_commutative", threads)
    holds = all_hold(checks)
    if holds:
        label = "operator residuated" if m_commutative.holds else "operator left residuated"
    else:
        label = "not operator left residuated"
    logger.info(f"{sp.name}: {label}")
    return VerifyReport(
        structure=sp.name,
        subject="definition1",
        scheme=table.scheme.value,
        holds=holds,
        checks=checks + [m_commutative],
        flags={"m_commutative": m_commutative.holds},
        label=label,
    )


def verify_divisibility_lemma(sp: StructuredPoset, table: OperatorTable, threads: Optional[int] = None) -> VerifyReport:
    """R(x,y) = P exactly when x <= y, over all pairs."""
    p = sp.poset
    r, full = table.r, p.full

    def sides(x, y):
        if p.le(x, y):
            yield "x <= y implies R(x,y) = P", r[x][y], full, "eq", None
        elif r[x][y] == full:
            yield "R(x,y) = P implies x <= y", p.down[x], p.down[y], "sub", {"R(x,y)": r[x][y]}

    result = scan(p, 2, sides, "divisibility", threads)
    return VerifyReport(
        structure=sp.name, subject="divisibility_lemma", scheme=table.scheme.value,
        holds=result.holds, checks=[result],
    )


def verify_proposition(sp: StructuredPoset, scheme: Scheme = Scheme.CONE,
                       threads: Optional[int] = None) -> VerifyReport:
    """
    Check that M and R define each other through '.

    L((M(y',x))') = R(x,y) and L((R(y,x'))') = M(x,y) over all pairs. The
    stated hypothesis (pseudo-orthomodular for the cone scheme, complementation
    for the meet scheme) is evaluated and flagged; the check runs either way.
    """
    scheme = Scheme(scheme)
    p, op = sp.poset, sp.op
    prime = op.images
    table = build_operators(sp, scheme)
    m, r = table.m, table.r

    if scheme is Scheme.CONE:
        hypothesis = "pseudo_orthomodular"
        hypothesis_met = is_pseudo_orthomodular(sp, threads).holds
    else:
        hypothesis = "complementation"
        hypothesis_met = is_complementation(sp, threads).holds
    if not hypothesis_met:
        logger.warning(f"{sp.name}: hypothesis '{hypothesis}' of the M/R definability check is not met")

    def r_from_m(x, y):
        source = m[prime[y]][x]
        yield ("L((M(y',x))') = R(x,y)", p.lower(op.image(source)), r[x][y], "eq",
               {"M(y',x)": source})

    def m_from_r(x, y):
        source = r[y][prime[x]]
        yield ("L((R(y,x'))') = M(x,y)", p.lower(op.image(source)), m[x][y], "eq",
               {"R(y,x')": source})

    checks = [
        scan(p, 2, r_from_m, "r_from_m", threads),
        scan(p, 2, m_from_r, "m_from_r", threads),
    ]
    return VerifyReport(
        structure=sp.name, subject="proposition", scheme=scheme.value,
        holds=all_hold(checks), checks=checks, flags={f"hypothesis_{hypothesis}": hypothesis_met},
    )


def verify_left_adjointness_lattice(sp: StructuredPoset, table: LatticeResiduationTable,
                                    threads: Optional[int] = None) -> VerifyReport:
    """
    Check x*y <= z iff x <= y->z for the lattice operations, plus the unit
    law x*1 = 1*x = x and x->0 = x'. Commutativity of * is recorded.
    """
    p, prime = sp.poset, sp.op.images
    bottom, top = require_bounds(p, "lattice residuation")
    odot, arrow, down = table.odot, table.arrow, p.down

    def adjointness(x, y, z):
        product, implication = odot[x][y], arrow[y][z]
        if p.le(product, z):
            yield ("x*y <= z implies x <= y->z", down[x], down[implication], "sub",
                   {"x*y": 1 << product, "y->z": 1 << implication})
        if p.le(x, implication):
            yield ("x <= y->z implies x*y <= z", down[product], down[z], "sub",
                   {"x*y": 1 << product, "y->z": 1 << implication})

    def unit(x):
        yield "x*1 = x", 1 << odot[x][top], 1 << x, "eq", None
        yield "1*x = x", 1 << odot[top][x], 1 << x, "eq", None

    def arrow_zero(x):
        yield "x->0 = x'", 1 << arrow[x][bottom], 1 << prime[x], "eq", None

    def commutative(x, y):
        yield "x*y = y*x", 1 << odot[x][y], 1 << odot[y][x], "eq", None

    checks = [
        scan(p, 3, adjointness, "adjointness", threads),
        scan(p, 1, unit, "unit_law", threads),
        scan(p, 1, arrow_zero, "arrow_zero", threads),
    ]
    odot_commutative = scan(p, 2, commutative, "odot_commutative", threads)
    holds = all_hold(checks)
    if holds:
        label = "residuated lattice" if odot_commutative.holds else "left residuated lattice"
    else:
        label = "not left residuated"
    return VerifyReport(
        structure=sp.name, subject="lattice_adjointness", holds=holds,
        checks=checks + [odot_commutative],
        flags={"odot_commutative": odot_commutative.holds, "complemented": table.complemented},
        label=label,
    )
