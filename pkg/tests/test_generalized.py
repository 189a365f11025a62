"""Subset-level conditions, their reduction to pairs and the singleton restriction."""

import logging

import numpy as np
import pytest

from src.classify.predicates import check_condition, is_lattice
from src.enumeration.generator import bounded_posets
from src.generalized.conditions import (
    check_condition_11,
    check_condition_12,
    check_generalized_adjointness,
    generalized_report,
    restrict_to_singletons,
    theorem3_reduction,
    verify_corollary2,
)
from src.generalized.subset_operators import SubsetOperatorTable, all_subset_cones
from src.poset_core.errors import CarrierTooLarge
from src.poset_core.poset import StructuredPoset, Subset, UnaryOp
from src.residuation.operators import Scheme, build_operators
from src.residuation.verify import verify_definition1


def test_chain2_condition_12_witness(structure):
    result = check_condition_12(structure("chain2"))

    assert not result.holds
    assert result.witness.identity == "L(U(A,B'),B) <= L(A)"
    assert result.witness.assignment == {"A": "{0,1}", "B": "{}"}
    assert result.witness.left == ["0", "1"]
    assert result.witness.right == ["0"]


def test_chain2_condition_16_witness(structure):
    result = check_generalized_adjointness(structure("chain2"), 16)

    assert not result.holds
    assert result.witness.assignment == {"A": "{}", "B": "{}", "C": "{0,1}"}
    assert result.witness.left == ["0", "1"]
    assert result.witness.right == ["0"]
    assert result.witness.details == {"L(A)": ["0", "1"], "R(B,C)": ["0", "1"]}


def test_chain2_condition_15(structure):
    sp = structure("chain2")

    assert check_condition_11(sp).holds
    assert check_generalized_adjointness(sp, 15).holds

    with_empty = check_generalized_adjointness(sp, 15, include_empty_c=True)
    assert not with_empty.holds
    assert with_empty.witness.assignment == {"A": "{}", "B": "{}", "C": "{}"}
    assert with_empty.note == "C ranges over the empty set too"


@pytest.mark.parametrize("name", ["chain2", "boole4", "m3", "o6", "mo2"])
def test_condition_12_fails_above_one_element(structure, name):
    """B = {} and A = P always refute (12) once 0 and 1 differ."""
    assert not check_condition_12(structure(name)).holds


def test_condition_11_on_boolean_algebras(structure):
    assert check_condition_11(structure("boole4")).holds
    assert check_condition_11(structure("boole8")).holds


@pytest.mark.parametrize("name", ["chain2", "boole4", "m3"])
def test_pruning_keeps_the_least_witness(structure, name):
    sp = structure(name)

    assert check_condition_11(sp, prune=True) == check_condition_11(sp, prune=False)
    assert check_condition_12(sp, prune=True) == check_condition_12(sp, prune=False)
    for direction in (15, 16):
        pruned = check_generalized_adjointness(sp, direction, prune=True)
        full = check_generalized_adjointness(sp, direction, prune=False)
        assert pruned == full, (name, direction)


def test_pruning_on_pairs_of_a_six_element_carrier(structure):
    sp = structure("o6")

    assert check_condition_11(sp, prune=True) == check_condition_11(sp, prune=False)
    assert check_condition_12(sp, prune=True) == check_condition_12(sp, prune=False)


def pruning_agrees(sp):
    assert check_condition_11(sp, prune=True) == check_condition_11(sp, prune=False), sp.name
    assert check_condition_12(sp, prune=True) == check_condition_12(sp, prune=False), sp.name
    for direction in (15, 16):
        pruned = check_generalized_adjointness(sp, direction, prune=True)
        full = check_generalized_adjointness(sp, direction, prune=False)
        assert pruned == full, (sp.name, direction)


def test_pruning_agrees_on_every_structure_up_to_size_four(enumerated):
    for size in range(1, 5):
        for sp in enumerated(size):
            pruning_agrees(sp)


@pytest.mark.slow
def test_pruning_agrees_at_size_five(enumerated):
    for sp in enumerated(5):
        pruning_agrees(sp)


def sampled_structures(size, count, seed):
    """Seeded random operations on seeded random bounded orders."""
    rng = np.random.default_rng(seed)
    posets = bounded_posets(size)
    chosen = []
    for k in range(count):
        poset = posets[int(rng.integers(len(posets)))]
        op = tuple(int(i) for i in rng.integers(size, size=size))
        chosen.append(StructuredPoset(poset, UnaryOp(op), f"sample-n{size}-{k}"))
    return chosen


@pytest.mark.slow
def test_sampled_six_element_structures():
    """Pruning is exact; (16) agrees by both methods; (15) agrees wherever the order is a lattice."""
    lattices = 0
    for sp in sampled_structures(6, 12, seed=7):
        pruning_agrees(sp)
        report = generalized_report(sp)
        assert report.flags["methods_agree_16"], sp.name
        assert report.check("condition_15", "reduction").method == "reduction"
        if is_lattice(sp).holds:
            lattices += 1
            assert report.flags["methods_agree_15"], sp.name
    assert lattices > 0


def test_threads_do_not_change_results(structure):
    sp = structure("m3")

    for direction in (15, 16):
        assert (check_generalized_adjointness(sp, direction, threads=1)
                == check_generalized_adjointness(sp, direction, threads=4))


def test_caps(structure):
    with pytest.raises(CarrierTooLarge, match="theorem3_reduction"):
        check_generalized_adjointness(structure("fig1"), 15)
    with pytest.raises(CarrierTooLarge):
        check_condition_11(structure("boole4"), pair_cap=3)
    with pytest.raises(ValueError):
        check_generalized_adjointness(structure("chain2"), 13)


def test_sampled_c_is_tagged(structure, caplog):
    with caplog.at_level(logging.WARNING):
        result = check_generalized_adjointness(structure("boole4"), 15, sample_c=5, seed=3)

    assert result.method == "sampled"
    assert result.holds
    assert "sampled" in caplog.text


def test_reduction_results(structure):
    fifteen, sixteen = theorem3_reduction(structure("chain2"))

    assert (fifteen.name, fifteen.method, fifteen.holds) == ("condition_15", "reduction", True)
    assert (sixteen.name, sixteen.method, sixteen.holds) == ("condition_16", "reduction", False)
    assert sixteen.note == "refuted through condition_12"
    assert sixteen.witness == check_condition_12(structure("chain2")).witness


def test_report_with_both_methods(structure):
    report = generalized_report(structure("chain2"))

    assert [(check.name, check.method) for check in report.checks] == [
        ("condition_15", "direct"), ("condition_15", "reduction"),
        ("condition_16", "direct"), ("condition_16", "reduction"),
    ]
    assert report.flags == {"methods_agree_15": True, "methods_agree_16": True}
    assert not report.holds
    assert report.label == "not generalized operator residuated"
    assert report.check("condition_15", "direct").holds


def test_subset_operators_on_singletons_match_meet_scheme(structure):
    sp = structure("o6")
    p = sp.poset
    table = build_operators(sp, Scheme.MEET)
    subsets = SubsetOperatorTable(sp)
    for x in range(p.size):
        for y in range(p.size):
            assert subsets.M(Subset.of([x]), Subset.of([y])).mask == table.M(x, y)
            assert subsets.R(Subset.of([x]), Subset.of([y])).mask == table.R(x, y)


def test_subset_cone_tables(structure):
    sp = structure("boole4")
    p = sp.poset
    cones = all_subset_cones(sp)

    for mask in range(1 << p.size):
        assert cones.lower[mask] == p.lower(mask)
        assert cones.upper[mask] == p.upper(mask)
        assert cones.prime_upper[mask] == p.upper(sp.op.image(mask))


def singleton_agreement(sp):
    singles = restrict_to_singletons(sp)
    meet = verify_definition1(sp, build_operators(sp, Scheme.MEET))
    pairs = [
        (singles[11], check_condition(sp, 7)),
        (singles[12], check_condition(sp, 8)),
        (singles[15], meet.check("ii_forward")),
        (singles[16], meet.check("ii_backward")),
    ]
    for single, element in pairs:
        assert single.holds == element.holds, sp.name
        assert single.witness == element.witness, sp.name


def test_singletons_reproduce_element_conditions(enumerated, structure):
    for sp in enumerated(3) + enumerated(4)[::7] + [structure("fig1"), structure("o6"), structure("m3")]:
        singleton_agreement(sp)


def reduction_agrees(sp):
    for direction, pair_check in ((15, check_condition_11), (16, check_condition_12)):
        direct = check_generalized_adjointness(sp, direction)
        assert direct.holds == pair_check(sp).holds, (sp.name, direction)


def test_reduction_agrees_with_triples_up_to_size_four(enumerated):
    for size in range(1, 5):
        for sp in enumerated(size):
            reduction_agrees(sp)


@pytest.mark.slow
def test_reduction_agrees_with_triples_at_size_five(enumerated):
    for sp in enumerated(5):
        reduction_agrees(sp)


def test_corollary_matches_both_directions(enumerated):
    for size in range(1, 5):
        for sp in enumerated(size):
            corollary = verify_corollary2(sp)
            both = all(check_generalized_adjointness(sp, d).holds for d in (15, 16))
            assert corollary.holds == both, sp.name


def test_corollary_on_the_point(structure):
    report = verify_corollary2(structure("point"))

    assert report.holds
    assert report.label == "generalized operator residuated"
    assert [check.name for check in report.checks] == ["condition_11", "condition_12", "i", "iii"]


def test_fig1_condition_7_fails(structure):
    """fig1 is pseudo-orthomodular but not pseudo-Boolean, so (7) may fail."""
    result = check_condition(structure("fig1"), 7)

    assert not result.holds
    assert result.witness.assignment == {"x": "b", "y": "f"}
    assert result.witness.left == ["0", "b"]
    assert result.witness.right == ["0", "f'"]


@pytest.mark.slow
def test_fig1_condition_11(structure):
    result = check_condition_11(structure("fig1"))

    assert not result.holds
    assert result.witness.assignment == {"A": "{b}", "B": "{f}"}
    assert result.witness.left == ["0", "b"]
    assert result.witness.right == ["0", "f'"]
