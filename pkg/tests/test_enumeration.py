"""Generation up to isomorphism, claim refutation, export and census."""

import pytest

from src.classify.predicates import is_complementation
from src.enumeration.census import census
from src.enumeration.claims import NAMED_CLAIMS, VOCABULARY, find_counterexample, parse_claim
from src.enumeration.export import export_structures
from src.enumeration.generator import (
    EnumSpec,
    automorphisms,
    bounded_posets,
    enumerate_structured,
    involutions,
    is_canonical_op,
    linear_extensions,
)
from src.enumeration.isomorphism import are_isomorphic, brute_force_key
from src.poset_core.errors import SizeCapExceeded, UnknownClaim, UnknownPredicate
from src.poset_core.loader import build_structured, list_fixtures, load_fixture, load_structured, to_json_dict


@pytest.mark.parametrize("size,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 16)])
def test_bounded_poset_counts(size, count):
    assert len(bounded_posets(size)) == count


@pytest.mark.slow
def test_bounded_posets_of_size_seven():
    assert len(bounded_posets(7)) == 63


def test_bounded_posets_are_ordered_by_linear_extensions():
    posets = bounded_posets(5)
    extensions = [linear_extensions(p) for p in posets]

    assert extensions == sorted(extensions)
    assert extensions[0] == 1
    assert posets[0].elements == ("0", "a", "b", "c", "1")


@pytest.mark.parametrize("size,count", [(1, 1), (2, 4), (3, 27), (4, 392)])
def test_structure_counts(enumerated, size, count):
    assert len(enumerated(size)) == count


def test_structures_are_pairwise_non_isomorphic(enumerated):
    for size in range(1, 5):
        keys = [brute_force_key(sp) for sp in enumerated(size)]
        assert len(set(keys)) == len(keys)


def test_raw_stream_covers_every_class(enumerated):
    """Every labelled structure is isomorphic to exactly one canonical one."""
    for size in range(1, 4):
        raw = list(enumerate_structured(EnumSpec(size, canonical=False)))
        canonical = {brute_force_key(sp) for sp in enumerated(size)}
        assert {brute_force_key(sp) for sp in raw} == canonical
        assert all(sp.name.startswith(f"raw-n{size}-") for sp in raw)


def test_names_and_stream_order(enumerated):
    assert [sp.name for sp in enumerated(1)] == ["enum-n1-p0-f0"]
    assert [sp.name for sp in enumerated(2)] == [
        "enum-n2-p0-f0-0", "enum-n2-p0-f0-1", "enum-n2-p0-f1-0", "enum-n2-p0-f1-1",
    ]


def test_required_predicates_filter_the_stream(enumerated):
    population = enumerated(4, ("complementation",))

    assert len(population) == 1
    assert all(is_complementation(sp).holds for sp in population)


def test_automorphisms_fix_the_bounds(structure):
    poset = structure("boole4").poset

    assert automorphisms(poset) == [(0, 2, 1, 3)]
    assert automorphisms(structure("chain2").poset) == []


def test_conjugate_operations():
    autos = [(0, 2, 1, 3)]

    assert is_canonical_op((3, 1, 2, 0), autos)
    assert is_canonical_op((3, 2, 1, 0), autos)
    assert is_canonical_op((0, 1, 1, 0), autos)
    assert not is_canonical_op((0, 2, 2, 0), autos)


def test_involutions():
    assert involutions(2) == [(0, 1), (1, 0)]
    assert len(involutions(4)) == 10


def test_size_caps():
    with pytest.raises(SizeCapExceeded):
        list(enumerate_structured(EnumSpec(8)))
    with pytest.raises(SizeCapExceeded):
        list(enumerate_structured(EnumSpec(5, canonical=False)))
    with pytest.raises(SizeCapExceeded):
        EnumSpec(0)
    with pytest.raises(UnknownPredicate):
        EnumSpec(3, ("modular",))


def test_isomorphism_of_relabelled_fixture(structure):
    o6 = structure("o6")
    relabelled = relabel(o6, {"0": "bot", "a": "p", "b": "q", "b'": "r", "a'": "s", "1": "top"})

    assert are_isomorphic(o6, relabelled)
    assert brute_force_key(o6) == brute_force_key(relabelled)
    assert not are_isomorphic(o6, structure("mo2"))


def relabel(sp, rename):
    raw = to_json_dict(sp)
    raw["elements"] = [rename[name] for name in reversed(raw["elements"])]
    raw["covers"] = [[rename[lower], rename[upper]] for lower, upper in raw["covers"]]
    raw["op"] = {rename[source]: rename[target] for source, target in raw["op"].items()}
    return build_structured(raw)


def test_parse_claim():
    assert parse_claim("boolean => pseudo_boolean") == ("boolean", "pseudo_boolean")
    with pytest.raises(UnknownClaim):
        parse_claim("boolean")
    with pytest.raises(UnknownClaim):
        parse_claim("=>boolean")
    with pytest.raises(UnknownPredicate):
        parse_claim("boolean=>modular")


def test_named_claims_use_the_vocabulary():
    for claim in NAMED_CLAIMS:
        antecedent, consequent = parse_claim(claim)
        assert antecedent in VOCABULARY and consequent in VOCABULARY


def test_complemented_poset_that_is_not_pseudo_orthomodular(structure):
    found = find_counterexample(EnumSpec(6, ("complementation",)), "complementation=>pseudo_orthomodular")

    assert found is not None
    assert found.size == 6
    assert not found.consequent.holds
    assert are_isomorphic(build_structured(found.poset), structure("o6"))


def test_pseudo_orthomodular_poset_that_is_not_boolean(structure):
    found = find_counterexample(EnumSpec(6, ("pseudo_orthomodular",)), "pseudo_orthomodular=>boolean")

    assert found is not None
    assert are_isomorphic(build_structured(found.poset), structure("mo2"))


def test_fixtures_are_searched_after_the_enumeration():
    fixtures = [load_fixture(name) for name in list_fixtures()]
    found = find_counterexample(
        EnumSpec(14, ("pseudo_orthomodular",)), "pseudo_orthomodular=>boolean", fixtures, min_size=8,
    )

    assert found is not None
    assert found.structure == "fig1"
    assert found.size == 14


@pytest.mark.parametrize("claim,require", [
    ("boolean=>pseudo_boolean", ("boolean",)),
    ("pseudo_boolean=>pseudo_orthomodular", ("pseudo_boolean",)),
    ("pseudo_orthomodular=>conditions_1_2", ("pseudo_orthomodular",)),
    ("pseudo_boolean=>conditions_7_8", ("pseudo_boolean",)),
])
def test_true_claims_have_no_counterexample(claim, require):
    assert find_counterexample(EnumSpec(6, require), claim) is None


def test_zero_law_has_no_separating_model():
    assert find_counterexample(EnumSpec(4), "cone_i_ii=>cone_iii") is None
    assert find_counterexample(EnumSpec(4), "meet_i_ii=>meet_iii") is None


def test_theorem_hypotheses_claims_up_to_size_four():
    assert find_counterexample(EnumSpec(4), "cone_hypotheses=>cone_left_residuated") is None
    assert find_counterexample(EnumSpec(4), "conditions_7_8=>meet_residuated") is None


def test_counterexample_search_is_independent_of_workers():
    spec = EnumSpec(6, ("complementation",))
    claim = "complementation=>pseudo_orthomodular"

    assert find_counterexample(spec, claim, threads=1) == find_counterexample(spec, claim, threads=4)


def test_export_round_trip(enumerated, tmp_path):
    structures = enumerated(2)
    paths = export_structures(structures, tmp_path / "out")

    assert [path.name for path in paths] == [f"{sp.name}.json" for sp in structures]
    for sp, path in zip(structures, paths):
        again = load_structured(path)
        assert again.name == sp.name
        assert brute_force_key(again) == brute_force_key(sp)


def test_census():
    frame = census([1, 2, 3])

    assert frame["structures"].tolist() == [1, 4, 27]
    assert frame.loc[1, "complementation"] == 1
    assert frame.loc[2, "complementation"] == 1
    assert frame.loc[3, "complementation"] == 0
    assert frame.loc[2, "lattice"] == 4
