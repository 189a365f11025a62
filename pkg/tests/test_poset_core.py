"""Loader validation, the L/U cone calculus and the worker helpers."""

from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.enumeration.generator import bounded_posets
from src.poset_core.errors import (
    CarrierTooLarge,
    CycleDetected,
    DimensionMismatch,
    DuplicateElement,
    ParseError,
    UnknownElementReference,
)
from src.poset_core.loader import build_structured, load_fixture, load_structured, to_json_dict, validate
from src.poset_core.parallel import least_hit, ordered_map, split
from src.poset_core.poset import (
    Poset,
    StructuredPoset,
    Subset,
    UnaryOp,
    image_prime,
    lower_cone,
    upper_cone,
)

FIXTURES = ["point", "chain2", "boole4", "m3", "o6", "mo2", "boole8", "fig1"]


@lru_cache(maxsize=None)
def cached(name):
    return load_fixture(name)


def oracle_lower(poset, indices):
    """L computed straight from the order matrix."""
    return [i for i in range(poset.size) if all(poset.leq[i, j] for j in indices)]


def oracle_upper(poset, indices):
    return [j for j in range(poset.size) if all(poset.leq[i, j] for i in indices)]


def test_validate_chain():
    poset = validate({"elements": ["0", "1"], "covers": [["0", "1"]]})

    assert poset.elements == ("0", "1")
    assert poset.bottom == 0 and poset.top == 1
    assert poset.leq.tolist() == [[True, True], [False, True]]


def test_validate_single_point_with_self_cover():
    """A self-cover is ignored; the one element is both bounds."""
    poset = validate({"elements": ["a"], "covers": [["a", "a"]]})

    assert poset.size == 1
    assert poset.bounded
    assert poset.bottom == poset.top == 0


def test_closure_is_transitive():
    poset = validate({"elements": ["0", "m", "1"], "covers": [["0", "m"], ["m", "1"]]})

    assert poset.le(0, 2)
    assert not poset.le(2, 0)


def test_order_matrix_is_read_only():
    poset = cached("chain2").poset

    with pytest.raises(ValueError):
        poset.leq[0, 0] = False


def test_cycle_is_rejected():
    with pytest.raises(CycleDetected) as info:
        validate({"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]})

    assert set(info.value.cycle) == {"a", "b"}


def test_duplicate_element_is_rejected():
    with pytest.raises(DuplicateElement):
        validate({"elements": ["a", "a"], "covers": []})


def test_unknown_cover_reference():
    with pytest.raises(UnknownElementReference, match="'z'"):
        validate({"elements": ["0", "1"], "covers": [["0", "z"]]})


def test_empty_carrier_is_a_parse_error():
    with pytest.raises(ParseError):
        validate({"elements": [], "covers": []})


def test_operation_must_be_total():
    raw = {"elements": ["0", "1"], "covers": [["0", "1"]], "op": {"0": "1"}}

    with pytest.raises(ParseError, match="not total"):
        build_structured(raw)


def test_operation_with_unknown_image():
    raw = {"elements": ["0", "1"], "covers": [["0", "1"]], "op": {"0": "1", "1": "q"}}

    with pytest.raises(UnknownElementReference):
        build_structured(raw)


def test_malformed_json_reports_position(write_poset):
    path = write_poset("{ nope")

    with pytest.raises(ParseError) as info:
        load_structured(path)

    assert str(info.value).startswith(f"{path}:1:")


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_structured(tmp_path / "absent.json")


def test_carrier_cap():
    raw = {"elements": ["0", "a", "b", "1"], "covers": []}

    with pytest.raises(CarrierTooLarge):
        validate(raw, max_carrier=3)


def test_from_matrix_rejects_non_transitive_relation():
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[1, 2] = True

    with pytest.raises(ParseError, match="transitive"):
        Poset.from_matrix(["x", "y", "z"], leq)


def test_operation_outside_carrier():
    with pytest.raises(DimensionMismatch):
        UnaryOp((0, 3))


def test_operation_length_must_match():
    poset = cached("chain2").poset

    with pytest.raises(DimensionMismatch):
        StructuredPoset(poset, UnaryOp((0, 1, 2)))


def test_subset_basics():
    subset = Subset.of([0, 2])

    assert subset.mask == 5
    assert len(subset) == 2
    assert list(subset) == [0, 2]
    assert 2 in subset and 1 not in subset
    assert subset.issubset(Subset(7))
    assert (subset | Subset.of([1])).mask == 7
    assert (subset & Subset.of([2, 3])).mask == 4


def test_cones_of_the_empty_set_are_the_carrier():
    poset = cached("fig1").poset

    assert lower_cone(poset, []).mask == poset.full
    assert upper_cone(poset, []).mask == poset.full


def test_lower_cone_without_greatest_element():
    """b' and c' share the lower bounds 0, a and d, with a and d incomparable."""
    poset = cached("fig1").poset
    cone = lower_cone(poset, ["b'", "c'"])

    assert poset.names(cone.mask) == ["0", "a", "d"]
    assert poset.meet(poset.index("b'"), poset.index("c'")) is None


def test_upper_cone_without_least_element():
    poset = cached("fig1").poset
    cone = upper_cone(poset, ["b", "c"])

    assert poset.names(cone.mask) == ["a'", "d'", "1"]
    assert poset.join(poset.index("b"), poset.index("c")) is None


def test_cone_arguments_are_unioned():
    poset = cached("fig1").poset
    a, b = poset.index("a"), poset.index("b")

    assert lower_cone(poset, [Subset.of([a]), b]) == lower_cone(poset, ["a", "b"])


def test_image_prime():
    sp = cached("fig1")
    p = sp.poset
    image = image_prime(sp.op, Subset.of([p.index("a"), p.index("b")]))

    assert p.names(image.mask) == ["a'", "b'"]
    assert image_prime(sp.op, Subset()).mask == 0


def test_json_round_trip_keeps_the_order():
    sp = cached("fig1")
    again = build_structured(to_json_dict(sp))

    assert again.poset == sp.poset
    assert again.op == sp.op


@hypothesis_settings(max_examples=60, deadline=None)
@given(name=st.sampled_from(FIXTURES), data=st.data())
def test_cones_match_matrix_oracle(name, data):
    poset = cached(name).poset
    indices = data.draw(st.lists(st.integers(0, poset.size - 1), max_size=4, unique=True))

    assert list(lower_cone(poset, indices)) == oracle_lower(poset, indices)
    assert list(upper_cone(poset, indices)) == oracle_upper(poset, indices)


@hypothesis_settings(max_examples=60, deadline=None)
@given(name=st.sampled_from(FIXTURES), data=st.data())
def test_galois_connection_laws(name, data):
    """A <= L(U(A)), U(L(U(A))) = U(A), and L is antitone."""
    poset = cached(name).poset
    a = data.draw(st.integers(0, poset.full))
    b = data.draw(st.integers(0, poset.full)) | a

    assert a & ~poset.lower(poset.upper(a)) == 0
    assert poset.upper(poset.lower(poset.upper(a))) == poset.upper(a)
    assert poset.lower(b) & ~poset.lower(a) == 0
    assert poset.is_downset(poset.lower(a))
    assert poset.is_upset(poset.upper(a))


def all_bounded_posets(sizes=range(1, 7)):
    return [poset for size in sizes for poset in bounded_posets(size)]


def test_cones_turn_unions_into_intersections():
    for poset in all_bounded_posets():
        for a in range(poset.full + 1):
            for b in range(a, poset.full + 1):
                assert poset.lower(a | b) == poset.lower(a) & poset.lower(b)
                assert poset.upper(a | b) == poset.upper(a) & poset.upper(b)


def test_closure_is_stable_on_lower_cones():
    for poset in all_bounded_posets():
        for a in range(poset.full + 1):
            lower = poset.lower(a)
            assert poset.lower(poset.upper(lower)) == lower
            assert poset.upper(poset.lower(poset.upper(a))) == poset.upper(a)


def test_lower_cones_embed_the_order():
    for poset in all_bounded_posets():
        for i in range(poset.size):
            for j in range(poset.size):
                contained = poset.lower(1 << i) & ~poset.lower(1 << j) == 0
                assert poset.le(i, j) == contained


def test_antitone_involution_swaps_cones(enumerated):
    """L(A') = (U(A))' whenever ' is an antitone involution."""
    for size in range(1, 7):
        for sp in enumerated(size, ("antitone_involution",)):
            p, op = sp.poset, sp.op
            for a in range(p.full + 1):
                assert p.lower(op.image(a)) == op.image(p.upper(a)), sp.name
                assert p.upper(op.image(a)) == op.image(p.lower(a)), sp.name


def test_split_keeps_order():
    parts = split(list(range(10)), 3)

    assert [len(part) for part in parts] == [4, 3, 3]
    assert [x for part in parts for x in part] == list(range(10))
    assert split([], 4) == []


@pytest.mark.parametrize("threads", [1, 2, 4, 7])
def test_least_hit_is_independent_of_workers(threads):
    def scan_slice(chunk):
        for item in chunk:
            if item > 20 and item % 7 == 3:
                return item, f"hit {item}"
        return None

    assert least_hit(range(100), scan_slice, threads) == (24, "hit 24")


def test_least_hit_without_hits():
    assert least_hit(range(10), lambda chunk: None, 4) is None


def test_ordered_map_keeps_input_order():
    assert ordered_map(lambda x: x * x, list(range(20)), 4) == [x * x for x in range(20)]
