"""Loading and validating poset descriptions from JSON files."""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field, ValidationError

from config.config import settings
from .errors import CycleDetected, DuplicateElement, ParseError, UnknownElementReference
from .poset import Poset, StructuredPoset, UnaryOp, check_carrier

logger = logging.getLogger(__name__)


class PosetFile(BaseModel):
    """On-disk form of a poset with a unary operation."""

    name: str = "unnamed"
    elements: List[str] = Field(min_length=1)
    covers: List[Tuple[str, str]] = Field(default_factory=list)
    op: Dict[str, str] = Field(default_factory=dict)


RawPoset = Union[PosetFile, Dict]


def _coerce(raw: RawPoset) -> PosetFile:
    if isinstance(raw, PosetFile):
        return raw
    try:
        return PosetFile.model_validate(raw)
    except ValidationError as e:
        raise ParseError(f"Invalid poset description: {e}") from e


def validate(raw: RawPoset, max_carrier: Optional[int] = None) -> Poset:
    """
    Build a Poset from a raw description.

    Covers are closed reflexively and transitively; self-covers are ignored.

    Args:
        raw: PosetFile or a dict with elements and covers
        max_carrier: Carrier cap (optional, uses config if not provided)

    Returns:
        Validated Poset
    """
    model = _coerce(raw)
    elements = model.elements
    check_carrier(len(elements), max_carrier)

    index: Dict[str, int] = {}
    for position, name in enumerate(elements):
        if name in index:
            raise DuplicateElement(f"Element '{name}' is listed more than once")
        index[name] = position

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(elements)))
    for lower, upper in model.covers:
        for name in (lower, upper):
            if name not in index:
                raise UnknownElementReference(
                    f"Cover [{lower}, {upper}] references unknown element '{name}'"
                )
        if lower != upper:
            graph.add_edge(index[lower], index[upper])

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise CycleDetected([elements[u] for u, _ in cycle])

    closure = nx.transitive_closure_dag(graph)
    leq = nx.to_numpy_array(closure, nodelist=list(range(len(elements))), dtype=bool, weight=None)
    leq |= np.eye(len(elements), dtype=bool)
    return Poset.from_matrix(elements, leq, max_carrier)


def build_structured(raw: RawPoset, max_carrier: Optional[int] = None) -> StructuredPoset:
    """Validate the order and attach the (total) unary operation."""
    model = _coerce(raw)
    poset = validate(model, max_carrier)
    index = {name: i for i, name in enumerate(poset.elements)}

    for source, target in model.op.items():
        for name in (source, target):
            if name not in index:
                raise UnknownElementReference(
                    f"Operation entry {source} -> {target} references unknown element '{name}'"
                )
    missing = [name for name in poset.elements if name not in model.op]
    if missing:
        raise ParseError(f"Operation is not total, no image for: {', '.join(missing)}")

    images = tuple(index[model.op[name]] for name in poset.elements)
    return StructuredPoset(poset, UnaryOp(images), model.name)


def load_structured(path: Union[str, Path], max_carrier: Optional[int] = None) -> StructuredPoset:
    """
    Read a poset JSON file.

    Decode errors are reported as ParseError with line and column.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: cannot read file ({e.strerror})") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e

    structured = build_structured(data, max_carrier)
    logger.debug(f"Loaded {structured.name} ({structured.poset.size} elements) from {path}")
    return structured


def load_fixture(name: str, fixtures_dir: Optional[Path] = None) -> StructuredPoset:
    """Load a bundled fixture by its stem, e.g. 'fig1'."""
    directory = Path(fixtures_dir) if fixtures_dir else settings.FIXTURES_DIR
    return load_structured(directory / f"{name}.json")


def list_fixtures(fixtures_dir: Optional[Path] = None) -> List[str]:
    directory = Path(fixtures_dir) if fixtures_dir else settings.FIXTURES_DIR
    return sorted(path.stem for path in directory.glob("*.json"))


def to_json_dict(structured: StructuredPoset) -> Dict:
    """Serialize to the input file format, covers taken from the Hasse diagram."""
    poset = structured.poset
    names = poset.elements
    return {
        "name": structured.name,
        "elements": list(names),
        "covers": [[names[lower], names[upper]] for lower, upper in poset.covers()],
        "op": {names[i]: names[structured.prime(i)] for i in range(poset.size)},
    }
