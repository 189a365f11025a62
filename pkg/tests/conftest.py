"""Shared fixtures: bundled posets by name, enumerated populations and a file writer."""

import json
from typing import Dict, List, Tuple

import pytest

from src.enumeration.generator import EnumSpec, enumerate_structured
from src.poset_core.loader import load_fixture
from src.poset_core.poset import StructuredPoset


@pytest.fixture(scope="session")
def structure():
    """Load a bundled fixture by name, once per session."""
    cache: Dict[str, StructuredPoset] = {}

    def load(name: str) -> StructuredPoset:
        if name not in cache:
            cache[name] = load_fixture(name)
        return cache[name]

    return load


@pytest.fixture(scope="session")
def enumerated():
    """All canonical structures of one size, optionally filtered by predicates."""
    cache: Dict[Tuple[int, Tuple[str, ...]], List[StructuredPoset]] = {}

    def population(size: int, require: Tuple[str, ...] = ()) -> List[StructuredPoset]:
        key = (size, tuple(require))
        if key not in cache:
            cache[key] = list(enumerate_structured(EnumSpec(size, tuple(require))))
        return cache[key]

    return population


@pytest.fixture
def write_poset(tmp_path):
    """Write a poset description (dict or raw text) to a temporary JSON file."""

    def write(content, name: str = "poset.json"):
        path = tmp_path / name
        text = content if isinstance(content, str) else json.dumps(content)
        path.write_text(text, encoding="utf-8")
        return path

    return write
