"""Per-size predicate counts over the enumerated population."""

import logging
from typing import Dict, Iterable, Optional, Sequence

import pandas as pd

from src.classify.predicates import PREDICATES
from src.poset_core.parallel import ordered_map
from src.poset_core.poset import StructuredPoset
from .generator import EnumSpec, enumerate_structured

logger = logging.getLogger(__name__)


def _verdicts(sp: StructuredPoset) -> Dict[str, bool]:
    return {name: check(sp).holds for name, check in PREDICATES.items()}


def census(sizes: Iterable[int], require: Sequence[str] = (), threads: Optional[int] = None) -> pd.DataFrame:
    """
    Count structures and predicate holders per size.

    Returns:
        DataFrame indexed by size with a 'structures' column and one column per predicate
    """
    rows = []
    for size in sizes:
        structures = list(enumerate_structured(EnumSpec(size, tuple(require))))
        frame = pd.DataFrame(ordered_map(_verdicts, structures, threads), columns=list(PREDICATES))
        row = {"size": size, "structures": len(structures)}
        row.update({name: int(frame[name].sum()) for name in PREDICATES})
        rows.append(row)
        logger.info(f"Census size {size}: {len(structures)} structures")
    return pd.DataFrame(rows).set_index("size")
