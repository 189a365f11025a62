"""Write structures back out in the poset file format."""

import json
import logging
from pathlib import Path
from typing import Iterable, List, Union

from src.poset_core.loader import to_json_dict
from src.poset_core.poset import StructuredPoset

logger = logging.getLogger(__name__)


def export_structures(structures: Iterable[StructuredPoset], directory: Union[str, Path]) -> List[Path]:
    """Write one '<name>.json' per structure into directory, creating it if needed."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for sp in structures:
        path = directory / f"{sp.name}.json"
        path.write_text(json.dumps(to_json_dict(sp), indent=2) + "\n", encoding="utf-8")
        paths.append(path)
    logger.info(f"Exported {len(paths)} structures to {directory}")
    return paths
