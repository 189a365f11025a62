"""Run the residua command line from a source checkout."""

import sys
from pathlib import Path

# Add repo root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
