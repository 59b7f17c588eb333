"""Access to the reference data shipped with the package."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional

from .tropexpr import load_map_fixture


def fixtures_dir(override: Optional[str | Path] = None) -> Path:
    if override is not None:
        return Path(override)
    return Path(str(resources.files("tropclust") / "fixtures"))


def load_reference(name: str, root: Optional[str | Path] = None) -> Any:
    """One of the JSON files under fixtures/reference, by stem."""
    path = fixtures_dir(root) / "reference" / f"{name}.json"
    return json.loads(path.read_text(encoding="utf-8"))


def map_index(root: Optional[str | Path] = None) -> Dict[str, dict]:
    path = fixtures_dir(root) / "maps" / "index.json"
    return json.loads(path.read_text(encoding="utf-8"))


def load_map(name: str, root: Optional[str | Path] = None) -> List:
    return load_map_fixture(fixtures_dir(root) / "maps" / f"{name}.txt")
