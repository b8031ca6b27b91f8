"""JSON schemas for every document the CLI emits."""

import json
from importlib import resources

NAMES = ("graph", "relation", "transcript", "diagnostics", "census", "check")


def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"no schema named {name!r}")
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text("utf-8"))
