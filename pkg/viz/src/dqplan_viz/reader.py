"""Parsing of ``*.path.json`` exports (schema_version 1).

The renderer deliberately reimplements nothing from the planner: this
module reads the documented JSON schema into plain records and that is
all. See the planner package's docs/formats.md for the format reference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

SUPPORTED_SCHEMA_VERSION = 1


class SchemaError(Exception):
    """Unreadable file or a document that does not match the schema."""


@dataclass(frozen=True)
class Zone:
    center: tuple[float, float, float]
    radius: float


@dataclass(frozen=True)
class Sample:
    sample_index: int
    edge_index: int
    s: float
    translation: tuple[float, float, float]
    rotation: tuple[float, float, float, float]  # (w, x, y, z)


@dataclass(frozen=True)
class PathDocument:
    mode: str
    scenario_name: str
    scenario_hash: str
    bounds_min: tuple[float, float, float]
    bounds_max: tuple[float, float, float]
    obstacles: tuple[Zone, ...]
    samples: tuple[Sample, ...]
    tree: tuple[tuple[tuple[float, float, float], tuple[float, float, float]], ...] | None
    cost: float


def _vec(value, size: int, where: str) -> tuple:
    if not isinstance(value, (list, tuple)) or len(value) != size:
        raise SchemaError(f"{where}: expected a {size}-element array")
    try:
        return tuple(float(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{where}: non-numeric component ({exc})") from exc


def _get(mapping, key: str, where: str):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaError(f"{where}: missing required field {key!r}")
    return mapping[key]


def load_path_document(source) -> PathDocument:
    """Parse a path export file.

    Raises:
        SchemaError: unreadable file, wrong schema version, or a document
            that does not match the documented layout.
    """
    path = Path(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")

    version = _get(data, "schema_version", "path")
    if version != SUPPORTED_SCHEMA_VERSION:
        raise SchemaError(
            f"{path}: schema_version {version!r} unsupported "
            f"(expected {SUPPORTED_SCHEMA_VERSION})"
        )
    if data.get("kind") != "path":
        raise SchemaError(f"{path}: kind must be 'path', got {data.get('kind')!r}")

    bounds = _get(data, "bounds", "path")
    zones = []
    for i, entry in enumerate(_get(data, "obstacles", "path")):
        zones.append(
            Zone(
                _vec(_get(entry, "center", f"obstacles[{i}]"), 3, f"obstacles[{i}].center"),
                float(_get(entry, "radius", f"obstacles[{i}]")),
            )
        )
    samples = []
    for i, entry in enumerate(_get(data, "samples", "path")):
        where = f"samples[{i}]"
        samples.append(
            Sample(
                sample_index=int(_get(entry, "sample_index", where)),
                edge_index=int(_get(entry, "edge_index", where)),
                s=float(_get(entry, "s", where)),
                translation=_vec(_get(entry, "translation", where), 3, f"{where}.translation"),
                rotation=_vec(_get(entry, "rotation", where), 4, f"{where}.rotation"),
            )
        )
    if not samples:
        raise SchemaError(f"{path}: samples array is empty")

    tree_data = data.get("tree")
    tree = None
    if tree_data is not None:
        edges = []
        for i, entry in enumerate(tree_data):
            where = f"tree[{i}]"
            edges.append(
                (
                    _vec(_get(entry, "parent_translation", where), 3, where),
                    _vec(_get(entry, "child_translation", where), 3, where),
                )
            )
        tree = tuple(edges)

    return PathDocument(
        mode=str(_get(data, "mode", "path")),
        scenario_name=str(data.get("scenario_name", "unnamed")),
        scenario_hash=str(_get(data, "scenario_hash", "path")),
        bounds_min=_vec(_get(bounds, "min_corner", "bounds"), 3, "bounds.min_corner"),
        bounds_max=_vec(_get(bounds, "max_corner", "bounds"), 3, "bounds.max_corner"),
        obstacles=tuple(zones),
        samples=tuple(samples),
        tree=tree,
        cost=float(_get(data, "cost", "path")),
    )
