import json
import math

import pytest


def make_path_doc(**overrides) -> dict:
    """Minimal valid path export: a two-pose pure-translation path with one
    keep-out zone and a one-edge tree."""
    samples = []
    for i in range(5):
        s = i / 4.0
        samples.append(
            {
                "sample_index": i,
                "edge_index": 0,
                "s": s,
                "translation": [4.0 * s, 0.0, 0.0],
                "rotation": [1.0, 0.0, 0.0, 0.0],
                "dual_quaternion": [1.0, 0.0, 0.0, 0.0, 0.0, 2.0 * s, 0.0, 0.0],
            }
        )
    doc = {
        "schema_version": 1,
        "kind": "path",
        "mode": "dq",
        "rotation_mode": "full",
        "seed": 1,
        "scenario_name": "fixture",
        "scenario_hash": "f" * 64,
        "bounds": {"min_corner": [-1.0, -1.0, -1.0], "max_corner": [5.0, 1.0, 1.0]},
        "obstacles": [{"center": [2.0, 0.9, 0.0], "radius": 0.5}],
        "weights": {"w_t": 1.0, "w_r": 1.0},
        "steer": {"step_max": 5.0, "collision_step": 0.5},
        "resolution": 4,
        "cost": 4.0,
        "iterations_used": 10,
        "nodes_in_tree": 2,
        "best_cost_trace": [[3, 4.0]],
        "edge_rotation_angles": [0.0],
        "waypoints": [
            {
                "rotation": [1.0, 0.0, 0.0, 0.0],
                "translation": [0.0, 0.0, 0.0],
                "dual_quaternion": [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            },
            {
                "rotation": [1.0, 0.0, 0.0, 0.0],
                "translation": [4.0, 0.0, 0.0],
                "dual_quaternion": [1.0, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0],
            },
        ],
        "samples": samples,
        "tree": [{"parent_translation": [0.0, 0.0, 0.0], "child_translation": [4.0, 0.0, 0.0]}],
    }
    doc.update(overrides)
    return doc


@pytest.fixture
def fixture_path_file(tmp_path):
    file = tmp_path / "fixture.path.json"
    file.write_text(json.dumps(make_path_doc()), encoding="utf-8")
    return file


@pytest.fixture
def rotating_path_file(tmp_path):
    """Path whose samples rotate from identity to a quarter turn about z."""
    doc = make_path_doc()
    for i, sample in enumerate(doc["samples"]):
        angle = (math.pi / 2.0) * (i / 4.0)
        sample["rotation"] = [math.cos(angle / 2.0), 0.0, 0.0, math.sin(angle / 2.0)]
    file = tmp_path / "rotating.path.json"
    file.write_text(json.dumps(doc), encoding="utf-8")
    return file
