import math

import pytest

from dqplan_viz import rotate_axis
from dqplan_viz.render import arrow_indices


def _quat_about(axis, angle):
    half = 0.5 * angle
    s = math.sin(half)
    return (math.cos(half), s * axis[0], s * axis[1], s * axis[2])


def test_rotate_axis_three_axis_aligned_cases():
    # 90 deg about z maps x to y
    assert rotate_axis(_quat_about((0, 0, 1), math.pi / 2), (1.0, 0.0, 0.0)) == pytest.approx(
        (0.0, 1.0, 0.0), abs=1e-12
    )
    # 90 deg about x maps y to z
    assert rotate_axis(_quat_about((1, 0, 0), math.pi / 2), (0.0, 1.0, 0.0)) == pytest.approx(
        (0.0, 0.0, 1.0), abs=1e-12
    )
    # 90 deg about y maps z to x
    assert rotate_axis(_quat_about((0, 1, 0), math.pi / 2), (0.0, 0.0, 1.0)) == pytest.approx(
        (1.0, 0.0, 0.0), abs=1e-12
    )


def test_rotate_axis_identity():
    assert rotate_axis((1.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0)) == pytest.approx(
        (0.0, 1.0, 0.0), abs=1e-15
    )


def test_arrow_indices_include_final_sample():
    assert arrow_indices(5, 10) == [0, 4]
    assert arrow_indices(21, 10) == [0, 10, 20]
    assert arrow_indices(22, 10) == [0, 10, 20, 21]
    assert arrow_indices(3, 1) == [0, 1, 2]
