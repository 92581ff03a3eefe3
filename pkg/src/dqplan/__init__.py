"""Pose path planning on unit dual quaternions.

The package plans collision-free 6-DOF pose paths among spherical
keep-out zones with an RRT* whose steering follows screw motions
(constant-screw interpolation between poses), alongside a baseline RRT*
that interpolates translation linearly and rotation by SLERP.
"""

from .collision import (
    EMPTY_OBSTACLES,
    KeepOutZone,
    ObstacleSet,
    ValidationReport,
    Violation,
    clearance,
    edge_clear_dq,
    edge_clear_se3,
    point_clear,
    validate_path,
)
from .dualquat import (
    DEFAULT_TOLERANCES,
    IDENTITY_DQ,
    DualQuaternion,
    Pose,
    Quaternion,
    ScrewParameters,
    Tolerances,
    dq_conjugate,
    dq_from_pose,
    dq_mul,
    dq_pow,
    dq_to_pose,
    dq_translation,
    quat_from_axis_angle,
    quat_geodesic,
    quat_mul,
    quat_normalize,
    quat_rotate,
    sclerp,
    screw_compose,
    screw_decompose,
    slerp,
)
from .errors import (
    BrokenParentChainError,
    DqplanError,
    EmptyPathError,
    EmptyTreeError,
    GenerationFailedError,
    InvalidBoundsError,
    InvalidScenarioError,
    NearZeroNormError,
    NoPathFoundError,
    NonUnitDualQuaternionError,
    NonUnitRotationError,
    ParseError,
    SchemaVersionMismatchError,
)
from .planner import (
    MODE_DQ,
    MODE_SE3,
    PlannedPath,
    PlannerConfig,
    Tree,
    TreeNode,
    extract_path,
    near_set,
    nearest,
    plan,
    rewire,
)
from .posespace import (
    ROTATION_FULL,
    ROTATION_TRANSLATION_ONLY,
    MetricWeights,
    SteerConfig,
    WorkspaceBounds,
    pose_distance,
    pose_distance_se3,
    sample_pose,
    steer_dq,
    steer_se3,
)
from .rng import RngStream
from .scenario import (
    Scenario,
    demo_scenario,
    densify_path,
    export_path,
    generate_scenario,
    load_path_export,
    load_scenario,
    save_scenario,
    scenario_hash,
)

__version__ = "0.1.0"
