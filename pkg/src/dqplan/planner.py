"""RRT* search over poses with choose-parent and rewiring.

One engine serves both planning modes: nodes always store unit dual
quaternions, and the mode only swaps the steering and edge-checking
callbacks (screw interpolation for ``dq``, linear translation + SLERP for
``se3_baseline``; the conversion between representations is exact).

A planner instance is single-threaded (it mutates one tree and owns one
random stream); run multiple instances concurrently for parallel studies.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable

import numpy as np

from .collision import edge_clear_dq, edge_clear_se3
from .dualquat import (
    DualQuaternion,
    dq_from_pose,
    dq_to_pose,
    dq_translation,
    quat_geodesic,
)
from .errors import BrokenParentChainError, EmptyTreeError, NoPathFoundError
from .posespace import (
    ROTATION_FULL,
    ROTATION_MODES,
    MetricWeights,
    SteerConfig,
    pose_distance,
    sample_pose,
    steer_dq,
    steer_se3,
)
from .rng import RngStream

if TYPE_CHECKING:
    from .scenario import Scenario

MODE_DQ = "dq"
MODE_SE3 = "se3_baseline"
MODES = (MODE_DQ, MODE_SE3)

_COST_EPS = 1e-12  # minimum strict improvement for re-parenting


@dataclass
class TreeNode:
    """Search-tree node; costs are metric units from the root."""

    id: int
    dq: DualQuaternion
    parent: int | None
    cost_from_root: float
    edge_cost: float
    children: list[int] = field(default_factory=list)


class Tree:
    """Node storage plus parallel arrays for vectorized metric queries."""

    def __init__(self) -> None:
        self.nodes: list[TreeNode] = []
        self._capacity = 256
        self._tr = np.empty((self._capacity, 3))
        self._rot = np.empty((self._capacity, 4))

    def __len__(self) -> int:
        return len(self.nodes)

    def add(self, dq: DualQuaternion, parent: int | None, edge_cost: float) -> int:
        node_id = len(self.nodes)
        if parent is None:
            cost = 0.0
        else:
            cost = self.nodes[parent].cost_from_root + edge_cost
            self.nodes[parent].children.append(node_id)
        self.nodes.append(TreeNode(node_id, dq, parent, cost, edge_cost))
        if node_id >= self._capacity:
            self._capacity *= 2
            self._tr = np.resize(self._tr, (self._capacity, 3))
            self._rot = np.resize(self._rot, (self._capacity, 4))
        self._tr[node_id] = dq_translation(dq)
        r = dq.real
        self._rot[node_id] = (r.w, r.x, r.y, r.z)
        return node_id

    def distances_to(self, q: DualQuaternion, w: MetricWeights) -> np.ndarray:
        """Metric distance from every node to q, in node-id order.

        Uses the same chord form of the quaternion geodesic as
        :func:`dqplan.dualquat.quat_geodesic`.
        """
        n = len(self.nodes)
        t = np.asarray(dq_translation(q))
        r = np.array((q.real.w, q.real.x, q.real.y, q.real.z))
        diff = self._tr[:n] - t
        d_t = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        minus = self._rot[:n] - r
        plus = self._rot[:n] + r
        chord = np.sqrt(
            np.minimum(
                np.einsum("ij,ij->i", minus, minus), np.einsum("ij,ij->i", plus, plus)
            )
        )
        d_r = 2.0 * np.arcsin(np.minimum(1.0, 0.5 * chord))
        return w.w_t * d_t + w.w_r * d_r

    def check_consistency(self, w: MetricWeights, tol: float = 1e-9) -> None:
        """Assert the tree is a single-rooted acyclic forest with exact costs."""
        roots = [n for n in self.nodes if n.parent is None]
        assert len(roots) == 1, f"expected one root, found {len(roots)}"
        assert roots[0].cost_from_root == 0.0
        for node in self.nodes:
            if node.parent is not None:
                parent = self.nodes[node.parent]
                assert node.id in parent.children
                expected = parent.cost_from_root + pose_distance(parent.dq, node.dq, w)
                assert abs(node.cost_from_root - expected) <= tol, (
                    f"node {node.id}: cost {node.cost_from_root} != {expected}"
                )
        # reachability from the root covers every node exactly once => acyclic
        seen = set()
        stack = [roots[0].id]
        while stack:
            i = stack.pop()
            assert i not in seen, f"cycle through node {i}"
            seen.add(i)
            stack.extend(self.nodes[i].children)
        assert len(seen) == len(self.nodes), "detached nodes present"


def nearest(tree: Tree, q: DualQuaternion, w: MetricWeights) -> int:
    """Index of the node closest to q; ties break to the lowest index.

    Raises:
        EmptyTreeError: if the tree has no nodes.
    """
    if len(tree) == 0:
        raise EmptyTreeError("nearest() on empty tree")
    return int(np.argmin(tree.distances_to(q, w)))


def near_set(tree: Tree, q: DualQuaternion, radius: float, w: MetricWeights) -> list[int]:
    """All node indices within ``radius`` of q, in ascending index order."""
    if len(tree) == 0 or radius < 0.0:
        return []
    d = tree.distances_to(q, w)
    return [int(i) for i in np.nonzero(d <= radius)[0]]


def _propagate_costs(tree: Tree, start_id: int) -> None:
    """Recompute descendant costs below start_id from stored edge costs."""
    stack = [start_id]
    seen = set()
    while stack:
        i = stack.pop()
        if i in seen:
            raise BrokenParentChainError(f"cycle detected while updating costs at node {i}")
        seen.add(i)
        node = tree.nodes[i]
        for child_id in node.children:
            child = tree.nodes[child_id]
            child.cost_from_root = node.cost_from_root + child.edge_cost
            stack.append(child_id)


def rewire(
    tree: Tree,
    new_id: int,
    neighbors: list[int],
    edge_clear: Callable[[DualQuaternion, DualQuaternion], bool],
    w: MetricWeights,
) -> int:
    """Re-parent neighbors through the new node when that strictly lowers
    their cost and the connecting edge is collision-free.

    Neighbors are visited in ascending index order; descendant costs are
    recomputed from stored edge costs after each re-parenting. Returns the
    number of nodes re-parented.
    """
    new_node = tree.nodes[new_id]
    count = 0
    for j in neighbors:
        if j == new_id or j == new_node.parent:
            continue
        node = tree.nodes[j]
        if node.parent is None:  # never re-parent the root
            continue
        d = pose_distance(new_node.dq, node.dq, w)
        candidate = new_node.cost_from_root + d
        if candidate < node.cost_from_root - _COST_EPS and edge_clear(new_node.dq, node.dq):
            old_parent = tree.nodes[node.parent]
            old_parent.children.remove(j)
            node.parent = new_id
            node.edge_cost = d
            node.cost_from_root = candidate
            new_node.children.append(j)
            _propagate_costs(tree, j)
            count += 1
    return count


@dataclass(frozen=True)
class PlannerConfig:
    """Everything the search needs besides the scenario itself.

    ``rewire_gamma = None`` resolves to twice the workspace diagonal. The
    goal rotation tolerance is measured on the quaternion geodesic
    (half-angle) scale, consistent with the metric.
    """

    max_iterations: int = 5000
    goal_bias: float = 0.05
    goal_tol_translation: float = 0.5
    goal_tol_rotation: float = 0.05
    rewire_gamma: float | None = None
    step: SteerConfig = SteerConfig(5.0, 0.5)
    weights: MetricWeights = MetricWeights()
    seed: int = 0
    mode: str = MODE_DQ
    rotation_mode: str = ROTATION_FULL
    enable_rewire: bool = True
    stop_on_first_solution: bool = False
    include_tree: bool = False
    check_tree: bool = False  # per-iteration consistency asserts (tests only)

    def __post_init__(self) -> None:
        if not 0.0 <= self.goal_bias < 1.0:
            raise ValueError(f"goal_bias must be in [0, 1), got {self.goal_bias}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.rewire_gamma is not None and not self.rewire_gamma > 0.0:
            raise ValueError("rewire_gamma must be > 0")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.rotation_mode not in ROTATION_MODES:
            raise ValueError(f"rotation_mode must be one of {ROTATION_MODES}")


@dataclass
class PlannedPath:
    """Planner output: pose sequence plus run statistics.

    ``cost`` always equals the sum of consecutive pose distances;
    ``best_cost_trace`` holds (iteration, incumbent cost) pairs and is
    non-increasing in cost. The originating scenario is attached so the
    path can be exported and validated without extra context.
    """

    poses: tuple[DualQuaternion, ...]
    cost: float
    iterations_used: int = 0
    nodes_in_tree: int = 0
    best_cost_trace: tuple[tuple[int, float], ...] = ()
    tree_snapshot: tuple[tuple[DualQuaternion, int | None], ...] | None = None
    mode: str = MODE_DQ
    rotation_mode: str = ROTATION_FULL
    weights: MetricWeights = MetricWeights()
    step: SteerConfig = SteerConfig(5.0, 0.5)
    seed: int = 0
    scenario: "Scenario | None" = None
    wall_time_ms: float = 0.0

    @property
    def edge_rotation_angles(self) -> tuple[float, ...]:
        """Quaternion geodesic between consecutive waypoints, per edge."""
        return tuple(
            quat_geodesic(a.real, b.real) for a, b in zip(self.poses, self.poses[1:])
        )


def extract_path(tree: Tree, goal_id: int) -> PlannedPath:
    """Root-to-goal pose sequence; cost equals the goal node's cost.

    Raises:
        BrokenParentChainError: if the parent chain does not reach the root.
    """
    if not 0 <= goal_id < len(tree):
        raise BrokenParentChainError(f"node {goal_id} not in tree of size {len(tree)}")
    chain = []
    node_id: int | None = goal_id
    while node_id is not None:
        if len(chain) > len(tree):
            raise BrokenParentChainError(f"parent chain from node {goal_id} does not terminate")
        node = tree.nodes[node_id]
        chain.append(node)
        node_id = node.parent
    chain.reverse()
    if chain[0].parent is not None:
        raise BrokenParentChainError("chain did not end at a root node")
    return PlannedPath(
        poses=tuple(n.dq for n in chain),
        cost=tree.nodes[goal_id].cost_from_root,
        nodes_in_tree=len(tree),
    )


def _rewire_radius(step_max: float, gamma: float, n: int, dim: int) -> float:
    if n <= 1:
        return 0.0
    return min(step_max, gamma * (math.log(n) / n) ** (1.0 / dim))


def _choose_parent(
    tree: Tree,
    new_dq: DualQuaternion,
    near_id: int,
    neighbors: list[int],
    edge_clear: Callable[[DualQuaternion, DualQuaternion], bool],
    w: MetricWeights,
) -> tuple[int, float]:
    """Cheapest collision-free connection among the neighbors.

    The nearest node (whose edge has already been checked) is always a
    candidate, so a parent always exists. Ties break to the lowest index.
    """
    dist_by_id = {
        j: pose_distance(tree.nodes[j].dq, new_dq, w) for j in set(neighbors) | {near_id}
    }
    order = sorted(dist_by_id, key=lambda j: (tree.nodes[j].cost_from_root + dist_by_id[j], j))
    for j in order:
        if j == near_id or edge_clear(tree.nodes[j].dq, new_dq):
            return j, dist_by_id[j]
    return near_id, dist_by_id[near_id]


def plan(scenario: "Scenario", cfg: PlannerConfig) -> PlannedPath:
    """Run the RRT* loop on a scenario.

    Each iteration samples a pose (the goal itself with probability
    ``goal_bias``), steers from the nearest node, and—if the edge to the
    steered pose is collision-free—inserts it, connecting through the
    cheapest collision-free neighbor inside the shrinking-ball radius and
    then rewiring that neighborhood. Nodes inside the goal tolerance are
    tracked; the best of them is extended by one final exact-goal edge
    when that edge is collision-free.

    Args:
        scenario: workspace bounds, start and goal poses, obstacles.
        cfg: planner configuration; ``cfg.seed`` fixes the entire run.

    Returns:
        The best path found, with statistics and an optional tree snapshot.

    Raises:
        InvalidScenarioError: if the start or goal violates bounds or clearance.
        NoPathFoundError: if no node reaches the goal tolerance within the
            iteration budget.
    """
    t_begin = time.perf_counter()
    scenario.require_valid()
    obstacles = scenario.obstacles
    w = cfg.weights
    step = cfg.step
    gamma = cfg.rewire_gamma if cfg.rewire_gamma is not None else 2.0 * scenario.bounds.diagonal()
    dim = 6 if cfg.rotation_mode == ROTATION_FULL else 3

    if cfg.mode == MODE_DQ:
        def steer_fn(a: DualQuaternion, b: DualQuaternion) -> DualQuaternion:
            return steer_dq(a, b, w, step)

        def edge_clear(a: DualQuaternion, b: DualQuaternion) -> bool:
            return edge_clear_dq(a, b, obstacles, step, w)
    else:
        def steer_fn(a: DualQuaternion, b: DualQuaternion) -> DualQuaternion:
            new_pose = steer_se3(dq_to_pose(a), dq_to_pose(b), w, step)
            return dq_from_pose(new_pose)

        def edge_clear(a: DualQuaternion, b: DualQuaternion) -> bool:
            return edge_clear_se3(dq_to_pose(a), dq_to_pose(b), obstacles, step, w)

    rng = RngStream(cfg.seed)
    start_dq = dq_from_pose(scenario.start)
    goal_dq = dq_from_pose(scenario.goal)
    goal_translation = scenario.goal.translation
    goal_rotation = scenario.goal.rotation

    tree = Tree()
    tree.add(start_dq, None, 0.0)
    goal_ids: list[int] = []
    trace: list[tuple[int, float]] = []
    incumbent = math.inf
    iterations_used = 0

    for iteration in range(1, cfg.max_iterations + 1):
        iterations_used = iteration
        if rng.uniform() < cfg.goal_bias:
            rand = goal_dq
        else:
            rand = sample_pose(scenario.bounds, rng, cfg.rotation_mode)

        near_id = nearest(tree, rand, w)
        near_dq = tree.nodes[near_id].dq
        new_dq = steer_fn(near_dq, rand)
        step_len = pose_distance(near_dq, new_dq, w)
        if step_len < _COST_EPS:
            continue
        if not edge_clear(near_dq, new_dq):
            continue

        if cfg.enable_rewire:
            radius = _rewire_radius(step.step_max, gamma, len(tree), dim)
            neighbors = near_set(tree, new_dq, radius, w)
            parent_id, edge_cost = _choose_parent(tree, new_dq, near_id, neighbors, edge_clear, w)
            new_id = tree.add(new_dq, parent_id, edge_cost)
            rewire(tree, new_id, neighbors, edge_clear, w)
        else:
            new_id = tree.add(new_dq, near_id, step_len)

        if cfg.check_tree:
            tree.check_consistency(w)

        t_new = dq_translation(new_dq)
        if (
            math.dist(t_new, goal_translation) <= cfg.goal_tol_translation
            and quat_geodesic(new_dq.real, goal_rotation) <= cfg.goal_tol_rotation
        ):
            goal_ids.append(new_id)

        if goal_ids:
            best_now = min(
                tree.nodes[g].cost_from_root + pose_distance(tree.nodes[g].dq, goal_dq, w)
                for g in goal_ids
            )
            if best_now < incumbent:
                incumbent = best_now
                trace.append((iteration, best_now))
            if cfg.stop_on_first_solution:
                break

    if not goal_ids:
        raise NoPathFoundError(
            f"no pose within goal tolerance after {cfg.max_iterations} iterations"
        )

    best_id = min(
        goal_ids,
        key=lambda g: (
            tree.nodes[g].cost_from_root + pose_distance(tree.nodes[g].dq, goal_dq, w),
            g,
        ),
    )
    path = extract_path(tree, best_id)
    poses = list(path.poses)
    cost = path.cost
    completion = pose_distance(tree.nodes[best_id].dq, goal_dq, w)
    if completion >= _COST_EPS and edge_clear(tree.nodes[best_id].dq, goal_dq):
        poses.append(goal_dq)
        cost += completion

    snapshot = None
    if cfg.include_tree:
        snapshot = tuple((n.dq, n.parent) for n in tree.nodes)

    return PlannedPath(
        poses=tuple(poses),
        cost=cost,
        iterations_used=iterations_used,
        nodes_in_tree=len(tree),
        best_cost_trace=tuple(trace),
        tree_snapshot=snapshot,
        mode=cfg.mode,
        rotation_mode=cfg.rotation_mode,
        weights=w,
        step=step,
        seed=cfg.seed,
        scenario=scenario,
        wall_time_ms=(time.perf_counter() - t_begin) * 1000.0,
    )
