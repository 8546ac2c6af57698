"""Orientation of three-variable structures from the sign of interaction information.

For a path X - Y - Z the sign separates chains and forks (non-negative) from
v-structures (non-positive). For a triangle, negative interaction information
together with one weak arrow pins down the sink and leaves two candidate DAGs,
or exactly one when the root is known.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from itertools import permutations
from typing import Iterable, Sequence

from .causal_strength import TIE_TOL, StrengthReport, strength_report
from .dist_core import BayesNet, StructureError, joint_from_bayesnet
from .info_measures import InfoProfile, info_profile

DEFAULT_EPSILON = 1e-9

Dag = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TriangleRoles:
    root: int
    bridge: int
    sink: int


def roles_from_dag(dag: Iterable[tuple[int, int]]) -> TriangleRoles:
    """Root, bridge and sink of an acyclic orientation of a 3-cycle."""
    edges = [(int(a), int(b)) for a, b in dag]
    nodes = sorted({n for e in edges for n in e})
    if len(edges) != 3 or len(nodes) != 3 or len(set(frozenset(e) for e in edges)) != 3:
        raise StructureError(f"not an orientation of a triangle: {edges}")
    out_deg = {n: sum(a == n for a, _ in edges) for n in nodes}
    in_deg = {n: sum(b == n for _, b in edges) for n in nodes}
    roots = [n for n in nodes if out_deg[n] == 2]
    sinks = [n for n in nodes if in_deg[n] == 2]
    if len(roots) != 1 or len(sinks) != 1:
        raise StructureError(f"cyclic orientation: {edges}")
    (bridge,) = [n for n in nodes if n not in (roots[0], sinks[0])]
    return TriangleRoles(roots[0], bridge, sinks[0])


def dag_from_roles(root: int, bridge: int, sink: int) -> Dag:
    return tuple(sorted([(root, bridge), (root, sink), (bridge, sink)]))


def triangle_dags(nodes: Sequence[int]) -> list[Dag]:
    """The six acyclic orientations of the triangle on ``nodes``."""
    return [dag_from_roles(*p) for p in permutations(nodes)]


class P2Class(enum.Enum):
    CHAIN_OR_FORK = "chain-or-fork"
    V_STRUCTURE = "v-structure"
    INDETERMINATE = "indeterminate"


def classify_p2(profile: InfoProfile, epsilon: float = DEFAULT_EPSILON) -> P2Class:
    if profile.interaction > epsilon:
        return P2Class.CHAIN_OR_FORK
    if profile.interaction < -epsilon:
        return P2Class.V_STRUCTURE
    return P2Class.INDETERMINATE


@dataclass(frozen=True)
class TriangleVerdict:
    sink: int | None
    candidates: tuple[Dag, ...]
    weak_edge: tuple[int, int]
    interaction: float
    min_strength: float | None
    condition_met: bool
    reason: str
    names: tuple[str, str, str]
    indices: tuple[int, int, int]
    root: int | None = None

    def name_of(self, i: int) -> str:
        return self.names[self.indices.index(i)]

    def to_dict(self) -> dict:
        n = self.name_of
        return {
            "condition_met": self.condition_met,
            "reason": self.reason,
            "interaction": self.interaction,
            "min_strength": self.min_strength,
            "weak_edge": [n(i) for i in self.weak_edge],
            "root": None if self.root is None else n(self.root),
            "sink": None if self.sink is None else n(self.sink),
            "candidates": [[[n(a), n(b)] for a, b in dag] for dag in self.candidates],
        }


def _weak_pair(profile: InfoProfile, weak_edge: Iterable[int]) -> tuple[int, int]:
    pair = tuple(sorted({int(i) for i in weak_edge}))
    if len(pair) != 2 or not set(pair) <= set(profile.indices):
        raise ValueError(f"weak edge {tuple(weak_edge)} is not an edge of the triangle {profile.indices}")
    return pair


def classify_triangle(
    profile: InfoProfile,
    weak_edge: Iterable[int],
    strengths: StrengthReport | None = None,
    epsilon: float = DEFAULT_EPSILON,
) -> TriangleVerdict:
    """Sink and the two candidate DAGs, or a declined verdict when premises fail.

    The weak edge always joins root and bridge; without knowing which end is
    the root, both orientations of it remain.
    """
    a, b = _weak_pair(profile, weak_edge)
    (sink,) = [i for i in profile.indices if i not in (a, b)]
    interaction = profile.interaction
    min_strength = None if strengths is None else strengths.min_strength
    common = dict(
        weak_edge=(a, b), interaction=interaction, min_strength=min_strength,
        names=profile.names, indices=profile.indices,
    )
    if not interaction < -epsilon:
        return TriangleVerdict(None, (), condition_met=False, reason="interaction information is not negative", **common)
    if strengths is not None and not min_strength < abs(interaction):
        return TriangleVerdict(
            None, (), condition_met=False,
            reason="weakest causal strength is not below |interaction information|", **common,
        )
    candidates = (dag_from_roles(a, b, sink), dag_from_roles(b, a, sink))
    return TriangleVerdict(sink, candidates, condition_met=True, reason="ok", **common)


def classify_triangle_with_root(
    profile: InfoProfile,
    weak_edge: Iterable[int],
    root: int,
    strengths: StrengthReport | None = None,
    epsilon: float = DEFAULT_EPSILON,
) -> TriangleVerdict:
    """As :func:`classify_triangle`, narrowed to the single DAG rooted at ``root``."""
    a, b = _weak_pair(profile, weak_edge)
    if root not in (a, b):
        raise ValueError("the known root must be an endpoint of the weak edge")
    verdict = classify_triangle(profile, (a, b), strengths, epsilon)
    if not verdict.condition_met:
        return replace(verdict, root=root)
    bridge = b if root == a else a
    dag = dag_from_roles(root, bridge, verdict.sink)
    return replace(verdict, candidates=(dag,), root=root)


def weak_edge_from_strengths(report: StrengthReport) -> tuple[int, int] | None:
    """The unordered weakest edge, or None when the minimum is tied."""
    if report.tie:
        return None
    e = report.min_edge
    return tuple(sorted((e.parent, e.child)))


def triangle_dag(net: BayesNet) -> Dag:
    """The network's edges if its skeleton is a 3-cycle on three variables."""
    if len(net.vars) != 3 or len(net.edges) != 3:
        raise ValueError("network is not a triangle over three variables")
    dag = tuple(sorted(net.edges))
    if len({frozenset(e) for e in dag}) != 3:
        raise ValueError("network is not a triangle over three variables")
    return dag


@dataclass(frozen=True)
class WeakArrowCheck:
    """Ground-truth test of the weak-arrow claim on one triangle network.

    ``claim_holds`` is the implication: if the interaction is negative and
    the weakest arrow is below |interaction|, that arrow is root -> bridge.
    Ties in the minimum are flagged and never count as violations.
    """

    roles: TriangleRoles
    interaction: float
    strength_rb: float
    strength_rs: float
    strength_bs: float
    negative: bool
    weak_condition: bool
    tie: bool
    argmin_is_root_bridge: bool | None
    others_above: bool | None
    claim_holds: bool

    @property
    def premises(self) -> bool:
        return self.negative and self.weak_condition

    @property
    def min_strength(self) -> float:
        return min(self.strength_rb, self.strength_rs, self.strength_bs)


def check_weak_arrow(net: BayesNet, epsilon: float = DEFAULT_EPSILON) -> WeakArrowCheck:
    roles = roles_from_dag(triangle_dag(net))
    r, b, s = roles.root, roles.bridge, roles.sink
    joint = joint_from_bayesnet(net)
    interaction = info_profile(joint, 0, 1, 2).interaction
    report = strength_report(net)
    c_rb, c_rs, c_bs = report.strength_of(r, b), report.strength_of(r, s), report.strength_of(b, s)
    strengths = {(r, b): c_rb, (r, s): c_rs, (b, s): c_bs}
    low = min(strengths.values())
    at_min = [e for e, c in strengths.items() if c - low <= TIE_TOL]
    tie = len(at_min) > 1
    negative = interaction < -epsilon
    weak = low < abs(interaction)
    argmin_ok = others = None
    holds = True
    if negative and weak:
        others = c_rs >= abs(interaction) - TIE_TOL and c_bs >= abs(interaction) - TIE_TOL
        holds = others
        if not tie:
            argmin_ok = at_min[0] == (r, b)
            holds = holds and argmin_ok
    return WeakArrowCheck(
        roles=roles, interaction=interaction,
        strength_rb=c_rb, strength_rs=c_rs, strength_bs=c_bs,
        negative=negative, weak_condition=weak, tie=tie,
        argmin_is_root_bridge=argmin_ok, others_above=others, claim_holds=holds,
    )
