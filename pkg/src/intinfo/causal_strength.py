"""Causal strength of arrow sets as the KL divergence to a cut network.

Cutting a set of arrows S replaces, for every affected child, its conditional
by a mixture over the cut parents, weighted by the product of those parents'
observational marginals. The strength is D(P || P_S) in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .dist_core import (
    BayesNet,
    JointDistribution,
    _factor_into,
    joint_from_bayesnet,
    kl_array,
    marginal_array,
)

TIE_TOL = 1e-9


def _arrow_set(net: BayesNet, arrows: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    s = frozenset((int(a), int(b)) for a, b in arrows)
    missing = s - net.edges
    if missing:
        names = net.names
        bad = ", ".join(f"{names[a]}->{names[b]}" for a, b in sorted(missing))
        raise ValueError(f"arrows not in the network: {bad}")
    return s


def _cut_tensor(net: BayesNet, probs: np.ndarray, j: int, cut: set[int]) -> tuple[tuple[int, ...], np.ndarray]:
    """Mixed conditional of ``j`` given its uncut parents, as (axes, tensor)."""
    parents = net.parent_indices(j)
    table = net.cpts[j].tensor()
    kept_pos = [k for k, p in enumerate(parents) if p not in cut]
    cut_pos = [k for k, p in enumerate(parents) if p in cut]

    weights = np.ones(())
    for k in cut_pos:
        weights = np.multiply.outer(weights, marginal_array(probs, (parents[k],)))
    # weights has axes in cut_pos order; broadcast it over all parent axes
    w_full = _factor_into(table.shape[:-1], cut_pos, weights)

    # parent configurations the observational joint never visits get no weight
    sorted_parents = sorted(parents)
    mass = marginal_array(probs, sorted_parents)
    mass = np.transpose(mass, [sorted_parents.index(p) for p in parents])
    w = np.broadcast_to(w_full, mass.shape) * (mass > 0)
    cut_axes = tuple(cut_pos)
    norm = w.sum(axis=cut_axes, keepdims=True)
    fallback = np.broadcast_to(w_full, mass.shape)
    w = np.where(norm > 0, w / np.where(norm > 0, norm, 1.0), fallback)

    mixed = np.sum(table * w[..., None], axis=cut_axes)
    return tuple(parents[k] for k in kept_pos) + (j,), mixed


def interventional_array(net: BayesNet, arrows: Iterable[tuple[int, int]], probs: np.ndarray | None = None) -> np.ndarray:
    s = _arrow_set(net, arrows)
    if probs is None:
        probs = joint_from_bayesnet(net).probs
    shape = tuple(v.card for v in net.vars)
    out = np.ones(shape)
    for j in range(len(net.vars)):
        cut = {a for a, b in s if b == j}
        if cut:
            axes, tensor = _cut_tensor(net, probs, j, cut)
        else:
            axes, tensor = net.parent_indices(j) + (j,), net.cpts[j].tensor()
        out = out * _factor_into(shape, axes, tensor)
    return out


def interventional_distribution(net: BayesNet, arrows: Iterable[tuple[int, int]]) -> JointDistribution:
    """P_S for the arrow set ``arrows`` (pairs of variable indices)."""
    s = _arrow_set(net, arrows)
    joint = joint_from_bayesnet(net)
    if not s:
        return joint
    return JointDistribution(net.vars, interventional_array(net, s, joint.probs))


def causal_strength(net: BayesNet, arrows: Iterable[tuple[int, int]], probs: np.ndarray | None = None) -> float:
    """D(P || P_S) in bits; ``math.inf`` if P_S misses support of P."""
    s = _arrow_set(net, arrows)
    if probs is None:
        probs = joint_from_bayesnet(net).probs
    if not s:
        return 0.0
    return kl_array(probs, interventional_array(net, s, probs))


@dataclass(frozen=True)
class EdgeStrength:
    parent: int
    child: int
    parent_name: str
    child_name: str
    strength: float

    @property
    def key(self) -> tuple[str, str]:
        return (self.parent_name, self.child_name)


@dataclass(frozen=True)
class StrengthReport:
    """Single-arrow strengths of every edge, ordered by (parent name, child name).

    ``tie`` is set when another edge is within ``TIE_TOL`` of the minimum; the
    lexicographically first such edge is reported as ``min_edge``.
    """

    edges: tuple[EdgeStrength, ...]
    min_edge: EdgeStrength
    tie: bool

    @property
    def min_strength(self) -> float:
        return self.min_edge.strength

    def strength_of(self, a: int, b: int) -> float:
        for e in self.edges:
            if (e.parent, e.child) == (a, b):
                return e.strength
        raise KeyError((a, b))

    def to_dict(self) -> dict:
        return {
            "edges": [{"from": e.parent_name, "to": e.child_name, "strength": e.strength} for e in self.edges],
            "min_edge": [self.min_edge.parent_name, self.min_edge.child_name],
            "min_strength": self.min_strength,
            "tie": self.tie,
        }


def strength_report(net: BayesNet) -> StrengthReport:
    if not net.edges:
        raise ValueError("network has no edges")
    probs = joint_from_bayesnet(net).probs
    names = net.names
    edges = sorted(
        (
            EdgeStrength(a, b, names[a], names[b], causal_strength(net, [(a, b)], probs))
            for a, b in net.edges
        ),
        key=lambda e: e.key,
    )
    low = min(e.strength for e in edges)
    near = [e for e in edges if e.strength - low <= TIE_TOL or (math.isinf(low) and math.isinf(e.strength))]
    return StrengthReport(tuple(edges), near[0], len(near) > 1)
