"""Random and canonical networks, and the weak-arrow verification sweep."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dist_core import BayesNet, Cpt, VarSpec, bayesnet_to_dict
from .structure_inference import dag_from_roles, check_weak_arrow

TRIANGLE_NAMES = ("X", "Y", "Z")
ROW_FLOOR = 1e-12

# orientation name lists root, bridge, sink
ORIENTATIONS = {
    "".join(TRIANGLE_NAMES[i] for i in perm): perm
    for perm in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
}


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_cpt(rng: np.random.Generator, child: VarSpec, parents: Sequence[VarSpec], alpha: float) -> Cpt:
    """Dirichlet(alpha) rows, floored so every entry is strictly positive."""
    n_rows = int(np.prod([p.card for p in parents], dtype=int))
    rows = rng.dirichlet(np.full(child.card, alpha), size=n_rows)
    rows = np.maximum(rows, ROW_FLOOR)
    rows /= rows.sum(axis=1, keepdims=True)
    return Cpt(child, tuple(parents), rows)


def random_net(vars_: Sequence[VarSpec], edges: Sequence[tuple[int, int]], seed, alpha: float = 1.0) -> BayesNet:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    rng = _rng(seed)
    vars_ = tuple(vars_)
    cpts = []
    for j, v in enumerate(vars_):
        parents = tuple(vars_[a] for a, b in sorted(edges) if b == j)
        cpts.append(random_cpt(rng, v, parents, alpha))
    return BayesNet(vars_, frozenset(edges), tuple(cpts))


def random_triangle_net(seed, cards: Sequence[int] = (2, 2, 2), alpha: float = 1.0, orientation: str = "random") -> BayesNet:
    """Random full-support network on the triangle over X, Y, Z.

    ``orientation`` is a root-bridge-sink name such as ``"XZY"`` or ``"random"``.
    """
    if len(cards) != 3:
        raise ValueError("a triangle needs exactly three cardinalities")
    rng = _rng(seed)
    if orientation == "random":
        perm = list(ORIENTATIONS.values())[rng.integers(len(ORIENTATIONS))]
    else:
        try:
            perm = ORIENTATIONS[orientation]
        except KeyError:
            raise ValueError(f"unknown orientation {orientation!r}; choose from {sorted(ORIENTATIONS)} or 'random'") from None
    vars_ = tuple(VarSpec(n, int(c)) for n, c in zip(TRIANGLE_NAMES, cards))
    return random_net(vars_, dag_from_roles(*perm), rng, alpha)


P2_SHAPES = {
    "chain": ((0, 1), (1, 2)),
    "reverse-chain": ((2, 1), (1, 0)),
    "fork": ((1, 0), (1, 2)),
    "v-structure": ((0, 1), (2, 1)),
}


def random_p2_net(kind: str, seed, cards: Sequence[int] = (2, 2, 2), alpha: float = 1.0) -> BayesNet:
    """Random network on the path X - Y - Z with Y in the middle."""
    try:
        edges = P2_SHAPES[kind]
    except KeyError:
        raise ValueError(f"unknown path shape {kind!r}; choose from {sorted(P2_SHAPES)}") from None
    vars_ = tuple(VarSpec(n, int(c)) for n, c in zip(TRIANGLE_NAMES, cards))
    return random_net(vars_, edges, seed, alpha)


def _binary(*names: str) -> tuple[VarSpec, ...]:
    return tuple(VarSpec(n, 2) for n in names)


def fair_coin_net() -> BayesNet:
    (x,) = _binary("X")
    return BayesNet((x,), frozenset(), (Cpt(x, (), [[0.5, 0.5]]),))


def copy_pair_net() -> BayesNet:
    """X a fair bit, Y = X."""
    x, y = _binary("X", "Y")
    copy = [[1.0, 0.0], [0.0, 1.0]]
    return BayesNet((x, y), frozenset({(0, 1)}), (Cpt(x, (), [[0.5, 0.5]]), Cpt(y, (x,), copy)))


def copy_chain_net() -> BayesNet:
    """X a fair bit, Y = X, Z = Y."""
    x, y, z = _binary("X", "Y", "Z")
    copy = [[1.0, 0.0], [0.0, 1.0]]
    return BayesNet(
        (x, y, z),
        frozenset({(0, 1), (1, 2)}),
        (Cpt(x, (), [[0.5, 0.5]]), Cpt(y, (x,), copy), Cpt(z, (y,), copy)),
    )


def xor_net() -> BayesNet:
    """X, Z independent fair bits and Y = X xor Z."""
    x, y, z = _binary("X", "Y", "Z")
    y_cpt = Cpt.from_function(y, (x, z), lambda a, c: [1.0, 0.0] if a == c else [0.0, 1.0])
    return BayesNet(
        (x, y, z),
        frozenset({(0, 1), (2, 1)}),
        (Cpt(x, (), [[0.5, 0.5]]), y_cpt, Cpt(z, (), [[0.5, 0.5]])),
    )


def noisy_xor_triangle_net(flip_xz: float = 0.45, noise_y: float = 0.05) -> BayesNet:
    """Triangle X -> Z -> Y with X -> Y; the X -> Z arrow is weak.

    X is a fair bit, Z copies X with flip probability ``flip_xz``, and Y is
    X xor Z flipped with probability ``noise_y``.
    """
    x, y, z = _binary("X", "Y", "Z")
    z_cpt = Cpt.from_function(z, (x,), lambda a: [1 - flip_xz, flip_xz] if a == 0 else [flip_xz, 1 - flip_xz])
    y_cpt = Cpt.from_function(
        y, (x, z), lambda a, c: [1 - noise_y, noise_y] if a == c else [noise_y, 1 - noise_y]
    )
    return BayesNet(
        (x, y, z),
        frozenset({(0, 2), (2, 1), (0, 1)}),
        (Cpt(x, (), [[0.5, 0.5]]), y_cpt, z_cpt),
    )


def net_digest(net: BayesNet) -> str:
    doc = json.dumps(bayesnet_to_dict(net), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(doc.encode()).hexdigest()[:16]


def _summary(values: list[float]) -> dict:
    if not values:
        return {"count": 0, "min": None, "max": None, "mean": None}
    return {"count": len(values), "min": min(values), "max": max(values), "mean": float(np.mean(values))}


@dataclass
class SweepReport:
    trials: int
    negative_interaction_count: int = 0
    condition_met_count: int = 0
    tie_count: int = 0
    violations: int = 0
    violation_exemplars: list[dict] = field(default_factory=list)
    interactions: list[float] = field(default_factory=list, repr=False)
    min_strengths: list[float] = field(default_factory=list, repr=False)

    def check_counters(self) -> bool:
        return self.violations <= self.condition_met_count <= self.negative_interaction_count <= self.trials

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "negative_interaction_count": self.negative_interaction_count,
            "condition_met_count": self.condition_met_count,
            "tie_count": self.tie_count,
            "violations": self.violations,
            "violation_exemplars": self.violation_exemplars,
            "interaction": _summary(self.interactions),
            "min_strength": _summary(self.min_strengths),
        }


MAX_EXEMPLARS = 10


def run_weak_arrow_sweep(trials: int, seed: int, cards: Sequence[int] = (2, 2, 2), alpha: float = 1.0) -> SweepReport:
    """Check the weak-arrow claim on ``trials`` random triangle networks.

    Trial ``i`` draws its network from the generator seeded with ``(seed, i)``,
    so any trial can be regenerated on its own.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = SweepReport(trials)
    for i in range(trials):
        net = random_triangle_net((seed, i), cards, alpha)
        check = check_weak_arrow(net)
        report.interactions.append(check.interaction)
        report.min_strengths.append(check.min_strength)
        if check.negative:
            report.negative_interaction_count += 1
        if check.premises:
            report.condition_met_count += 1
            report.tie_count += check.tie
        if not check.claim_holds:
            report.violations += 1
            if len(report.violation_exemplars) < MAX_EXEMPLARS:
                report.violation_exemplars.append({"seed": [seed, i], "digest": net_digest(net)})
    return report
