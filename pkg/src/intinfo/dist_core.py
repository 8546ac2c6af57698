"""Dense discrete joint distributions and small Bayesian networks.

All probabilities live in a row-major numpy tensor whose axes follow the
declaration order of the variables. Logarithms are base 2 throughout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

NORM_TOL = 1e-9
KL_SUPPORT_TOL = 1e-12
MAX_STATE_BITS = 25


class StructureError(ValueError):
    """Raised for cyclic or otherwise malformed graph structure."""


class NetFormatError(ValueError):
    """Raised when a network JSON document does not match the expected schema."""


@dataclass(frozen=True)
class VarSpec:
    name: str
    card: int

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValueError(f"variable name must be a non-empty string, got {self.name!r}")
        if int(self.card) != self.card or self.card < 2:
            raise ValueError(f"variable {self.name!r}: cardinality must be an integer >= 2, got {self.card!r}")


def _check_unique(vars_: Sequence[VarSpec]) -> None:
    names = [v.name for v in vars_]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")


def _normalized(probs: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(probs)):
        raise ValueError(f"{what}: non-finite probability")
    if np.any(probs < 0):
        raise ValueError(f"{what}: negative probability {probs.min()!r}")
    total = probs.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(f"{what}: probabilities sum to {total!r}, not 1")
    return probs / total


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Probability tensor over an ordered tuple of variables.

    Inputs summing to one within ``NORM_TOL`` are renormalized exactly; anything
    further off is rejected. The stored array is read-only.
    """

    vars: tuple[VarSpec, ...]
    probs: np.ndarray
    # subset entropies, filled lazily by info_measures; safe because probs is immutable
    _entropies: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        vars_ = tuple(self.vars)
        _check_unique(vars_)
        bits = sum(math.log2(v.card) for v in vars_)
        if bits > MAX_STATE_BITS:
            raise ValueError(f"state space of {bits:.1f} bits exceeds the {MAX_STATE_BITS}-bit limit")
        shape = tuple(v.card for v in vars_)
        probs = np.asarray(self.probs, dtype=float)
        if probs.size != math.prod(shape):
            raise ValueError(f"tensor has {probs.size} entries, expected {math.prod(shape)} for shape {shape}")
        probs = _normalized(probs.reshape(shape), "joint distribution")
        probs.setflags(write=False)
        object.__setattr__(self, "vars", vars_)
        object.__setattr__(self, "probs", probs)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.probs.shape

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}; have {list(self.names)}") from None

    def allclose(self, other: "JointDistribution", atol: float = 1e-12) -> bool:
        return self.vars == other.vars and np.allclose(self.probs, other.probs, rtol=0, atol=atol)


@dataclass(frozen=True, eq=False)
class Cpt:
    """Conditional probability table P(child | parents).

    ``table`` has one row per parent configuration, enumerated in mixed radix
    with the first parent most significant, and one column per child state.
    """

    child: VarSpec
    parents: tuple[VarSpec, ...]
    table: np.ndarray

    def __post_init__(self):
        parents = tuple(self.parents)
        n_rows = math.prod(p.card for p in parents)
        table = np.asarray(self.table, dtype=float)
        if table.shape != (n_rows, self.child.card):
            raise ValueError(
                f"CPT for {self.child.name!r}: table shape {table.shape}, expected {(n_rows, self.child.card)}"
            )
        if not np.all(np.isfinite(table)) or np.any(table < 0):
            raise ValueError(f"CPT for {self.child.name!r}: entries must be finite and non-negative")
        sums = table.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > NORM_TOL)
        if bad.size:
            raise ValueError(f"CPT for {self.child.name!r}: row {int(bad[0])} sums to {sums[bad[0]]!r}")
        table = table / sums[:, None]
        table.setflags(write=False)
        object.__setattr__(self, "parents", parents)
        object.__setattr__(self, "table", table)

    def tensor(self) -> np.ndarray:
        """The table reshaped to axes (parent_1, ..., parent_k, child)."""
        return self.table.reshape(tuple(p.card for p in self.parents) + (self.child.card,))

    @classmethod
    def from_function(cls, child: VarSpec, parents: Sequence[VarSpec], fn) -> "Cpt":
        """Build a table from ``fn(*parent_states) -> row``."""
        rows = [fn(*states) for states in np.ndindex(*(p.card for p in parents))]
        return cls(child, tuple(parents), np.asarray(rows, dtype=float).reshape(-1, child.card))


def topological_order(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Kahn's algorithm, smallest available index first; raises on cycles."""
    children: dict[int, list[int]] = {i: [] for i in range(n)}
    indeg = [0] * n
    for a, b in edges:
        children[a].append(b)
        indeg[b] += 1
    ready = sorted(i for i in range(n) if indeg[i] == 0)
    order = []
    while ready:
        i = ready.pop(0)
        order.append(i)
        for c in children[i]:
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
        ready.sort()
    if len(order) != n:
        raise StructureError("edge set contains a directed cycle")
    return order


@dataclass(frozen=True, eq=False)
class BayesNet:
    vars: tuple[VarSpec, ...]
    edges: frozenset[tuple[int, int]]
    cpts: tuple[Cpt, ...]
    order: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        vars_ = tuple(self.vars)
        _check_unique(vars_)
        edges = frozenset((int(a), int(b)) for a, b in self.edges)
        n = len(vars_)
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise StructureError(f"invalid edge ({a}, {b})")
        cpts = tuple(self.cpts)
        if len(cpts) != n:
            raise ValueError(f"expected {n} CPTs, got {len(cpts)}")
        for j, cpt in enumerate(cpts):
            if cpt.child != vars_[j]:
                raise ValueError(f"CPT {j} is for {cpt.child.name!r}, expected {vars_[j].name!r}")
            in_edges = {vars_[a] for a, b in edges if b == j}
            if set(cpt.parents) != in_edges or len(cpt.parents) != len(in_edges):
                raise StructureError(
                    f"CPT parents of {vars_[j].name!r} {[p.name for p in cpt.parents]} "
                    f"do not match in-edges {sorted(p.name for p in in_edges)}"
                )
        object.__setattr__(self, "vars", vars_)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "cpts", cpts)
        object.__setattr__(self, "order", tuple(topological_order(n, edges)))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}; have {list(self.names)}") from None

    def parent_indices(self, j: int) -> tuple[int, ...]:
        """Parents of variable ``j`` in CPT order."""
        return tuple(self.vars.index(p) for p in self.cpts[j].parents)

    def with_cpts(self, cpts: Sequence[Cpt]) -> "BayesNet":
        edges = set()
        for j, cpt in enumerate(cpts):
            edges.update((self.vars.index(p), j) for p in cpt.parents)
        return BayesNet(self.vars, frozenset(edges), tuple(cpts))


def _factor_into(shape: tuple[int, ...], axes: Sequence[int], tensor: np.ndarray) -> np.ndarray:
    """Permute ``tensor`` (axes labelled by ``axes``) into broadcastable form for ``shape``."""
    perm = sorted(range(len(axes)), key=lambda k: axes[k])
    t = np.transpose(tensor, perm)
    full = [1] * len(shape)
    for a in axes:
        full[a] = shape[a]
    return t.reshape(full)


def joint_from_cpt_tensors(net: BayesNet, tensors: Sequence[np.ndarray]) -> np.ndarray:
    shape = tuple(v.card for v in net.vars)
    out = np.ones(shape)
    for j in net.order:
        out = out * _factor_into(shape, net.parent_indices(j) + (j,), tensors[j])
    return out


def joint_from_bayesnet(net: BayesNet) -> JointDistribution:
    """Multiply out every CPT into the dense joint."""
    return JointDistribution(net.vars, joint_from_cpt_tensors(net, [c.tensor() for c in net.cpts]))


def _as_indices(joint: JointDistribution, idx: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted({int(i) for i in idx}))
    for i in out:
        if not 0 <= i < len(joint.vars):
            raise IndexError(f"variable index {i} out of range for {len(joint.vars)} variables")
    return out


def marginal_array(probs: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    drop = tuple(i for i in range(probs.ndim) if i not in keep)
    return probs.sum(axis=drop)


def marginalize(joint: JointDistribution, keep: Iterable[int]) -> JointDistribution:
    """Sum out everything not in ``keep``. Kept variables stay in their original order.

    An empty ``keep`` gives the zero-variable distribution with a single state of mass 1.
    """
    keep = _as_indices(joint, keep)
    return JointDistribution(tuple(joint.vars[i] for i in keep), marginal_array(joint.probs, keep))


def conditional(
    joint: JointDistribution, target: Iterable[int], given: Mapping[int, int]
) -> np.ndarray | None:
    """P(target | given) as an array over target states (axes in index order).

    Variables in neither ``target`` nor ``given`` are summed out. Returns None
    when the conditioning event has probability zero.
    """
    target = _as_indices(joint, target)
    given = {int(k): int(v) for k, v in given.items()}
    if set(target) & set(given):
        raise ValueError("target and conditioning variables overlap")
    keep = tuple(sorted(set(target) | set(given)))
    _as_indices(joint, given)
    marg = marginal_array(joint.probs, keep)
    index = []
    for i in keep:
        if i in given:
            s = given[i]
            if not 0 <= s < joint.vars[i].card:
                raise ValueError(f"state {s} out of range for {joint.vars[i].name!r}")
            index.append(s)
        else:
            index.append(slice(None))
    row = marg[tuple(index)]
    mass = row.sum()
    if mass <= 0:
        return None
    return row / mass


def kl_divergence(p: JointDistribution, q: JointDistribution) -> float:
    """D(p || q) in bits; ``math.inf`` if q has a zero where p is non-negligible."""
    if p.vars != q.vars:
        raise ValueError("KL divergence needs distributions over identical variables")
    return kl_array(p.probs, q.probs)


def kl_array(p: np.ndarray, q: np.ndarray) -> float:
    support = p > 0
    qs = q[support]
    ps = p[support]
    if np.any((qs <= 0) & (ps > KL_SUPPORT_TOL)):
        return math.inf
    ok = qs > 0
    return max(float(np.sum(ps[ok] * np.log2(ps[ok] / qs[ok]))), 0.0)


def product_of_marginals(joint: JointDistribution, subset: Iterable[int]) -> JointDistribution:
    """Outer product of the single-variable marginals of ``subset``."""
    subset = _as_indices(joint, subset)
    if not subset:
        raise ValueError("subset must be non-empty")
    out = np.ones(())
    for i in subset:
        out = np.multiply.outer(out, marginal_array(joint.probs, (i,)))
    return JointDistribution(tuple(joint.vars[i] for i in subset), out)


# --- JSON network format -------------------------------------------------------


def bayesnet_from_dict(doc: Mapping) -> BayesNet:
    """Parse ``{"vars": [...], "edges": [...], "cpts": {...}}``."""
    if not isinstance(doc, Mapping):
        raise NetFormatError("top level: expected a JSON object")
    for key in ("vars", "edges", "cpts"):
        if key not in doc:
            raise NetFormatError(f"top level: missing field {key!r}")
    vars_ = []
    for k, v in enumerate(doc["vars"]):
        if not isinstance(v, Mapping) or "name" not in v or "card" not in v:
            raise NetFormatError(f"vars[{k}]: expected an object with 'name' and 'card'")
        if not isinstance(v["card"], int) or isinstance(v["card"], bool):
            raise NetFormatError(f"vars[{k}].card: expected an integer, got {v['card']!r}")
        try:
            vars_.append(VarSpec(v["name"], v["card"]))
        except ValueError as e:
            raise NetFormatError(f"vars[{k}]: {e}") from None
    try:
        _check_unique(vars_)
    except ValueError as e:
        raise NetFormatError(f"vars: {e}") from None
    by_name = {v.name: i for i, v in enumerate(vars_)}

    edges = set()
    for k, e in enumerate(doc["edges"]):
        if not isinstance(e, Sequence) or isinstance(e, str) or len(e) != 2:
            raise NetFormatError(f"edges[{k}]: expected a [parent, child] pair")
        for name in e:
            if name not in by_name:
                raise NetFormatError(f"edges[{k}]: unknown variable {name!r}")
        edges.add((by_name[e[0]], by_name[e[1]]))

    cpt_doc = doc["cpts"]
    if not isinstance(cpt_doc, Mapping):
        raise NetFormatError("cpts: expected an object keyed by variable name")
    for name in cpt_doc:
        if name not in by_name:
            raise NetFormatError(f"cpts: unknown variable {name!r}")
    cpts = []
    for v in vars_:
        entry = cpt_doc.get(v.name)
        if entry is None:
            raise NetFormatError(f"cpts: missing entry for {v.name!r}")
        parents = entry.get("parents", [])
        for name in parents:
            if name not in by_name:
                raise NetFormatError(f"cpts.{v.name}.parents: unknown variable {name!r}")
        if "rows" not in entry:
            raise NetFormatError(f"cpts.{v.name}: missing field 'rows'")
        try:
            table = np.asarray(entry["rows"], dtype=float)
        except (TypeError, ValueError):
            raise NetFormatError(f"cpts.{v.name}.rows: ragged or non-numeric rows") from None
        try:
            cpts.append(Cpt(v, tuple(vars_[by_name[p]] for p in parents), table))
        except ValueError as e:
            raise NetFormatError(f"cpts.{v.name}: {e}") from None
    try:
        return BayesNet(tuple(vars_), frozenset(edges), tuple(cpts))
    except ValueError as e:
        raise NetFormatError(f"structure: {e}") from None


def bayesnet_to_dict(net: BayesNet) -> dict:
    names = net.names
    return {
        "vars": [{"name": v.name, "card": v.card} for v in net.vars],
        "edges": [[names[a], names[b]] for a, b in sorted(net.edges)],
        "cpts": {
            c.child.name: {"parents": [p.name for p in c.parents], "rows": c.table.tolist()}
            for c in net.cpts
        },
    }


def load_bayesnet(path) -> BayesNet:
    with open(path) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise NetFormatError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    return bayesnet_from_dict(doc)


def save_bayesnet(net: BayesNet, path) -> None:
    with open(path, "w") as f:
        json.dump(bayesnet_to_dict(net), f, indent=2)
        f.write("\n")
