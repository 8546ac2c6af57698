"""Entropy, (conditional) mutual information and interaction information, in bits.

Every quantity here is assembled from entropies of marginal tensors, so the
textbook identities between them are checked by the tests rather than holding
by construction. Interaction information uses McGill's sign convention:
I(X;Y;Z) = I(X;Y) - I(X;Y|Z), negative when conditioning creates dependence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .dist_core import JointDistribution, marginal_array

IDENTITY_TOL = 1e-9


class InvariantError(RuntimeError):
    """An identity that must hold for any distribution failed numerically."""


def _indices(joint: JointDistribution, subset: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted({int(i) for i in subset}))
    for i in out:
        if not 0 <= i < len(joint.vars):
            raise IndexError(f"variable index {i} out of range")
    return out


def entropy_array(p: np.ndarray) -> float:
    p = p[p > 0]
    return max(float(-np.sum(p * np.log2(p))), 0.0)


def entropy(joint: JointDistribution, subset: Iterable[int] = ()) -> float:
    """H(subset); the empty set has entropy 0."""
    subset = _indices(joint, subset)
    if not subset:
        return 0.0
    cache = joint._entropies
    if subset not in cache:
        cache[subset] = entropy_array(marginal_array(joint.probs, subset))
    return cache[subset]


def _disjoint(*sets: tuple[int, ...]) -> None:
    seen: set[int] = set()
    for s in sets:
        if seen & set(s):
            raise ValueError(f"index sets must be pairwise disjoint, got {sets}")
        seen |= set(s)


def mutual_information(joint: JointDistribution, a: Iterable[int], b: Iterable[int]) -> float:
    a, b = _indices(joint, a), _indices(joint, b)
    _disjoint(a, b)
    return entropy(joint, a) + entropy(joint, b) - entropy(joint, a + b)


def conditional_mutual_information(
    joint: JointDistribution, a: Iterable[int], b: Iterable[int], c: Iterable[int]
) -> float:
    """I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)."""
    a, b, c = _indices(joint, a), _indices(joint, b), _indices(joint, c)
    _disjoint(a, b, c)
    return entropy(joint, a + c) + entropy(joint, b + c) - entropy(joint, a + b + c) - entropy(joint, c)


def interaction_information(joint: JointDistribution, v: Iterable[int]) -> float:
    """Alternating sum of subset entropies, sum over U of (-1)^(|U|+1) H(U)."""
    v = _indices(joint, v)
    if not v:
        raise ValueError("interaction information needs at least one variable")
    total = 0.0
    for k in range(1, len(v) + 1):
        sign = 1.0 if k % 2 else -1.0
        for u in combinations(v, k):
            total += sign * entropy(joint, u)
    return total


def interaction_forms3(joint: JointDistribution, x: int, y: int, z: int) -> tuple[float, float, float]:
    """The three MI-difference forms I(X;Y)-I(X;Y|Z), I(X;Z)-I(X;Z|Y), I(Y;Z)-I(Y;Z|X).

    Also evaluates the joint-MI forms such as I(X,Y;Z) - I(X;Z|Y) - I(Y;Z|X)
    and raises InvariantError if any of the six disagree with the alternating sum.
    """
    if len({x, y, z}) != 3:
        raise ValueError("x, y, z must be distinct")
    mi, cmi = mutual_information, conditional_mutual_information
    forms = (
        mi(joint, [x], [y]) - cmi(joint, [x], [y], [z]),
        mi(joint, [x], [z]) - cmi(joint, [x], [z], [y]),
        mi(joint, [y], [z]) - cmi(joint, [y], [z], [x]),
    )
    joint_forms = joint_mi_forms3(joint, x, y, z)
    reference = interaction_information(joint, (x, y, z))
    worst = max(abs(f - reference) for f in forms + joint_forms)
    if worst > IDENTITY_TOL:
        raise InvariantError(f"interaction forms disagree by {worst:.3e} bits")
    return forms


def joint_mi_forms3(joint: JointDistribution, x: int, y: int, z: int) -> tuple[float, float, float]:
    """I(X,Y;Z) - I(X;Z|Y) - I(Y;Z|X) and its two rotations."""
    mi, cmi = mutual_information, conditional_mutual_information
    return (
        mi(joint, [x, y], [z]) - cmi(joint, [x], [z], [y]) - cmi(joint, [y], [z], [x]),
        mi(joint, [x, z], [y]) - cmi(joint, [x], [y], [z]) - cmi(joint, [z], [y], [x]),
        mi(joint, [y, z], [x]) - cmi(joint, [y], [x], [z]) - cmi(joint, [z], [x], [y]),
    )


def yeung_bounds(joint: JointDistribution, x: int, y: int, z: int) -> tuple[float, float]:
    """(-min of the conditional MIs, min of the pairwise MIs)."""
    if len({x, y, z}) != 3:
        raise ValueError("x, y, z must be distinct")
    cmi = conditional_mutual_information
    mi = mutual_information
    lower = -min(cmi(joint, [x], [y], [z]), cmi(joint, [x], [z], [y]), cmi(joint, [y], [z], [x]))
    upper = min(mi(joint, [x], [y]), mi(joint, [x], [z]), mi(joint, [y], [z]))
    return lower, upper


def _clamp(v: float) -> float:
    return 0.0 if v < 0 else v


@dataclass(frozen=True)
class InfoProfile:
    """All entropies and informations of a designated triple (x, y, z).

    Indices refer to variables of the joint the profile came from.
    """

    x: int
    y: int
    z: int
    names: tuple[str, str, str]
    h_x: float
    h_y: float
    h_z: float
    h_xy: float
    h_xz: float
    h_yz: float
    h_xyz: float
    i_xy: float
    i_xz: float
    i_yz: float
    i_xy_given_z: float
    i_xz_given_y: float
    i_yz_given_x: float
    interaction: float

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def bounds(self) -> tuple[float, float]:
        lower = -min(self.i_xy_given_z, self.i_xz_given_y, self.i_yz_given_x)
        upper = min(self.i_xy, self.i_xz, self.i_yz)
        return lower, upper

    def to_dict(self) -> dict:
        nx, ny, nz = self.names
        c = _clamp
        return {
            "variables": [nx, ny, nz],
            "entropy": {
                nx: self.h_x,
                ny: self.h_y,
                nz: self.h_z,
                f"{nx},{ny}": self.h_xy,
                f"{nx},{nz}": self.h_xz,
                f"{ny},{nz}": self.h_yz,
                f"{nx},{ny},{nz}": self.h_xyz,
            },
            "mutual_information": {
                f"{nx};{ny}": c(self.i_xy),
                f"{nx};{nz}": c(self.i_xz),
                f"{ny};{nz}": c(self.i_yz),
            },
            "conditional_mutual_information": {
                f"{nx};{ny}|{nz}": c(self.i_xy_given_z),
                f"{nx};{nz}|{ny}": c(self.i_xz_given_y),
                f"{ny};{nz}|{nx}": c(self.i_yz_given_x),
            },
            "interaction": self.interaction,
        }


def info_profile(joint: JointDistribution, x: int, y: int, z: int) -> InfoProfile:
    """Compute the profile of (x, y, z) and check its identities and bounds."""
    if len({x, y, z}) != 3:
        raise ValueError("x, y, z must be distinct")
    h = lambda *s: entropy(joint, s)  # noqa: E731
    hx, hy, hz = h(x), h(y), h(z)
    hxy, hxz, hyz, hxyz = h(x, y), h(x, z), h(y, z), h(x, y, z)
    prof = InfoProfile(
        x=x, y=y, z=z,
        names=(joint.vars[x].name, joint.vars[y].name, joint.vars[z].name),
        h_x=hx, h_y=hy, h_z=hz, h_xy=hxy, h_xz=hxz, h_yz=hyz, h_xyz=hxyz,
        i_xy=hx + hy - hxy,
        i_xz=hx + hz - hxz,
        i_yz=hy + hz - hyz,
        i_xy_given_z=hxz + hyz - hxyz - hz,
        i_xz_given_y=hxy + hyz - hxyz - hy,
        i_yz_given_x=hxy + hxz - hxyz - hx,
        interaction=hx + hy + hz - hxy - hxz - hyz + hxyz,
    )
    check_profile(prof)
    return prof


def check_profile(prof: InfoProfile, tol: float = IDENTITY_TOL) -> None:
    mis = (prof.i_xy, prof.i_xz, prof.i_yz, prof.i_xy_given_z, prof.i_xz_given_y, prof.i_yz_given_x)
    if min(mis) < -tol:
        raise InvariantError(f"negative mutual information {min(mis):.3e}")
    forms = (
        prof.i_xy - prof.i_xy_given_z,
        prof.i_xz - prof.i_xz_given_y,
        prof.i_yz - prof.i_yz_given_x,
    )
    if max(abs(f - prof.interaction) for f in forms) > tol:
        raise InvariantError("interaction information forms disagree")
    lower, upper = prof.bounds()
    if not lower - tol <= prof.interaction <= upper + tol:
        raise InvariantError(f"interaction {prof.interaction} outside [{lower}, {upper}]")
