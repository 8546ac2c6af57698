"""Ancestral sampling from a network and plug-in estimates from categorical data."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist_core import BayesNet, JointDistribution, VarSpec
from .info_measures import InfoProfile, info_profile

GENERATOR = "numpy.random.PCG64"


class SampleFormatError(ValueError):
    """Malformed sample CSV; the message carries the offending line number."""


@dataclass(frozen=True, eq=False)
class SampleMatrix:
    vars: tuple[VarSpec, ...]
    rows: np.ndarray
    seed: int | None = None
    generator: str | None = None

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] != len(self.vars) or rows.shape[0] < 1:
            raise ValueError(f"rows must be an (N >= 1, {len(self.vars)}) array, got shape {rows.shape}")
        cards = np.array([v.card for v in self.vars])
        if np.any(rows < 0) or np.any(rows >= cards):
            raise ValueError("state index out of range")
        rows.setflags(write=False)
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)


def forward_sample(net: BayesNet, n: int, seed: int) -> SampleMatrix:
    """Draw ``n`` i.i.d. rows by sampling variables in topological order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    rows = np.zeros((n, len(net.vars)), dtype=np.int64)
    for j in net.order:
        cpt = net.cpts[j]
        parents = net.parent_indices(j)
        row_idx = np.zeros(n, dtype=np.int64)
        for p in parents:
            row_idx = row_idx * net.vars[p].card + rows[:, p]
        cum = np.cumsum(cpt.table, axis=1)
        u = rng.random(n)
        # count of cumulative thresholds <= u, capped for rounding at the top end
        states = (u[:, None] >= cum[row_idx]).sum(axis=1)
        rows[:, j] = np.minimum(states, cpt.child.card - 1)
    return SampleMatrix(net.vars, rows, seed=seed, generator=GENERATOR)


def empirical_joint(samples: SampleMatrix, smoothing: float = 0.0) -> JointDistribution:
    """Relative frequencies, with optional additive smoothing ``smoothing`` per cell."""
    if smoothing < 0:
        raise ValueError("smoothing must be non-negative")
    shape = tuple(v.card for v in samples.vars)
    flat = np.ravel_multi_index(samples.rows.T, shape)
    counts = np.bincount(flat, minlength=int(np.prod(shape))).astype(float) + smoothing
    return JointDistribution(samples.vars, (counts / counts.sum()).reshape(shape))


def estimate_profile(samples: SampleMatrix, x: int, y: int, z: int, smoothing: float = 0.0) -> InfoProfile:
    return info_profile(empirical_joint(samples, smoothing), x, y, z)


def write_samples_csv(samples: SampleMatrix, dest) -> None:
    """Write to a path or an open text stream."""
    if hasattr(dest, "write"):
        w = csv.writer(dest, lineterminator="\n")
        w.writerow(samples.names)
        w.writerows(samples.rows.tolist())
        return
    with open(dest, "w", newline="") as f:
        write_samples_csv(samples, f)


def read_samples_csv(path, cards: Sequence[int]) -> SampleMatrix:
    """Parse a header-plus-integers CSV, rejecting anything out of range."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise SampleFormatError(f"{path}: line 1: empty file") from None
        header = [h.strip() for h in header]
        if len(header) != len(cards):
            raise SampleFormatError(
                f"{path}: line 1: header has {len(header)} columns but {len(cards)} cardinalities were given"
            )
        try:
            vars_ = tuple(VarSpec(name, int(c)) for name, c in zip(header, cards))
        except ValueError as e:
            raise SampleFormatError(f"{path}: line 1: {e}") from None
        if len(set(header)) != len(header):
            raise SampleFormatError(f"{path}: line 1: duplicate column names")
        rows = []
        for record in reader:
            lineno = reader.line_num
            if not record or all(not c.strip() for c in record):
                continue
            if len(record) != len(vars_):
                raise SampleFormatError(f"{path}: line {lineno}: expected {len(vars_)} fields, got {len(record)}")
            row = []
            for v, cell in zip(vars_, record):
                try:
                    s = int(cell.strip())
                except ValueError:
                    raise SampleFormatError(f"{path}: line {lineno}: field {v.name!r}: not an integer: {cell!r}") from None
                if not 0 <= s < v.card:
                    raise SampleFormatError(
                        f"{path}: line {lineno}: field {v.name!r}: state {s} out of range 0..{v.card - 1}"
                    )
                row.append(s)
            rows.append(row)
    if not rows:
        raise SampleFormatError(f"{path}: no data rows")
    return SampleMatrix(vars_, np.array(rows, dtype=np.int64))
