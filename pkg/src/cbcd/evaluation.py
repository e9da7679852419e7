"""Normalized mutual information between two disjoint partitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, List, Mapping, Union

import numpy as np

from .graph import GroundTruth, Partition

Labels = Union[Partition, Mapping[int, Hashable]]


class CoverageError(ValueError):
    pass


@dataclass
class ConfusionMatrix:
    counts: np.ndarray  # rows: detected blocks, cols: true blocks
    row_labels: List[Hashable]
    col_labels: List[Hashable]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)


def _as_labels(x: Labels) -> Mapping[int, Hashable]:
    if isinstance(x, Partition):
        if not x.is_complete():
            raise CoverageError(f"partition leaves nodes {x.unassigned()} unassigned")
        return dict(enumerate(x.assignment))
    return x


def confusion(detected: Labels, truth: Labels) -> ConfusionMatrix:
    a, b = _as_labels(detected), _as_labels(truth)
    missing = sorted(set(a) ^ set(b))
    if missing:
        raise CoverageError(f"partitions disagree on coverage of nodes {missing}")
    rows = sorted(set(a.values()), key=repr)
    cols = sorted(set(b.values()), key=repr)
    ri = {x: i for i, x in enumerate(rows)}
    ci = {x: i for i, x in enumerate(cols)}
    counts = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for u, lab in a.items():
        counts[ri[lab], ci[b[u]]] += 1
    return ConfusionMatrix(counts, rows, cols)


def _entropy(sizes: np.ndarray, total: int) -> float:
    q = sizes[sizes > 0] / total
    return float(-(q * np.log(q)).sum())


def nmi_from_confusion(cm: ConfusionMatrix) -> float:
    n = cm.total
    if n == 0:
        raise CoverageError("empty partitions")
    hx, hy = _entropy(cm.row_sums, n), _entropy(cm.col_sums, n)
    if hx == 0.0 and hy == 0.0:
        return 1.0
    if hx == 0.0 or hy == 0.0:
        return 0.0
    nz = cm.counts > 0
    nij = cm.counts[nz].astype(float)
    outer = np.outer(cm.row_sums, cm.col_sums)[nz].astype(float)
    mi = float((nij / n * np.log(nij * n / outer)).sum())
    return min(1.0, max(0.0, 2.0 * mi / (hx + hy)))


def nmi(detected: Labels, truth: Labels) -> float:
    """2 I(X;Y) / (H(X) + H(Y)) over the commonly covered nodes."""
    return nmi_from_confusion(confusion(detected, truth))


def blocks_to_labels(blocks) -> GroundTruth:
    out = GroundTruth()
    for k, block in enumerate(blocks):
        for u in block:
            if u in out:
                raise CoverageError(f"node {u} appears in more than one community")
            out[u] = k
    return out
