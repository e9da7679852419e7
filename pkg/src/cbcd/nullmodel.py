"""Erdos-Renyi null model: graph generation, PS moments, Monte-Carlo PS samples.

Random streams: replication ``r`` of a run seeded with ``seed`` draws from
``numpy.random.default_rng([seed, r])`` (PCG64 under a SeedSequence), so
samples do not depend on the order in which replications are computed.

Node pairs are drawn in row-major upper-triangle order (0,1), (0,2), ...,
(0,n-1), (1,2), ...  The edges touching nodes ``0..c-1`` are therefore a prefix
of the draw sequence, and statistics of those nodes can be sampled from the
prefix alone with exactly the values the full graph would give.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .graph import Graph

RNG_NAME = "numpy.PCG64 via SeedSequence([seed, replication])"
HIST_BINS = 61


@dataclass(frozen=True)
class ErParams:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("E-R graphs need n >= 2")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"edge probability {self.p} outside [0, 1]")

    @classmethod
    def from_lambda(cls, n: int, lam: float, seed: int = 0) -> "ErParams":
        return cls(n, lam / (n - 1), seed)

    @classmethod
    def from_edges(cls, n: int, m: int, seed: int = 0) -> "ErParams":
        return cls(n, 2 * m / (n * (n - 1)), seed)

    @property
    def lam(self) -> float:
        return (self.n - 1) * self.p


def replication_rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.default_rng([seed, rep])


def _pair_draws(rng: np.random.Generator, n: int, p: float, count: Optional[int] = None) -> np.ndarray:
    total = n * (n - 1) // 2
    return rng.random(total if count is None else count) < p


def generate_er(params: ErParams, rep: int = 0) -> Graph:
    """G(n, p) with every pair included independently; replication ``rep`` of ``params.seed``."""
    rng = replication_rng(params.seed, rep)
    iu, ju = np.triu_indices(params.n, 1)
    mask = _pair_draws(rng, params.n, params.p)
    return Graph(params.n, zip(iu[mask].tolist(), ju[mask].tolist()))


# ------------------------------------------------------------------ moments

def ps_variance(N: int, epsilon: int, p: float) -> float:
    """Closed-form Var[PS(u, S)] under G(n, p), lambda = N p, as used for the Chebyshev bound."""
    lam = N * p
    e = epsilon
    return ((p * p * e * e - p * p * e + p * e) / N ** 2
            + lam * e * e * (lam - p + 1) / N ** 4
            - 2 * p * e * e * (lam + 1) / N ** 3)


def ps_variance_exact(N: int, epsilon: int, p: float) -> float:
    """Var[PS] with E[d*omega] = eps*p + eps*(N-1)*p^2 (the pair i == j counted once)."""
    e = epsilon
    e_w2 = e * (e - 1) * p * p + e * p
    e_dw = e * p + e * (N - 1) * p * p
    e_d2 = N * (N - 1) * p * p + N * p
    return e_w2 / N ** 2 - 2 * e * e_dw / N ** 3 + e * e * e_d2 / N ** 4


def ps_variance_bound(kappa: float, N: int, epsilon: int, p: float) -> float:
    """Chebyshev bound on P[|PS(u, S)| >= sqrt(kappa)]."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if not 0 < epsilon < N:
        raise ValueError("need 0 < epsilon < N")
    if not 0 < p < 1:
        raise ValueError("need 0 < p < 1")
    return ps_variance(N, epsilon, p) / kappa


# ------------------------------------------------------------------ sampling

@dataclass
class PsSample:
    values: np.ndarray
    bin_edges: np.ndarray
    counts: np.ndarray
    discarded: int = 0
    meta: Dict[str, object] = field(default_factory=dict)

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    @property
    def std_error(self) -> float:
        return float(self.values.std(ddof=1) / math.sqrt(len(self.values)))

    def iqr(self) -> float:
        q1, q3 = np.percentile(self.values, [25, 75])
        return float(q3 - q1)


def histogram(values: np.ndarray, bins: int = HIST_BINS):
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    return np.histogram(values, bins=bins, range=(lo, hi))


def _node_value(row: np.ndarray, eps: int, N: int, measure: str) -> float:
    w = int(row[:eps].sum())
    d = int(row.sum())
    if measure == "ps":
        return w / N - eps * d / (N * N)
    denom = eps * (N - eps) * d * (N - d)
    if denom == 0:
        return math.nan
    return (w * N - eps * d) / math.sqrt(denom)


def sample_ps_distribution(params: ErParams, community_size: int, replications: int,
                           level: str = "node", measure: str = "ps") -> PsSample:
    """Monte-Carlo sample of PS(0, S) (``level='node'``) or F(S) (``level='community'``)
    for the fixed community S = {0, ..., community_size - 1}.

    ``measure='phi'`` samples the phi coefficient at node level instead;
    draws with a degenerate degree (0 or N) are dropped and counted.
    """
    n = params.n
    N = n - 1
    c = community_size
    if not 1 <= c < n:
        raise ValueError("community size must satisfy 1 <= size < n")
    if replications < 1:
        raise ValueError("need at least one replication")
    if level not in ("node", "community"):
        raise ValueError(f"unknown level {level!r}")
    if measure not in ("ps", "phi") or (measure == "phi" and level != "node"):
        raise ValueError(f"measure {measure!r} not available at level {level!r}")

    if level == "community":
        prefix = c * N - c * (c - 1) // 2
        iu, ju = np.triu_indices(n, 1)
        inside = ju[:prefix] < c

    values = np.empty(replications)
    for r in range(replications):
        rng = replication_rng(params.seed, r)
        if level == "node":
            # node 0's pairs are the first N draws; node 0 is in S with c - 1 co-members
            row = _pair_draws(rng, n, params.p, N)
            values[r] = _node_value(row, c - 1, N, measure)
        else:
            drawn = _pair_draws(rng, n, params.p, prefix)
            l_s = int(np.count_nonzero(drawn & inside))
            cut = int(np.count_nonzero(drawn)) - l_s
            k_s = 2 * l_s + cut
            values[r] = 2 * l_s / N - (c - 1) * k_s / (N * N)

    keep = ~np.isnan(values)
    discarded = int((~keep).sum())
    values = values[keep]
    if values.size == 0:
        raise ValueError("every replication was degenerate")
    counts, edges = histogram(values)
    meta = {"rng": RNG_NAME, "n": n, "p": params.p, "lambda": params.lam, "seed": params.seed,
            "community_size": c, "replications": replications, "level": level, "measure": measure,
            "discarded": discarded}
    return PsSample(values, edges, counts, discarded, meta)
