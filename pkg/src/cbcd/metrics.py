"""Node-community correlation measures and the community/partition objectives built on them.

All measures are functions of a 2x2 contingency table between the neighbour
indicator of a node ``u`` and the membership indicator of a community ``S``,
both taken over the ``N = n - 1`` nodes other than ``u``:

    omega    neighbours of u inside S
    epsilon  members of S other than u
    d        degree of u
    N        n - 1
"""

from __future__ import annotations

import math
from typing import NamedTuple, Tuple

from .graph import UNASSIGNED, Graph, Partition


class DegenerateTableError(ValueError):
    """Raised when a measure's denominator vanishes."""


class ContingencyTable(NamedTuple):
    omega: int
    epsilon: int
    d: int
    N: int

    @property
    def cells(self) -> Tuple[int, int, int, int]:
        """(f11, f10, f01, f00)."""
        w, e, d, N = self
        return w, e - w, d - w, N - e - d + w

    def is_valid(self) -> bool:
        return min(self.cells) >= 0


def contingency(g: Graph, p: Partition, u: int) -> ContingencyTable:
    cid = p.assignment[u]
    if cid == UNASSIGNED:
        raise ValueError(f"node {u} is unassigned")
    return ContingencyTable(p.links_to(u, cid), p.communities[cid].size - 1, g.degree[u], g.n - 1)


def outside_contingency(g: Graph, p: Partition, u: int, cid: int) -> ContingencyTable:
    """Table for a node ``u`` that is not a member of ``cid``: all of S counts toward epsilon."""
    if p.assignment[u] == cid:
        raise ValueError(f"node {u} is a member of community {cid}")
    return ContingencyTable(p.links_to(u, cid), p.communities[cid].size, g.degree[u], g.n - 1)


def ps(ct: ContingencyTable) -> float:
    w, e, d, N = ct
    if N == 0:
        raise DegenerateTableError("PS undefined for N = 0")
    return w / N - e * d / (N * N)


def phi(ct: ContingencyTable) -> float:
    w, e, d, N = ct
    denom = e * (N - e) * d * (N - d)
    if denom <= 0:
        raise DegenerateTableError(f"phi undefined for table {tuple(ct)}")
    # products stay integral up to the final division
    return (w * N - e * d) / math.sqrt(denom)


def phi_or_zero(w: int, e: int, d: int, N: int) -> float:
    """phi with degenerate margins mapped to 0 (the independence value)."""
    denom = e * (N - e) * d * (N - d)
    if denom <= 0:
        return 0.0
    return (w * N - e * d) / math.sqrt(denom)


def cos_or_zero(w: int, e: int, d: int) -> float:
    if e <= 0 or d <= 0:
        return 0.0
    return w / math.sqrt(e * d)


def confidence_scores(ct: ContingencyTable) -> Tuple[float, float]:
    """(nb-score, com-score) = (omega / d, omega / epsilon)."""
    w, e, d, _ = ct
    if d == 0 or e == 0:
        raise DegenerateTableError(f"confidence undefined for table {tuple(ct)}")
    return w / d, w / e


# ------------------------------------------------------------------ community level

def _F(l_s: int, k_s: int, size: int, N: int) -> float:
    return 2 * l_s / N - (size - 1) * k_s / (N * N)


def community_F(g: Graph, p: Partition, cid: int) -> float:
    s = p.communities[cid]
    return _F(s.internal_edges, s.degree_sum, s.size, g.n - 1)


def partition_gamma(g: Graph, p: Partition) -> float:
    N = g.n - 1
    return sum(_F(s.internal_edges, s.degree_sum, s.size, N) for s in p.communities.values())


def _member_sum(g: Graph, p: Partition, cid: int, term) -> float:
    members = p.communities[cid].members
    e = len(members) - 1
    N = g.n - 1
    a = p.assignment
    total = 0.0
    for u in sorted(members):
        w = sum(1 for v in g.adj[u] if a[v] == cid)
        total += term(w, e, g.degree[u], N)
    return total


def community_Phi(g: Graph, p: Partition, cid: int) -> float:
    return _member_sum(g, p, cid, phi_or_zero)


def community_cos(g: Graph, p: Partition, cid: int) -> float:
    return _member_sum(g, p, cid, lambda w, e, d, N: cos_or_zero(w, e, d))


def modularity_Q(g: Graph, p: Partition) -> float:
    m = g.m
    if m == 0:
        raise ValueError("modularity undefined on a graph without edges")
    return sum(s.internal_edges / m - (s.degree_sum / (2 * m)) ** 2 for s in p.communities.values())


# ------------------------------------------------------------------ incremental deltas

def delta_add(g: Graph, p: Partition, u: int, cid: int) -> float:
    """F(S + u) - F(S) for ``u`` not in S; 0 when S is empty."""
    if p.assignment[u] == cid:
        raise ValueError(f"node {u} already in community {cid}")
    s = p.communities.get(cid)
    if s is None or s.size == 0:
        return 0.0
    N = g.n - 1
    l_us = p.links_to(u, cid)
    # epsilon of S before the addition is |S| - 1, so (epsilon + 1) = |S|
    return 2 * l_us / N - (s.size * g.degree[u] + s.degree_sum) / (N * N)


def delta_remove(g: Graph, p: Partition, u: int) -> float:
    """F(S) - F(S - u): what u's membership currently contributes to its community."""
    cid = p.assignment[u]
    if cid == UNASSIGNED:
        raise ValueError(f"node {u} is unassigned")
    s = p.communities[cid]
    N = g.n - 1
    l_uh = p.links_to(u, cid)
    h_size = s.size - 1
    k_h = s.degree_sum - g.degree[u]
    return 2 * l_uh / N - (h_size * g.degree[u] + k_h) / (N * N)


def union_score(g: Graph, p: Partition, ci: int, cj: int, metric: str = "phi") -> float:
    """Phi (or its cosine limit) of S_i union S_j, without touching ``p``."""
    a = p.assignment
    members = p.communities[ci].members | p.communities[cj].members
    e = len(members) - 1
    N = g.n - 1
    total = 0.0
    for u in sorted(members):
        w = sum(1 for v in g.adj[u] if a[v] == ci or a[v] == cj)
        d = g.degree[u]
        total += phi_or_zero(w, e, d, N) if metric == "phi" else cos_or_zero(w, e, d)
    return total


def community_score(g: Graph, p: Partition, cid: int, metric: str = "phi") -> float:
    return community_Phi(g, p, cid) if metric == "phi" else community_cos(g, p, cid)


def delta_merge_W(g: Graph, p: Partition, ci: int, cj: int, metric: str = "phi") -> float:
    """Phi(S_i + S_j) - Phi(S_i) - Phi(S_j); ``metric='cos'`` uses the cosine limit."""
    if ci == cj:
        raise ValueError("delta_merge_W needs two distinct communities")
    if metric not in ("phi", "cos"):
        raise ValueError(f"unknown merge metric {metric!r}")
    return (union_score(g, p, ci, cj, metric)
            - community_score(g, p, ci, metric) - community_score(g, p, cj, metric))
