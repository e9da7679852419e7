"""Three-phase community detection: seed selection, local optimisation, Phi-driven merging."""

from __future__ import annotations

import heapq
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Set, Tuple

from .graph import UNASSIGNED, Graph, Partition
from .metrics import cos_or_zero, partition_gamma, phi_or_zero
from .triangles import TriangleCounts, count_triangles

log = logging.getLogger(__name__)

SMALL_GRAPH_TH = -2.8
LARGE_GRAPH_TH = -0.43
LARGE_GRAPH_NODES = 4000
# moves must beat float noise in the delta arithmetic
MOVE_TOL = 1e-13


@dataclass
class DetectConfig:
    th: Optional[float] = None  # None: pick by graph size
    max_it: int = 20
    merge_metric: str = "phi"  # "phi" | "cos"
    tie_break: str = "score-desc-id-asc"
    beta: Optional[float] = None
    # visit order in local optimisation: "seed" (triangle order) or "id"
    node_order: str = "seed"
    # phase B may also move a node into a new singleton community; off by
    # default, which leaves nodes whose membership costs objective in place
    allow_isolation: bool = False

    def __post_init__(self):
        if self.max_it < 1:
            raise ValueError("max_it must be >= 1")
        if self.merge_metric not in ("phi", "cos"):
            raise ValueError(f"unknown merge metric {self.merge_metric!r}")
        if self.tie_break != "score-desc-id-asc":
            raise ValueError(f"unknown tie-break policy {self.tie_break!r}")
        if self.node_order not in ("seed", "id"):
            raise ValueError(f"unknown node order {self.node_order!r}")
        if self.th is not None and not (-2.9 < self.th < 0):
            log.warning("threshold %.3f outside the recommended interval (-2.9, 0)", self.th)

    def threshold_for(self, g: Graph) -> float:
        if self.th is not None:
            return self.th
        return SMALL_GRAPH_TH if g.n < LARGE_GRAPH_NODES else LARGE_GRAPH_TH


# ------------------------------------------------------------------ phase 1

def seed_order(g: Graph, tc: TriangleCounts) -> List[int]:
    return sorted(range(g.n), key=lambda u: (-tc.tc[u], -g.degree[u], u))


def select_seeds(g: Graph, tc: TriangleCounts) -> List[int]:
    visited = [False] * g.n
    seeds = []
    for u in seed_order(g, tc):
        if visited[u]:
            continue
        visited[u] = True
        for v in g.adj[u]:
            visited[v] = True
        seeds.append(u)
    return seeds


# ------------------------------------------------------------------ phase 2

def _assign_unassigned(g: Graph, p: Partition, order: List[int]) -> int:
    """Put each unassigned node with an assigned neighbour into its best-PS community."""
    N = g.n - 1
    NN = N * N
    a = p.assignment
    added = 0
    for u in order:
        if a[u] != UNASSIGNED:
            continue
        links = Counter(a[v] for v in g.adj[u] if a[v] != UNASSIGNED)
        if not links:
            continue
        d = g.degree[u]
        best, best_score = None, float("-inf")
        for cid in sorted(links):
            # u is outside S, so every member of S counts toward epsilon
            score = links[cid] / N - p.communities[cid].size * d / NN
            if score > best_score:
                best, best_score = cid, score
        p.add(u, best)
        added += 1
    return added


def _refine(g: Graph, p: Partition, order: List[int], isolate: bool = False) -> int:
    """One hill-climbing sweep over assigned nodes; returns the number of moves."""
    N = g.n - 1
    NN = N * N
    a = p.assignment
    comms = p.communities
    moves = 0
    for u in order:
        own = a[u]
        if own == UNASSIGNED:
            continue
        d = g.degree[u]
        links = Counter(a[v] for v in g.adj[u] if a[v] != UNASSIGNED)
        s = comms[own]
        # gain u currently brings to its community: F(S) - F(S - u)
        stay = 2 * links.get(own, 0) / N - ((s.size - 1) * d + s.degree_sum - d) / NN
        best, best_gain = None, MOVE_TOL
        for cid in sorted(links):
            if cid == own:
                continue
            t = comms[cid]
            gain = 2 * links[cid] / N - (t.size * d + t.degree_sum) / NN - stay
            if gain > best_gain:
                best, best_gain = cid, gain
        # an empty community is a candidate too: joining it adds nothing
        if isolate and s.size > 1 and -stay > best_gain:
            best = p.new_community()
        if best is not None:
            p.move(u, best)
            moves += 1
    return moves


def local_optimize(g: Graph, seeds: List[int], cfg: Optional[DetectConfig] = None,
                   trace: Optional[List[float]] = None,
                   order: Optional[List[int]] = None) -> Partition:
    """Grow seed communities by PS, then move nodes while the objective improves.

    Nodes are visited in ``order``; by default the triangle ranking used for
    seed selection (``cfg.node_order == "seed"``) or ascending id.
    ``trace`` (if given) receives the objective after every iteration.
    """
    cfg = cfg or DetectConfig()
    if not seeds:
        raise ValueError("local optimisation needs at least one seed")
    if order is None:
        if cfg.node_order == "seed":
            order = seed_order(g, count_triangles(g, cfg.beta))
        else:
            order = list(range(g.n))
    elif sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the nodes")
    p = Partition(g)
    for s in seeds:
        p.add(s, p.new_community())

    best, best_gamma = p.copy(), partition_gamma(g, p)
    for _ in range(cfg.max_it):
        added = _assign_unassigned(g, p, order)
        moved = _refine(g, p, order, cfg.allow_isolation)
        gamma = partition_gamma(g, p)
        if trace is not None:
            trace.append(gamma)
        if added == 0 and moved == 0:
            break
        if added == 0 and gamma < best_gamma:
            # refinement only accepts improving moves; a drop means float trouble
            break
        best, best_gamma = p.copy(), gamma
    return best


# ------------------------------------------------------------------ phase 3

class DisjointSet:
    """Union-find with path compression and union by size."""

    def __init__(self, items, sizes=None):
        self.parent = {x: x for x in items}
        self.size = {x: (sizes[x] if sizes else 1) for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        """Join the sets of x and y. Returns (root, absorbed)."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx, ry
        sx, sy = self.size[rx], self.size[ry]
        if sx < sy or (sx == sy and ry < rx):
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return rx, ry


class CommunityGraph:
    """Communities as nodes, linked when some graph edge crosses them.

    Keeps per-node internal degrees and per-community scores so that a merge
    gain costs O(|S_i| + |S_j| + vol(S_i)).
    """

    def __init__(self, g: Graph, p: Partition, metric: str = "phi"):
        self.g, self.p, self.metric = g, p, metric
        self.N = g.n - 1
        a = p.assignment
        self.omega = [sum(1 for v in g.adj[u] if a[v] == a[u]) for u in range(g.n)]
        self.nbrs: Dict[int, Set[int]] = {c: set() for c in p.communities}
        for u, v in g.edges():
            if a[u] != a[v]:
                self.nbrs[a[u]].add(a[v])
                self.nbrs[a[v]].add(a[u])
        self.score = {c: self._score(s.members, s.size - 1, self.omega) for c, s in p.communities.items()}
        self.uf = DisjointSet(p.communities, {c: s.size for c, s in p.communities.items()})

    def _term(self, w: int, e: int, d: int) -> float:
        if self.metric == "phi":
            return phi_or_zero(w, e, d, self.N)
        return cos_or_zero(w, e, d)

    def _score(self, members, e: int, omega) -> float:
        deg = self.g.degree
        return sum(self._term(omega[u], e, deg[u]) for u in sorted(members))

    def _cross(self, ci: int, cj: int) -> Dict[int, int]:
        a = self.p.assignment
        cross: Dict[int, int] = {}
        small, big = (ci, cj) if self.p.communities[ci].degree_sum <= self.p.communities[cj].degree_sum else (cj, ci)
        for u in self.p.communities[small].members:
            for v in self.g.adj[u]:
                if a[v] == big:
                    cross[u] = cross.get(u, 0) + 1
                    cross[v] = cross.get(v, 0) + 1
        return cross

    def union_score(self, ci: int, cj: int, cross: Optional[Dict[int, int]] = None) -> float:
        if cross is None:
            cross = self._cross(ci, cj)
        si, sj = self.p.communities[ci], self.p.communities[cj]
        e = si.size + sj.size - 1
        deg = self.g.degree
        omega = self.omega
        total = 0.0
        for u in sorted(si.members | sj.members):
            total += self._term(omega[u] + cross.get(u, 0), e, deg[u])
        return total

    def gain(self, ci: int, cj: int) -> float:
        return self.union_score(ci, cj) - self.score[ci] - self.score[cj]

    def merge(self, ci: int, cj: int) -> int:
        cross = self._cross(ci, cj)
        union = self.union_score(ci, cj, cross)
        keep, gone = self.uf.union(ci, cj)
        if self.p.communities[keep].size < self.p.communities[gone].size:
            raise AssertionError("union by size disagrees with partition sizes")
        for u, k in cross.items():
            self.omega[u] += k
        self.p.merge(keep, gone)
        self.score[keep] = union
        del self.score[gone]
        moved = self.nbrs.pop(gone)
        for w in moved:
            if w != keep:
                self.nbrs[w].discard(gone)
                self.nbrs[w].add(keep)
        self.nbrs[keep] |= moved
        self.nbrs[keep] -= {keep, gone}
        return keep


MergeHook = Callable[[Partition, int, int, float], None]


def merge_communities(g: Graph, p: Partition, cfg: Optional[DetectConfig] = None,
                      on_merge: Optional[MergeHook] = None) -> Partition:
    """Greedily merge neighbouring communities while the best Phi gain exceeds the threshold.

    Works on a copy of ``p``. ``on_merge(partition, i, j, gain)`` is called
    just before each union with the partition still in its pre-merge state.
    """
    cfg = cfg or DetectConfig()
    if not p.is_complete():
        raise ValueError("merging needs a fully assigned partition")
    th = cfg.threshold_for(g)
    q = p.copy()
    cg = CommunityGraph(g, q, cfg.merge_metric)
    current: Dict[Tuple[int, int], float] = {}
    heap: List[Tuple[float, int, int]] = []

    def offer(i: int, j: int) -> None:
        i, j = min(i, j), max(i, j)
        w = cg.gain(i, j)
        current[(i, j)] = w
        if w > th:
            heapq.heappush(heap, (-w, i, j))

    for i in sorted(cg.nbrs):
        for j in sorted(cg.nbrs[i]):
            if i < j:
                offer(i, j)

    while heap:
        negw, i, j = heapq.heappop(heap)
        w = -negw
        if cg.uf.find(i) != i or cg.uf.find(j) != j or current.get((i, j)) != w:
            continue
        if on_merge is not None:
            on_merge(q, i, j, w)
        keep = cg.merge(i, j)
        gone = j if keep == i else i
        for key in [k for k in current if gone in k or keep in k]:
            del current[key]
        for nb in sorted(cg.nbrs[keep]):
            offer(keep, nb)
    return q


# ------------------------------------------------------------------ pipeline

@dataclass
class DetectResult:
    partition: Partition
    seeds: List[int]
    pre_merge: Partition
    gamma_trace: List[float]
    threshold: float


def detect_full(g: Graph, cfg: Optional[DetectConfig] = None) -> DetectResult:
    cfg = cfg or DetectConfig()
    tc = count_triangles(g, cfg.beta)
    seeds = select_seeds(g, tc)
    trace: List[float] = []
    order = seed_order(g, tc) if cfg.node_order == "seed" else list(range(g.n))
    p = local_optimize(g, seeds, cfg, trace, order)
    for u in p.unassigned():
        p.add(u, p.new_community())
    merged = merge_communities(g, p, cfg)
    return DetectResult(merged, seeds, p, trace, cfg.threshold_for(g))


def detect(g: Graph, cfg: Optional[DetectConfig] = None) -> Partition:
    return detect_full(g, cfg).partition
