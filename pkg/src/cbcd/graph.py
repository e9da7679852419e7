"""Undirected simple graphs, partitions with incremental statistics, and file IO."""

from __future__ import annotations

import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Set, TextIO, Tuple

log = logging.getLogger(__name__)

UNASSIGNED = -1


class GraphFormatError(ValueError):
    pass


class Graph:
    """Immutable undirected simple graph on dense ids ``0..n-1``.

    ``labels[i]`` keeps the original id of dense node ``i`` so output can be
    written back in the caller's id space.
    """

    __slots__ = ("n", "m", "adj", "degree", "labels", "_nbr_sets", "_index")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]], labels: Optional[Sequence[Hashable]] = None):
        buckets: List[Set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) outside 0..{n - 1}")
            buckets[u].add(v)
            buckets[v].add(u)
        self.n = n
        self.adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(b)) for b in buckets)
        self.degree: Tuple[int, ...] = tuple(len(a) for a in self.adj)
        self.m = sum(self.degree) // 2
        self.labels: Tuple[Hashable, ...] = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise GraphFormatError("labels length does not match node count")
        self._nbr_sets = tuple(frozenset(a) for a in self.adj)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def neighbors(self, u: int) -> Tuple[int, ...]:
        return self.adj[u]

    def neighbor_set(self, u: int) -> frozenset:
        return self._nbr_sets[u]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def edges(self):
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def index_of(self, label: Hashable) -> int:
        return self._index[label]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.labels == other.labels

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def subgraph_without(self, drop: Iterable[int]) -> "Graph":
        """Graph with the given dense nodes deleted, re-indexed, labels kept."""
        drop = set(drop)
        keep = [u for u in range(self.n) if u not in drop]
        remap = {u: i for i, u in enumerate(keep)}
        edges = [(remap[u], remap[v]) for u, v in self.edges() if u in remap and v in remap]
        return Graph(len(keep), edges, [self.labels[u] for u in keep])


@dataclass
class LoadReport:
    self_loops: int = 0
    duplicates: int = 0

    @property
    def warnings(self) -> int:
        return self.self_loops + self.duplicates


def load_edge_list(stream: TextIO, one_indexed: bool = False, comment_prefix: str = "#",
                   report: Optional[LoadReport] = None) -> Graph:
    """Parse whitespace-separated integer pairs into a :class:`Graph`.

    Node ids are densely re-indexed in order of increasing original id; the
    original ids survive as ``Graph.labels``. Self-loops and repeated edges
    are dropped and counted in ``report``.
    """
    report = report if report is not None else LoadReport()
    base = 1 if one_indexed else 0
    pairs: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or (comment_prefix and line.startswith(comment_prefix)):
            continue
        tok = line.split()
        if len(tok) < 2:
            raise GraphFormatError(f"line {lineno}: expected two node ids, got {line!r}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer node id in {line!r}") from None
        if u < base or v < base:
            raise GraphFormatError(f"line {lineno}: node id below index base {base}")
        if u == v:
            report.self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            report.duplicates += 1
            continue
        seen.add(key)
        pairs.append(key)
    if not pairs:
        raise GraphFormatError("edge list contains no edges")
    if report.warnings:
        log.warning("dropped %d self-loop(s) and %d duplicate edge(s)", report.self_loops, report.duplicates)
    ids = sorted({x for e in pairs for x in e})
    remap = {x: i for i, x in enumerate(ids)}
    return Graph(len(ids), ((remap[u], remap[v]) for u, v in pairs), ids)


def write_edge_list(g: Graph, stream: TextIO) -> None:
    for u, v in g.edges():
        stream.write(f"{g.labels[u]} {g.labels[v]}\n")


@dataclass
class Community:
    members: Set[int] = field(default_factory=set)
    internal_edges: int = 0  # l_S
    degree_sum: int = 0  # K_S

    @property
    def size(self) -> int:
        return len(self.members)


class Partition:
    """Node -> community assignment with l_S, K_S and size kept up to date.

    Nodes may be :data:`UNASSIGNED`. Every mutation costs O(degree(u)).
    """

    def __init__(self, g: Graph):
        self.g = g
        self.assignment: List[int] = [UNASSIGNED] * g.n
        self.communities: Dict[int, Community] = {}
        self._next_id = 0

    @classmethod
    def from_assignment(cls, g: Graph, assignment: Sequence[int]) -> "Partition":
        p = cls(g)
        for u, c in enumerate(assignment):
            if c != UNASSIGNED:
                p.add(u, c)
        return p

    @classmethod
    def from_blocks(cls, g: Graph, blocks: Iterable[Iterable[int]]) -> "Partition":
        p = cls(g)
        for block in blocks:
            cid = p.new_community()
            for u in block:
                p.add(u, cid)
        return p

    def copy(self) -> "Partition":
        q = Partition(self.g)
        q.assignment = list(self.assignment)
        q.communities = {c: Community(set(s.members), s.internal_edges, s.degree_sum)
                         for c, s in self.communities.items()}
        q._next_id = self._next_id
        return q

    def new_community(self) -> int:
        cid = self._next_id
        self._next_id += 1
        self.communities[cid] = Community()
        return cid

    def community_of(self, u: int) -> int:
        return self.assignment[u]

    def links_to(self, u: int, cid: int) -> int:
        """Number of edges between u and the members of ``cid`` other than u."""
        a = self.assignment
        return sum(1 for v in self.g.adj[u] if a[v] == cid)

    def add(self, u: int, cid: int) -> None:
        if self.assignment[u] != UNASSIGNED:
            raise ValueError(f"node {u} already in community {self.assignment[u]}")
        if cid not in self.communities:
            self.communities[cid] = Community()
            self._next_id = max(self._next_id, cid + 1)
        s = self.communities[cid]
        s.internal_edges += self.links_to(u, cid)
        s.degree_sum += self.g.degree[u]
        s.members.add(u)
        self.assignment[u] = cid

    def remove(self, u: int) -> int:
        cid = self.assignment[u]
        if cid == UNASSIGNED:
            raise ValueError(f"node {u} is unassigned")
        s = self.communities[cid]
        s.members.discard(u)
        self.assignment[u] = UNASSIGNED
        s.internal_edges -= self.links_to(u, cid)
        s.degree_sum -= self.g.degree[u]
        if not s.members:
            del self.communities[cid]
        return cid

    def move(self, u: int, cid: int) -> None:
        self.remove(u)
        self.add(u, cid)

    def merge(self, keep: int, absorb: int) -> None:
        """Fold community ``absorb`` into ``keep``."""
        if keep == absorb:
            raise ValueError("cannot merge a community with itself")
        a, b = self.communities[keep], self.communities.pop(absorb)
        cross = sum(1 for u in b.members for v in self.g.adj[u] if self.assignment[v] == keep)
        for u in b.members:
            self.assignment[u] = keep
        a.members |= b.members
        a.internal_edges += b.internal_edges + cross
        a.degree_sum += b.degree_sum

    def unassigned(self) -> List[int]:
        return [u for u, c in enumerate(self.assignment) if c == UNASSIGNED]

    def is_complete(self) -> bool:
        return UNASSIGNED not in self.assignment

    def blocks(self) -> List[List[int]]:
        """Communities as sorted member lists, ordered by smallest member."""
        return sorted((sorted(s.members) for s in self.communities.values()), key=lambda b: b[0])

    def canonical(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(b) for b in self.blocks())

    def __len__(self) -> int:
        return len(self.communities)

    def __repr__(self) -> str:
        return f"Partition({len(self)} communities, {len(self.unassigned())} unassigned)"


def induced_internal_degree(g: Graph, p: Partition, u: int) -> int:
    cid = p.assignment[u]
    if cid == UNASSIGNED:
        raise ValueError(f"node {u} is unassigned")
    return p.links_to(u, cid)


# ---------------------------------------------------------------- partitions on disk

class GroundTruth(dict):
    """Mapping dense node id -> community label."""

    def blocks(self) -> List[List[int]]:
        by_label: Dict[Hashable, List[int]] = {}
        for u in sorted(self):
            by_label.setdefault(self[u], []).append(u)
        return sorted(by_label.values(), key=lambda b: b[0])

    def restrict(self, keep: Iterable[int]) -> "GroundTruth":
        return GroundTruth({u: self[u] for u in keep})


def _parse_id(tok: str, g: Optional[Graph], lineno: int) -> int:
    try:
        x = int(tok)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: non-integer node id {tok!r}") from None
    if g is None:
        return x
    try:
        return g.index_of(x)
    except KeyError:
        raise GraphFormatError(f"line {lineno}: node {x} is not in the graph") from None


def load_ground_truth(stream: TextIO, fmt: str = "node_label", g: Optional[Graph] = None,
                      comment_prefix: str = "#") -> GroundTruth:
    """Read labels as ``node label`` lines or one community per line.

    When a graph is given, ids are translated to its dense ids and every graph
    node must be covered.
    """
    labels = GroundTruth()
    if fmt not in ("node_label", "line_per_community"):
        raise ValueError(f"unknown ground-truth format {fmt!r}")
    cnum = 0
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith(comment_prefix):
            continue
        tok = line.split()
        if fmt == "node_label":
            if len(tok) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'node label', got {line!r}")
            lab: Hashable = tok[1]
            try:
                lab = int(tok[1])
            except ValueError:
                pass
            labels[_parse_id(tok[0], g, lineno)] = lab
        else:
            for t in tok:
                u = _parse_id(t, g, lineno)
                if u in labels:
                    raise GraphFormatError(f"line {lineno}: node {t} appears in two communities")
                labels[u] = cnum
            cnum += 1
    if g is not None:
        missing = [g.labels[u] for u in range(g.n) if u not in labels]
        if missing:
            raise GraphFormatError(f"ground truth has no label for nodes {missing}")
    return labels


def write_partition(p: Partition, stream: TextIO, fmt: str = "community-per-line") -> None:
    labels = p.g.labels
    if fmt == "community-per-line":
        for block in p.blocks():
            stream.write(" ".join(str(labels[u]) for u in block) + "\n")
    elif fmt == "node-tab":
        for k, block in enumerate(p.blocks()):
            for u in block:
                stream.write(f"{labels[u]}\t{k}\n")
    else:
        raise ValueError(f"unknown partition format {fmt!r}")
