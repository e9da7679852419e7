"""Bundled and external benchmark graphs with ground truth.

Karate ships with the package. The college-football network is not
redistributed; point ``load_football`` (or the ``CBCD_FOOTBALL`` environment
variable) at a copy of ``football.gml`` whose nodes carry a ``value``
attribute with the conference index.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path
from typing import Optional, Tuple

from .graph import Graph, GroundTruth, load_edge_list, load_ground_truth

FOOTBALL_ENV = "CBCD_FOOTBALL"


def _data(name: str):
    return resources.files("cbcd") / "data" / name


def load_karate() -> Tuple[Graph, GroundTruth]:
    """Zachary's karate club (0-indexed) with the two factions after the split."""
    with _data("karate.edgelist").open() as f:
        g = load_edge_list(f)
    with _data("karate.groundtruth").open() as f:
        truth = load_ground_truth(f, g=g)
    return g, truth


def football_path(path: Optional[str] = None) -> Optional[Path]:
    """First existing candidate among the argument, $CBCD_FOOTBALL and package data."""
    for cand in (path, os.environ.get(FOOTBALL_ENV), str(_data("football.gml"))):
        if cand and Path(cand).is_file():
            return Path(cand)
    return None


def load_gml_with_truth(path: os.PathLike, attr: str = "value") -> Tuple[Graph, GroundTruth]:
    """Read a GML graph whose nodes carry the community label in ``attr``."""
    import networkx as nx

    text = Path(path).read_text()
    # some distributed copies start with a free-text line before the graph block
    start = text.find("graph")
    h = nx.parse_gml(text[start:], label="id")
    nodes = sorted(h.nodes())
    idx = {x: i for i, x in enumerate(nodes)}
    g = Graph(len(nodes), {(min(idx[u], idx[v]), max(idx[u], idx[v])) for u, v in h.edges() if u != v}, nodes)
    truth = GroundTruth({idx[x]: h.nodes[x][attr] for x in nodes})
    return g, truth


def load_football(path: Optional[str] = None) -> Tuple[Graph, GroundTruth]:
    p = football_path(path)
    if p is None:
        raise FileNotFoundError(
            f"football.gml not found; pass a path or set ${FOOTBALL_ENV}")
    return load_gml_with_truth(p)
