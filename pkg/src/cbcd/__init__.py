"""Correlation-based community detection."""

from .graph import UNASSIGNED, Graph, GroundTruth, Partition, load_edge_list, load_ground_truth, write_partition
from .detect import DetectConfig, detect_full
from .evaluation import nmi
from .triangles import count_triangles

__all__ = [
    "UNASSIGNED", "Graph", "GroundTruth", "Partition", "load_edge_list", "load_ground_truth",
    "write_partition", "DetectConfig", "detect_full", "nmi", "count_triangles",
]
