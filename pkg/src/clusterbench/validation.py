"""Partition quality via Dunn's index.

index = (minimum pairwise inter-cluster distance) / (maximum cluster
diameter), both under the Manhattan metric. Higher is better: above 1.0 the
tightest pair of clusters is further apart than the widest cluster is wide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .clustering import manhattan_distance
from .errors import (
    DegenerateGeometryError,
    InputError,
    InvariantViolation,
    UndefinedIndexError,
)
from .model import Cluster, ClusterSet, NodeId, Position
from .parallel import chunk_map


class Compactness(str, Enum):
    HIGH = "High"
    LOW = "Low"
    VERY_LOW = "VeryLow"


class Classification(str, Enum):
    COMPACT_LESS_SEPARATED = "CompactLessSeparated"
    COMPACT_WELL_SEPARATED = "CompactWellSeparated"
    OFF_SCALE = "OffScale"
    DEGENERATE = "Degenerate"


#: Attached to reports whose index rounds to a very small percentage: the
#: separation/overlap split is the strict index*100 mapping, so an index of
#: 0.01 reads as 1% separation / 99% overlap.
STRICT_PCT_FOOTNOTE = (
    "percentages are the strict index*100 mapping; an index of 0.01 maps to "
    "1% separation / 99% overlap"
)


@dataclass(frozen=True)
class ValidationReport:
    dunn_index: float
    separation_pct: int
    overlap_pct: int
    compactness: Compactness
    classification: Classification
    recommend_recluster: bool
    footnote: str | None = None


def inter_cluster_distance(
    a: Cluster, b: Cluster, positions: dict[NodeId, Position]
) -> float:
    """Minimum Manhattan distance over all cross pairs of members."""
    if set(a.members) & set(b.members):
        raise InvariantViolation(
            f"clusters {a.cluster_id} and {b.cluster_id} share members"
        )
    return min(
        manhattan_distance(positions[m], positions[n])
        for m in a.members
        for n in b.members
    )


def cluster_diameter(cluster: Cluster, positions: dict[NodeId, Position]) -> float:
    """Maximum Manhattan distance between two members; 0 for a singleton."""
    members = cluster.members
    if len(members) < 2:
        return 0.0
    return max(
        manhattan_distance(positions[members[i]], positions[members[j]])
        for i in range(len(members))
        for j in range(i + 1, len(members))
    )


def dunn_index(clusters: ClusterSet, positions: dict[NodeId, Position], workers: int = 1) -> float:
    """min inter-cluster distance / max cluster diameter.

    Needs at least two clusters. All-singleton partitions have diameter 0,
    which yields +inf when the clusters are apart and is an error when two
    clusters touch (distance 0 too).
    """
    cs = clusters.clusters
    if len(cs) < 2:
        raise UndefinedIndexError(
            f"index needs at least two clusters, got {len(cs)}"
        )

    pairs = [(cs[i], cs[j]) for i in range(len(cs)) for j in range(i + 1, len(cs))]

    def min_dists(chunk) -> list[float]:
        return [inter_cluster_distance(a, b, positions) for a, b in chunk]

    def diameters(chunk) -> list[float]:
        return [cluster_diameter(c, positions) for c in chunk]

    min_dist = min(chunk_map(min_dists, pairs, workers))
    max_dia = max(chunk_map(diameters, cs, workers))
    if max_dia == 0.0:
        if min_dist == 0.0:
            raise DegenerateGeometryError(
                "all clusters are single points and two of them coincide"
            )
        return math.inf
    return min_dist / max_dia


def classify(index: float, recluster_threshold: float = 0.5) -> ValidationReport:
    """Band an index value into a quality report.

    (0, 0.5] reads as compact but poorly separated, (0.5, 1.0] as compact and
    well separated, above 1.0 the percentage scale no longer applies, and an
    infinite index (all-singleton geometry) is degenerate.
    """
    if math.isnan(index) or index < 0:
        raise InputError(f"index must be >= 0, got {index!r}")
    if math.isinf(index):
        return ValidationReport(
            dunn_index=index,
            separation_pct=100,
            overlap_pct=0,
            compactness=Compactness.HIGH,
            classification=Classification.DEGENERATE,
            recommend_recluster=False,
        )
    pct = round(index * 100)
    separation = max(0, min(100, pct))
    overlap = 100 - separation
    if index >= 0.5:
        compactness = Compactness.HIGH
    elif index >= 0.1:
        compactness = Compactness.LOW
    else:
        compactness = Compactness.VERY_LOW
    if index > 1.0:
        classification = Classification.OFF_SCALE
    elif index > 0.5:
        classification = Classification.COMPACT_WELL_SEPARATED
    else:
        classification = Classification.COMPACT_LESS_SEPARATED
    footnote = STRICT_PCT_FOOTNOTE if compactness is Compactness.VERY_LOW else None
    return ValidationReport(
        dunn_index=index,
        separation_pct=separation,
        overlap_pct=overlap,
        compactness=compactness,
        classification=classification,
        recommend_recluster=index < recluster_threshold,
        footnote=footnote,
    )


def validate_clusters(
    clusters: ClusterSet,
    positions: dict[NodeId, Position],
    recluster_threshold: float = 0.5,
    workers: int = 1,
) -> ValidationReport:
    """Compute the index and classify it in one step."""
    return classify(dunn_index(clusters, positions, workers), recluster_threshold)
