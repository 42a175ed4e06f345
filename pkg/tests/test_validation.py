import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterbench import (
    Classification,
    Cluster,
    ClusterSet,
    Compactness,
    DegenerateGeometryError,
    InputError,
    InvariantViolation,
    Position,
    UndefinedIndexError,
    classify,
    cluster_diameter,
    dunn_index,
    inter_cluster_distance,
    validate_clusters,
)
from strategies import partitions, random_partition


def grid(points):
    return {i: Position(float(x), float(y)) for i, (x, y) in enumerate(points)}


def two_clusters(split, n):
    a = Cluster(0, min(split), tuple(sorted(split)))
    rest = sorted(set(range(n)) - set(split))
    b = Cluster(1, rest[0], tuple(rest))
    return ClusterSet((a, b), n)


# --- distances --------------------------------------------------------------


def test_inter_cluster_distance_examples():
    pos = grid([(0, 0), (3, 4)])
    cs = two_clusters([0], 2)
    assert inter_cluster_distance(cs.clusters[0], cs.clusters[1], pos) == 7

    pos = grid([(0, 0), (10, 0), (13, 0), (20, 0)])
    cs = two_clusters([0, 1], 4)
    a, b = cs.clusters
    assert inter_cluster_distance(a, b, pos) == 3
    assert inter_cluster_distance(b, a, pos) == 3  # symmetric


def test_inter_cluster_distance_rejects_overlap():
    pos = grid([(0, 0), (1, 1), (2, 2)])
    a = Cluster(0, 0, (0, 1))
    b = Cluster(1, 1, (1, 2))
    with pytest.raises(InvariantViolation):
        inter_cluster_distance(a, b, pos)


def test_cluster_diameter_examples():
    assert cluster_diameter(Cluster(0, 0, (0,)), grid([(9, 9)])) == 0
    pos = grid([(0, 0), (10, 0)])
    assert cluster_diameter(Cluster(0, 0, (0, 1)), pos) == 10
    pos = grid([(0, 0), (4, 0), (1, 1)])
    assert cluster_diameter(Cluster(0, 0, (0, 1, 2)), pos) == 4


# --- the index --------------------------------------------------------------


def test_index_known_values():
    pos = grid([(0, 0), (10, 0), (13, 0), (20, 0)])
    assert dunn_index(two_clusters([0, 1], 4), pos) == 0.3

    pos = grid([(0, 0), (4, 0), (10, 0), (14, 0)])
    assert dunn_index(two_clusters([0, 1], 4), pos) == 1.5


def test_index_all_singletons_is_infinite():
    pos = grid([(0, 0), (5, 0)])
    cs = two_clusters([0], 2)
    assert math.isinf(dunn_index(cs, pos))
    report = validate_clusters(cs, pos)
    assert report.classification is Classification.DEGENERATE
    assert report.recommend_recluster is False


def test_index_needs_two_clusters():
    pos = grid([(0, 0), (1, 0)])
    cs = ClusterSet((Cluster(0, 0, (0, 1)),), 2)
    with pytest.raises(UndefinedIndexError):
        dunn_index(cs, pos)


def test_index_coincident_singletons_error():
    pos = grid([(4, 4), (4, 4)])
    with pytest.raises(DegenerateGeometryError):
        dunn_index(two_clusters([0], 2), pos)


def test_index_worker_count_does_not_change_result():
    cs, pos = random_partition(random.Random(3), min_nodes=20, max_nodes=40)
    assert dunn_index(cs, pos, workers=1) == dunn_index(cs, pos, workers=4)


# --- classification ---------------------------------------------------------


def test_classify_known_bands():
    report = classify(0.52)
    assert (report.separation_pct, report.overlap_pct) == (52, 48)
    assert report.compactness is Compactness.HIGH
    assert report.classification is Classification.COMPACT_WELL_SEPARATED
    assert report.recommend_recluster is False
    assert report.footnote is None

    report = classify(0.48)
    assert (report.separation_pct, report.overlap_pct) == (48, 52)
    assert report.compactness is Compactness.LOW
    assert report.classification is Classification.COMPACT_LESS_SEPARATED
    assert report.recommend_recluster is True

    report = classify(0.01)
    assert (report.separation_pct, report.overlap_pct) == (1, 99)
    assert report.compactness is Compactness.VERY_LOW
    assert report.footnote is not None


def test_classify_edges():
    at_half = classify(0.5)
    assert at_half.compactness is Compactness.HIGH
    assert at_half.classification is Classification.COMPACT_LESS_SEPARATED
    assert at_half.recommend_recluster is False  # not strictly below threshold

    off_scale = classify(1.5)
    assert off_scale.classification is Classification.OFF_SCALE
    assert (off_scale.separation_pct, off_scale.overlap_pct) == (100, 0)

    degenerate = classify(math.inf)
    assert degenerate.classification is Classification.DEGENERATE

    with pytest.raises(InputError):
        classify(-0.1)
    with pytest.raises(InputError):
        classify(math.nan)


def test_classify_respects_configured_threshold():
    assert classify(0.5, recluster_threshold=0.6).recommend_recluster is True
    assert classify(0.7, recluster_threshold=0.6).recommend_recluster is False


def test_footnote_only_on_very_low():
    assert classify(0.09).footnote is not None
    assert classify(0.1).footnote is None
    assert classify(0.52).footnote is None


@given(a=st.floats(0, 3, allow_nan=False), b=st.floats(0, 3, allow_nan=False))
def test_classify_monotone_separation(a, b):
    lo, hi = sorted((a, b))
    assert classify(lo).separation_pct <= classify(hi).separation_pct


@given(x=st.floats(0, 5, allow_nan=False))
def test_percentages_sum_to_100(x):
    report = classify(x)
    assert report.separation_pct + report.overlap_pct == 100


# --- exact invariances ------------------------------------------------------


@settings(max_examples=80)
@given(data=partitions(), dx=st.integers(-100, 100), dy=st.integers(-100, 100))
def test_translation_invariance(data, dx, dy):
    clusters, pos = data
    moved = {i: Position(p.x + dx, p.y + dy) for i, p in pos.items()}
    assert _index_or_none(clusters, pos) == _index_or_none(clusters, moved)


@settings(max_examples=80)
@given(data=partitions(), k=st.sampled_from([0.5, 2.0, 4.0, 8.0]))
def test_scale_invariance(data, k):
    clusters, pos = data
    scaled = {i: Position(p.x * k, p.y * k) for i, p in pos.items()}
    assert _index_or_none(clusters, pos) == _index_or_none(clusters, scaled)


def _index_or_none(clusters, positions):
    try:
        return dunn_index(clusters, positions)
    except DegenerateGeometryError:
        return "degenerate"


# --- brute-force oracle -----------------------------------------------------


def oracle_index(clusters, positions):
    cs = clusters.clusters
    best_dist = None
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            for m in cs[i].members:
                for n in cs[j].members:
                    d = abs(positions[m].x - positions[n].x) + abs(
                        positions[m].y - positions[n].y
                    )
                    if best_dist is None or d < best_dist:
                        best_dist = d
    worst_dia = 0.0
    for c in cs:
        ms = c.members
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                d = abs(positions[ms[i]].x - positions[ms[j]].x) + abs(
                    positions[ms[i]].y - positions[ms[j]].y
                )
                if d > worst_dia:
                    worst_dia = d
    if worst_dia == 0.0:
        return math.inf if best_dist > 0 else "degenerate"
    return best_dist / worst_dia


@settings(max_examples=120, deadline=None)
@given(data=partitions(max_nodes=20))
def test_index_matches_bruteforce_oracle(data):
    clusters, pos = data
    assert _index_or_none(clusters, pos) == oracle_index(clusters, pos)
