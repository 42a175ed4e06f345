"""Range-based clustering.

Every node first proposes a candidate cluster: itself as temporary head plus
every other node strictly within transmission range (Manhattan metric). The
partition is then built greedily — repeatedly commit the candidate that still
covers the most unclustered nodes (ties broken toward the lower head id),
remove its members from all remaining candidates, and drop candidates whose
head was just absorbed. Nodes left over become singletons.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .model import Cluster, ClusterSet, Node, NodeId, Position
from .parallel import chunk_map


def manhattan_distance(a: Position, b: Position) -> float:
    return abs(a.x - b.x) + abs(a.y - b.y)


@dataclass(frozen=True)
class CandidateCluster:
    """A node's proposal: itself as temporary head plus everything in range.

    ``covered`` lists the head first, then the in-range nodes ascending;
    ``count`` is the number of nodes covered besides the head.
    """

    temp_head: NodeId
    covered: tuple[NodeId, ...]

    @property
    def count(self) -> int:
        return len(self.covered) - 1


def _check_nodes(nodes: list[Node]) -> None:
    if not nodes:
        raise InputError("node list is empty")
    ids = sorted(n.node_id for n in nodes)
    if ids != list(range(len(nodes))):
        raise InputError("node ids must be the dense range 0..N-1 with no duplicates")


def pac_candidates(nodes: list[Node], tx_range: float, workers: int = 1) -> list[CandidateCluster]:
    """One candidate per node: the node plus all others strictly within range."""
    _check_nodes(nodes)
    by_id = {n.node_id: n for n in nodes}
    order = sorted(by_id)

    def build(chunk) -> list[CandidateCluster]:
        out = []
        for head in chunk:
            hp = by_id[head].pos
            in_range = [
                other
                for other in order
                if other != head and manhattan_distance(hp, by_id[other].pos) < tx_range
            ]
            out.append(CandidateCluster(head, (head, *in_range)))
        return out

    return chunk_map(build, order, workers)


def expac_cluster(nodes: list[Node], tx_range: float, workers: int = 1) -> ClusterSet:
    """Partition the nodes greedily by candidate coverage.

    Each round commits the candidate covering the most still-unclustered
    nodes (lowest head id on ties) as the next cluster; committed nodes are
    subtracted from every other candidate and candidates whose head got
    absorbed are discarded. Whatever remains uncovered ends up in singleton
    clusters. Cluster ids follow selection order.
    """
    candidates = pac_candidates(nodes, tx_range, workers)
    remaining: dict[NodeId, set[NodeId]] = {
        c.temp_head: set(c.covered) for c in candidates
    }

    clusters: list[Cluster] = []
    clustered: set[NodeId] = set()
    while remaining:
        best_head = None
        best_size = 0
        for head in sorted(remaining):
            size = len(remaining[head])
            if size > best_size:
                best_head, best_size = head, size
        if best_head is None or best_size <= 1:
            break  # no candidate covers anyone beyond itself; the rest are singletons
        members = remaining.pop(best_head)
        clusters.append(Cluster(len(clusters), best_head, tuple(sorted(members))))
        clustered |= members
        for head in list(remaining):
            if head in clustered:
                del remaining[head]
            else:
                remaining[head] -= members

    for node_id in sorted(n.node_id for n in nodes):
        if node_id not in clustered:
            clusters.append(Cluster(len(clusters), node_id, (node_id,)))
            clustered.add(node_id)

    return ClusterSet(tuple(clusters), len(nodes))
