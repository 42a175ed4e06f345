"""Discrete-tick simulation harness.

Tick 0 sets the network up: place nodes, cluster by range, elect heads by
energy, hand out addresses, and validate the partition. Every later tick
drains energy (heads pay the higher rate), re-elects heads from the fresh
energies, validates on schedule, and — when the validator recommends it —
rebuilds the partition from scratch and re-addresses it. Tick 0 never
re-clusters: the initial partition stands until the first scheduled
validation after drain. Positions are static; energies only ever decrease.
"""

from __future__ import annotations

from dataclasses import dataclass
from ipaddress import IPv6Address

from .addressing import DEFAULT_PREFIX, Message, assign_addresses
from .clustering import expac_cluster
from .errors import ClusterBenchError, UndefinedIndexError
from .head_election import EnergySnapshot, HeadChange, psopac_rebuild, rotate_heads
from .model import (
    ClusterSet,
    Node,
    NodeId,
    Position,
    ScenarioConfig,
    generate_scenario,
)
from .validation import ValidationReport, validate_clusters

Event = object  # HeadChange | ReclusterEvent | AddressEvent


@dataclass(frozen=True)
class ReclusterEvent:
    at_tick: int
    trigger_index: float
    old_cluster_count: int
    new_cluster_count: int


@dataclass(frozen=True)
class AddressEvent:
    at_tick: int
    assigned: dict[NodeId, IPv6Address]
    messages: tuple[Message, ...]


@dataclass(frozen=True)
class SimSnapshot:
    """State at the end of one tick."""

    at_tick: int
    clusters: ClusterSet
    energies: EnergySnapshot
    report: ValidationReport | None
    events: tuple[Event, ...]
    addresses: dict[NodeId, IPv6Address]


def drain(
    energies: EnergySnapshot, clusters: ClusterSet, config: ScenarioConfig
) -> EnergySnapshot:
    """One tick of energy loss: heads pay drain_head, everyone else
    drain_member, clamped at zero. The snapshot tick advances by one."""
    heads = {c.head for c in clusters.clusters}
    drained = {
        nid: max(0.0, e - (config.drain_head if nid in heads else config.drain_member))
        for nid, e in energies.energies.items()
    }
    return EnergySnapshot(energies.at_tick + 1, drained)


def _validate_or_none(
    clusters: ClusterSet,
    positions: dict[NodeId, Position],
    config: ScenarioConfig,
    workers: int,
) -> ValidationReport | None:
    # A single-cluster partition has no defined index; the run carries on
    # without a report rather than dying mid-simulation.
    try:
        return validate_clusters(
            clusters, positions, config.dunn_recluster_threshold, workers
        )
    except UndefinedIndexError:
        return None


def run_simulation(
    config: ScenarioConfig,
    nodes: list[Node] | None = None,
    workers: int = 1,
    prefix: str | int = DEFAULT_PREFIX,
) -> list[SimSnapshot]:
    """Run the full scenario, returning one snapshot per tick (tick 0 included).

    ``nodes`` overrides the seeded placement for hand-built topologies; ids
    must still be the dense range 0..N-1. Any domain error is re-raised with
    the failing tick prefixed to its message.
    """
    config.validate()
    if nodes is None:
        nodes = generate_scenario(config)
    positions = {n.node_id: n.pos for n in nodes}
    steps = int(config.execution_time // config.tick)

    snapshots: list[SimSnapshot] = []
    try:
        energies = EnergySnapshot(0, {n.node_id: n.energy for n in nodes})
        clusters = expac_cluster(nodes, config.tx_range, workers)
        clusters = psopac_rebuild(
            clusters, energies, config.energy_threshold, config.comparator
        )
        addresses, messages = assign_addresses(clusters, prefix)
        events: list[Event] = [AddressEvent(0, dict(addresses), tuple(messages))]
        report = _validate_or_none(clusters, positions, config, workers)
        snapshots.append(
            SimSnapshot(0, clusters, energies, report, tuple(events), dict(addresses))
        )
    except ClusterBenchError as err:
        raise type(err)(f"tick 0: {err}") from err

    for t in range(1, steps + 1):
        try:
            energies = drain(energies, clusters, config)
            clusters, changes = rotate_heads(
                clusters, energies, config.energy_threshold, config.comparator
            )
            events = list(changes)
            report = None
            if t % config.validation_interval == 0:
                report = _validate_or_none(clusters, positions, config, workers)
                if report is not None and report.recommend_recluster:
                    old_count = len(clusters.clusters)
                    clusters = expac_cluster(nodes, config.tx_range, workers)
                    clusters = psopac_rebuild(
                        clusters, energies, config.energy_threshold, config.comparator
                    )
                    addresses, messages = assign_addresses(clusters, prefix)
                    events.append(
                        ReclusterEvent(t, report.dunn_index, old_count, len(clusters.clusters))
                    )
                    events.append(AddressEvent(t, dict(addresses), tuple(messages)))
            snapshots.append(
                SimSnapshot(t, clusters, energies, report, tuple(events), dict(addresses))
            )
        except ClusterBenchError as err:
            raise type(err)(f"tick {t}: {err}") from err

    return snapshots
