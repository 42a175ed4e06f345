"""Tabular I/O: CSV/JSON tables, scenario readers, and run manifests."""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import time
from datetime import datetime, timezone
from enum import Enum
from ipaddress import IPv6Address
from pathlib import Path

from .errors import ClusterBenchError, InputError
from .model import Cluster, ClusterSet, EnergyLevel, Node, NodeId, Position

NODES_COLUMNS = ["node_id", "x", "y", "energy"]
CLUSTERS_COLUMNS = ["cluster_id", "node_id", "is_head", "energy", "x", "y", "exempt"]

FORMATS = ("csv", "json")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, IPv6Address):
        return str(value)
    return str(value)


def _json_cell(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, IPv6Address):
        return str(value)
    return value


def write_table(path: str | Path, columns: list[str], rows: list[dict], fmt: str = "csv") -> None:
    """Write rows (dicts keyed by column) as CSV or JSON with a trailing newline.

    Output is byte-deterministic: fixed column order, LF line endings, and a
    stable rendering for floats, enums, booleans, and addresses.
    """
    if fmt not in FORMATS:
        raise InputError(f"format must be one of {FORMATS}, got {fmt!r}")
    path = Path(path)
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_csv_cell(row.get(col)) for col in columns])
    else:
        payload = [{col: _json_cell(row.get(col)) for col in columns} for row in rows]
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def nodes_rows(nodes: list[Node]) -> list[dict]:
    return [
        {"node_id": n.node_id, "x": n.pos.x, "y": n.pos.y, "energy": n.energy}
        for n in nodes
    ]


def clusters_rows(clusters: ClusterSet, nodes: list[Node]) -> list[dict]:
    by_id = {n.node_id: n for n in nodes}
    rows = []
    for cluster in sorted(clusters.clusters, key=lambda c: c.cluster_id):
        for member in cluster.members:
            node = by_id[member]
            rows.append(
                {
                    "cluster_id": cluster.cluster_id,
                    "node_id": member,
                    "is_head": member == cluster.head,
                    "energy": node.energy,
                    "x": node.pos.x,
                    "y": node.pos.y,
                    "exempt": member in cluster.threshold_exempt,
                }
            )
    return rows


def _parse_bool(text: str, where: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1"):
        return True
    if low in ("false", "0", ""):
        return False
    raise InputError(f"{where}: expected true/false, got {text!r}")


def _read_csv(path: str | Path, required: list[str]) -> list[dict]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            missing = [col for col in required if col not in header]
            if missing:
                raise InputError(f"{path}: missing columns: {', '.join(missing)}")
            return list(reader)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err}") from err


def read_nodes_csv(path: str | Path) -> list[Node]:
    """Load a node table (node_id, x, y, energy)."""
    rows = _read_csv(path, NODES_COLUMNS)
    if not rows:
        raise InputError(f"{path}: no node rows")
    nodes = []
    for i, row in enumerate(rows):
        where = f"{path} row {i + 1}"
        try:
            nodes.append(
                Node(
                    int(row["node_id"]),
                    Position(float(row["x"]), float(row["y"])),
                    float(row["energy"]),
                )
            )
        except (TypeError, ValueError) as err:
            raise InputError(f"{where}: {err}") from err
    ids = sorted(n.node_id for n in nodes)
    if ids != list(range(len(nodes))):
        raise InputError(f"{path}: node ids must be the dense range 0..N-1")
    return sorted(nodes, key=lambda n: n.node_id)


def read_clusters_csv(
    path: str | Path,
) -> tuple[ClusterSet, dict[NodeId, Position], dict[NodeId, EnergyLevel]]:
    """Load a cluster table back into a partition plus positions and energies.

    Requires the positional columns (x, y) so the partition can be
    re-validated; the exempt column is optional and defaults to false.
    """
    rows = _read_csv(path, ["cluster_id", "node_id", "is_head", "energy", "x", "y"])
    if not rows:
        raise InputError(f"{path}: no cluster rows")
    grouped: dict[int, dict] = {}
    positions: dict[NodeId, Position] = {}
    energies: dict[NodeId, EnergyLevel] = {}
    for i, row in enumerate(rows):
        where = f"{path} row {i + 1}"
        try:
            cid = int(row["cluster_id"])
            nid = int(row["node_id"])
            is_head = _parse_bool(row["is_head"], where)
            energy = float(row["energy"])
            pos = Position(float(row["x"]), float(row["y"]))
            exempt = _parse_bool(row.get("exempt") or "", where)
        except (TypeError, ValueError) as err:
            raise InputError(f"{where}: {err}") from err
        group = grouped.setdefault(cid, {"members": [], "heads": [], "exempt": set()})
        group["members"].append(nid)
        if is_head:
            group["heads"].append(nid)
        if exempt:
            group["exempt"].add(nid)
        positions[nid] = pos
        energies[nid] = energy
    clusters = []
    for cid in sorted(grouped):
        group = grouped[cid]
        if len(group["heads"]) != 1:
            raise InputError(
                f"{path}: cluster {cid} must have exactly one head row, got {len(group['heads'])}"
            )
        try:
            clusters.append(
                Cluster(cid, group["heads"][0], tuple(group["members"]), frozenset(group["exempt"]))
            )
        except ClusterBenchError as err:
            raise InputError(f"{path}: cluster {cid}: {err}") from err
    try:
        cluster_set = ClusterSet(tuple(clusters), len(positions))
    except ClusterBenchError as err:
        raise InputError(f"{path}: {err}") from err
    return cluster_set, positions, energies


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def manifest_timestamp() -> str:
    """UTC ISO-8601 stamp; honors SOURCE_DATE_EPOCH for reproducible output."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = int(epoch) if epoch else int(time.time())
    return datetime.fromtimestamp(moment, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def write_manifest(path: str | Path, data: dict) -> None:
    """Write a run manifest as stable, sorted JSON (timestamp added here)."""
    payload = dict(data)
    payload.setdefault("timestamp", manifest_timestamp())
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
