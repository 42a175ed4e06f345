"""Cluster-scoped IPv6 assignment.

Every cluster is a /64: the configured 48-bit prefix, then the 16-bit
cluster id, then ``node_id + 1`` as the interface identifier (so the id-0
node never produces the all-zero address). The head self-assigns without any
traffic; members are then served in ascending id order via a three-message
handshake — Hello (head to member), Reply (member to head), Assign (head to
member, carrying the address) — with one global sequence counter across the
whole run.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from ipaddress import AddressValueError, IPv6Address, IPv6Network

from .errors import CapacityError, InputError
from .model import ClusterSet, Node, NodeId

DEFAULT_PREFIX = "fd00::/48"


class MessageKind(str, Enum):
    HELLO = "Hello"
    REPLY = "Reply"
    ASSIGN = "Assign"


@dataclass(frozen=True)
class Message:
    seq: int
    sender: NodeId
    receiver: NodeId
    kind: MessageKind
    payload: IPv6Address | None = None


def parse_prefix(prefix: str | int) -> int:
    """Normalize a routing prefix to its 48-bit integer value.

    Accepts an int (already the 48-bit value), or text like ``fd00::/48``,
    ``fd00::`` — any IPv6 address whose low 80 bits are zero.
    """
    if isinstance(prefix, int) and not isinstance(prefix, bool):
        if not 0 <= prefix < 2**48:
            raise InputError(f"prefix value must fit in 48 bits, got {prefix!r}")
        return prefix
    if not isinstance(prefix, str):
        raise InputError(f"prefix must be text or int, got {type(prefix).__name__}")
    text = prefix.strip()
    if "/" in text:
        try:
            net = IPv6Network(text, strict=False)
        except (AddressValueError, ValueError) as err:
            raise InputError(f"bad prefix {prefix!r}: {err}") from err
        if net.prefixlen != 48:
            raise InputError(f"prefix length must be 48, got /{net.prefixlen}")
        base = int(net.network_address)
    else:
        try:
            base = int(IPv6Address(text))
        except (AddressValueError, ValueError) as err:
            # a bare group form like "fd00:0:0" names just the leading bits
            if "::" not in text:
                try:
                    base = int(IPv6Address(text + "::"))
                except (AddressValueError, ValueError):
                    raise InputError(f"bad prefix {prefix!r}: {err}") from err
            else:
                raise InputError(f"bad prefix {prefix!r}: {err}") from err
    if base & ((1 << 80) - 1):
        raise InputError(f"prefix {prefix!r} has bits set below the top 48")
    return base >> 80


def node_address(prefix48: int, cluster_id: int, node_id: NodeId) -> IPv6Address:
    """prefix(48) | cluster_id(16) | node_id+1 (64)."""
    if not 0 <= cluster_id < 2**16:
        raise CapacityError(
            f"cluster id {cluster_id} does not fit the 16-bit subnet field"
        )
    iid = node_id + 1
    if not 0 < iid < 2**64:
        raise CapacityError(f"node id {node_id} does not fit the 64-bit host field")
    return IPv6Address((prefix48 << 80) | (cluster_id << 64) | iid)


def assign_addresses(
    clusters: ClusterSet, prefix: str | int = DEFAULT_PREFIX
) -> tuple[dict[NodeId, IPv6Address], list[Message]]:
    """Run the assignment handshake over every cluster.

    Returns the address map and the full message trace. Clusters are served
    in cluster-id order; within each, the head self-assigns silently, then
    each member in ascending id order costs three messages (Hello, Reply,
    Assign).
    """
    prefix48 = parse_prefix(prefix)
    addresses: dict[NodeId, IPv6Address] = {}
    messages: list[Message] = []
    seq = 0
    for cluster in sorted(clusters.clusters, key=lambda c: c.cluster_id):
        head_addr = node_address(prefix48, cluster.cluster_id, cluster.head)
        addresses[cluster.head] = head_addr
        for member in cluster.members:
            if member == cluster.head:
                continue
            addr = node_address(prefix48, cluster.cluster_id, member)
            messages.append(Message(seq, cluster.head, member, MessageKind.HELLO))
            seq += 1
            messages.append(Message(seq, member, cluster.head, MessageKind.REPLY))
            seq += 1
            messages.append(Message(seq, cluster.head, member, MessageKind.ASSIGN, addr))
            seq += 1
            addresses[member] = addr
    return addresses, messages


def apply_addresses(nodes: list[Node], addresses: dict[NodeId, IPv6Address]) -> list[Node]:
    """Return a copy of the node list with addresses filled in."""
    out = []
    for node in nodes:
        addr = addresses.get(node.node_id, node.address)
        out.append(Node(node.node_id, node.pos, node.energy, addr))
    return out
