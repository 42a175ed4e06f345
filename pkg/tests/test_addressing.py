import random
from ipaddress import IPv6Address

import pytest
from hypothesis import given, settings

from clusterbench import (
    CapacityError,
    Cluster,
    ClusterSet,
    InputError,
    MessageKind,
    Node,
    Position,
    assign_addresses,
)
from clusterbench.addressing import apply_addresses, node_address, parse_prefix
from strategies import partitions, random_partition


def test_layout_example():
    # head 7 with member 5 in cluster 0: interface id is node_id + 1
    clusters = ClusterSet(
        (
            Cluster(0, 7, (5, 7)),
            Cluster(1, 0, (0, 1, 2, 3, 4, 6)),
        ),
        8,
    )
    addresses, _ = assign_addresses(clusters, "fd00:0:0")
    assert addresses[5] == IPv6Address("fd00::6")
    assert addresses[7] == IPv6Address("fd00::8")
    assert addresses[1] == IPv6Address("fd00:0:0:1::2")


def test_prefix_spellings_agree():
    assert parse_prefix("fd00::/48") == parse_prefix("fd00::") == parse_prefix("fd00:0:0")
    assert parse_prefix(0xFD00_0000_0000) == parse_prefix("fd00::")


def test_prefix_rejects_bad_values():
    with pytest.raises(InputError):
        parse_prefix("fd00::/64")  # wrong length
    with pytest.raises(InputError):
        parse_prefix("fd00::1")  # bits below the top 48
    with pytest.raises(InputError):
        parse_prefix("not-an-address")
    with pytest.raises(InputError):
        parse_prefix(2**48)
    with pytest.raises(InputError):
        parse_prefix(True)


def test_head_only_cluster_has_no_traffic():
    clusters = ClusterSet((Cluster(0, 0, (0,)),), 1)
    addresses, trace = assign_addresses(clusters)
    assert len(addresses) == 1
    assert trace == []


def test_trace_choreography():
    clusters = ClusterSet((Cluster(0, 2, (0, 1, 2)),), 3)
    addresses, trace = assign_addresses(clusters)
    assert len(trace) == 6  # three messages per non-head member
    assert [m.seq for m in trace] == list(range(6))
    # member 0 first, then member 1, each Hello/Reply/Assign
    hello, reply, assign = trace[:3]
    assert (hello.kind, hello.sender, hello.receiver) == (MessageKind.HELLO, 2, 0)
    assert (reply.kind, reply.sender, reply.receiver) == (MessageKind.REPLY, 0, 2)
    assert (assign.kind, assign.sender, assign.receiver) == (MessageKind.ASSIGN, 2, 0)
    assert assign.payload == addresses[0]
    assert trace[3].receiver == 1
    assert hello.payload is None and reply.payload is None


def test_cluster_id_overflow():
    clusters = ClusterSet((Cluster(2**16, 0, (0,)),), 1)
    with pytest.raises(CapacityError):
        assign_addresses(clusters)


def test_node_address_overflow():
    with pytest.raises(CapacityError):
        node_address(0, 0, 2**64 - 1)  # interface id would need 2^64


def test_address_encodes_cluster_membership():
    nodes4 = ClusterSet((Cluster(0, 0, (0, 1)), Cluster(1, 2, (2, 3))), 4)
    regrouped = ClusterSet((Cluster(0, 0, (0,)), Cluster(1, 1, (1, 2, 3))), 4)
    before, _ = assign_addresses(nodes4)
    after, _ = assign_addresses(regrouped)
    assert before[1] != after[1]  # node 1 moved clusters, so its address moved
    assert before[0] == after[0]  # node 0 stayed in cluster 0


def test_apply_addresses():
    nodes = [Node(0, Position(0, 0), 5.0), Node(1, Position(1, 1), 6.0)]
    clusters = ClusterSet((Cluster(0, 0, (0, 1)),), 2)
    addresses, _ = assign_addresses(clusters)
    out = apply_addresses(nodes, addresses)
    assert [n.address for n in out] == [addresses[0], addresses[1]]
    assert [n.energy for n in out] == [5.0, 6.0]


@settings(max_examples=100)
@given(data=partitions(max_nodes=30))
def test_addresses_unique_and_total(data):
    clusters, _pos = data
    addresses, trace = assign_addresses(clusters)
    assert set(addresses) == set(range(clusters.node_universe))
    assert len(set(addresses.values())) == clusters.node_universe
    non_heads = clusters.node_universe - len(clusters.clusters)
    assert len(trace) == 3 * non_heads


def test_trace_pattern_per_member():
    rnd = random.Random(8)
    for _ in range(50):
        clusters, _pos = random_partition(rnd, min_nodes=2, max_nodes=30)
        _addresses, trace = assign_addresses(clusters)
        heads = {c.head for c in clusters.clusters}
        per_member: dict[int, list] = {}
        for msg in trace:
            member = msg.receiver if msg.kind != MessageKind.REPLY else msg.sender
            per_member.setdefault(member, []).append(msg.kind)
        for member, kinds in per_member.items():
            assert member not in heads
            assert kinds == [MessageKind.HELLO, MessageKind.REPLY, MessageKind.ASSIGN]
