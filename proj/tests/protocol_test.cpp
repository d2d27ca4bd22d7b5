#include <gtest/gtest.h>

#include <set>

#include "mdsa/error.hpp"
#include "mdsa/protocol.hpp"
#include "mdsa/rng.hpp"
#include "mdsa/topology.hpp"
#include "oracles.hpp"

namespace mdsa {
namespace {

// Node 0 in the middle with five close neighbors; nodes 6..14 spread along
// the top edge, out of everybody's range except their own row neighbors.
Topology star_of_five() {
  std::vector<Position> pos{{0.5, 0.5},  {0.55, 0.5}, {0.45, 0.5}, {0.5, 0.55},
                            {0.5, 0.45}, {0.53, 0.53}};
  for (int i = 0; i < 9; ++i) pos.push_back({0.02 + 0.11 * i, 0.98});
  return Topology(pos, 0.1);
}

// 0 - 1 - 2 on a line.
Topology line3() { return Topology({{0.1, 0.5}, {0.2, 0.5}, {0.3, 0.5}}, 0.11); }

NodeState ready_node(const Topology& t, NodeId id, std::size_t capacity) {
  NodeState node(id, capacity, Bytes{static_cast<std::uint8_t>(id), 0xAB}, 1000 + id);
  discover_neighbors(node, t);
  prepare_packet(node);
  return node;
}

Message data_message(MessageKind kind, NodeId from, NodeId to, NodeId src, std::uint32_t hops) {
  return Message{kind, from, to, Packet{src, Bytes{static_cast<std::uint8_t>(src), 0xAB}, hops, Flag::Old}};
}

TEST(HopCount, FloorOfTotalOverNeighbors) {
  EXPECT_EQ(compute_hop_count(15, 5), 3u);
  EXPECT_EQ(compute_hop_count(15, 4), 3u);
  EXPECT_EQ(compute_hop_count(15, 16), 0u);
  EXPECT_EQ(compute_hop_count(15, 0), 0u);
  EXPECT_EQ(compute_hop_count(1, 1), 1u);
  EXPECT_THROW(compute_hop_count(0, 3), ParameterError);
}

TEST(HopCount, ObservedDegreesAt600) {
  const Topology t = generate_topology(600, preset_radius(600), 3);
  for (NodeId v = 0; v < t.size(); ++v) {
    EXPECT_EQ(compute_hop_count(600, t.degree(v)), oracle::hop_count(600, t.degree(v)));
  }
}

TEST(DiscoverNeighbors, IsolatedNode) {
  const Topology t({{0.1, 0.1}, {0.9, 0.9}}, 0.2);
  NodeState node(0, 3, Bytes{1}, 1);
  const InitCounts c = discover_neighbors(node, t);
  EXPECT_TRUE(node.neighbor_ids.empty());
  EXPECT_EQ(c.replies, 0u);
  EXPECT_EQ(node.hop_budget, 0u);
}

TEST(DiscoverNeighbors, TwoNodeClique) {
  const Topology t = generate_topology(2, std::sqrt(2.0), 5);
  for (NodeId v : {0u, 1u}) {
    NodeState node(v, 3, Bytes{1}, 1);
    const InitCounts c = discover_neighbors(node, t);
    EXPECT_EQ(node.neighbor_ids, std::vector<NodeId>{1 - v});
    EXPECT_EQ(c.query_deliveries, 1u);
    EXPECT_EQ(c.replies, 1u);
    EXPECT_EQ(node.hop_budget, 2u);
  }
}

TEST(DiscoverNeighbors, RepliesSumToDegreeSum) {
  const Topology t = generate_topology(15, 0.35, 7);
  std::uint64_t replies = 0;
  for (NodeId v = 0; v < 15; ++v) {
    NodeState node(v, 2, Bytes{1}, v);
    replies += discover_neighbors(node, t).replies;
    EXPECT_EQ(node.hop_budget, compute_hop_count(15, node.neighbor_ids.size()));
  }
  std::size_t oracle_sum = 0;
  for (const auto& adj : oracle::brute_force_adjacency(t)) oracle_sum += adj.size();
  EXPECT_EQ(replies, oracle_sum);
}

TEST(PreparePacket, OwnPacketInSlotZero) {
  const Topology t = star_of_five();
  ASSERT_EQ(t.degree(0), 5u);
  NodeState node(0, 4, Bytes{7, 7}, 1);
  discover_neighbors(node, t);
  const Packet p = prepare_packet(node);
  EXPECT_EQ(p.source_id, 0u);
  EXPECT_EQ(p.payload, (Bytes{7, 7}));
  EXPECT_EQ(p.hop_count, 3u);
  EXPECT_EQ(p.flag, Flag::Old);
  ASSERT_EQ(node.buffer.size(), 1u);
  EXPECT_EQ(node.buffer.slots()[0], p);
  EXPECT_EQ(to_string(p), "src=0 hops=3 flag=0 len=2");

  EXPECT_THROW(prepare_packet(node), SimulationError);
}

TEST(PreparePacket, IsolatedNodeKeepsDataLocally) {
  const Topology t({{0.1, 0.1}, {0.9, 0.9}}, 0.2);
  NodeState node = ready_node(t, 1, 2);
  EXPECT_EQ(node.buffer.slots()[0].hop_count, 0u);
  EXPECT_TRUE(flood_packet(node).empty());
}

TEST(FloodPacket, OneCopyPerNeighbor) {
  const Topology t = star_of_five();
  NodeState node = ready_node(t, 0, 4);
  const auto msgs = flood_packet(node);
  ASSERT_EQ(msgs.size(), 5u);
  std::set<NodeId> receivers;
  for (const Message& m : msgs) {
    EXPECT_EQ(m.kind, MessageKind::Flood);
    EXPECT_EQ(m.sender, 0u);
    EXPECT_EQ(*m.packet, node.buffer.slots()[0]);
    receivers.insert(m.receiver);
  }
  EXPECT_EQ(receivers, (std::set<NodeId>{1, 2, 3, 4, 5}));
  EXPECT_EQ(node.counters.data_sent, 5u);
}

TEST(FloodPacket, NetworkWideCountIsDegreeSum) {
  const Topology t = generate_topology(15, 0.35, 7);
  std::size_t total = 0;
  for (NodeId v = 0; v < 15; ++v) {
    NodeState node = ready_node(t, v, 3);
    total += flood_packet(node).size();
  }
  EXPECT_EQ(total, t.degree_sum());
}

TEST(OnReceive, LastHopIsStoredNotForwarded) {
  const Topology t = line3();
  NodeState node = ready_node(t, 1, 3);
  const auto r = on_receive(node, data_message(MessageKind::Unicast, 0, 1, 0, 0), ForwardPolicy::Drop);
  EXPECT_EQ(r.store, StoreResult::Stored);
  EXPECT_FALSE(r.forward);
  EXPECT_TRUE(node.buffer.contains(0));
}

TEST(OnReceive, DuplicateIsForwardedWhileBufferHasRoom) {
  // Reference step-through on the line: node 1 already holds source 0 and
  // has room. The packet is not stored again; the only neighbor other than
  // the sender is node 2, so exactly one unicast 1 -> 2 with one hop left.
  const Topology t = line3();
  NodeState node = ready_node(t, 1, 3);
  ASSERT_EQ(node.buffer.try_store(Packet{0, Bytes{0, 0xAB}, 2, Flag::Old}), StoreResult::Stored);
  const auto r = on_receive(node, data_message(MessageKind::Flood, 0, 1, 0, 2), ForwardPolicy::Drop);
  EXPECT_EQ(r.store, StoreResult::Duplicate);
  ASSERT_TRUE(r.forward);
  EXPECT_EQ(r.forward->kind, MessageKind::Unicast);
  EXPECT_EQ(r.forward->sender, 1u);
  EXPECT_EQ(r.forward->receiver, 2u);
  EXPECT_EQ(r.forward->packet->hop_count, 1u);
  EXPECT_EQ(r.forward->packet->source_id, 0u);
  EXPECT_EQ(node.buffer.size(), 2u);
}

TEST(OnReceive, FullBufferPolicies) {
  const Topology t = line3();
  for (ForwardPolicy policy : {ForwardPolicy::Drop, ForwardPolicy::Forward}) {
    NodeState node = ready_node(t, 1, 1);
    ASSERT_TRUE(node.buffer.full());
    const auto r = on_receive(node, data_message(MessageKind::Flood, 2, 1, 2, 3), policy);
    EXPECT_EQ(r.store, StoreResult::Full);
    EXPECT_FALSE(node.buffer.contains(2));
    if (policy == ForwardPolicy::Drop) {
      EXPECT_FALSE(r.forward);
    } else {
      ASSERT_TRUE(r.forward);
      EXPECT_EQ(r.forward->receiver, 0u);
      EXPECT_EQ(r.forward->packet->hop_count, 2u);
    }
  }
}

TEST(OnReceive, OnlyNeighborIsTheSender) {
  const Topology t = line3();
  NodeState node = ready_node(t, 0, 3);
  const auto r = on_receive(node, data_message(MessageKind::Flood, 1, 0, 1, 1), ForwardPolicy::Drop);
  ASSERT_TRUE(r.forward);
  EXPECT_EQ(r.forward->receiver, 1u);
}

TEST(OnReceive, TargetExcludesSenderAndIsUniform) {
  const Topology t = star_of_five();
  NodeState node = ready_node(t, 0, 50);
  std::map<NodeId, int> hits;
  for (int i = 0; i < 4000; ++i) {
    const auto r = on_receive(node, data_message(MessageKind::Unicast, 3, 0, 3, 5), ForwardPolicy::Drop);
    ASSERT_TRUE(r.forward);
    ++hits[r.forward->receiver];
  }
  EXPECT_EQ(hits.count(3), 0u);
  EXPECT_EQ(hits.size(), 4u);
  for (const auto& [id, count] : hits) EXPECT_NEAR(count, 1000, 150) << id;
}

TEST(OnReceive, Errors) {
  const Topology t = line3();
  NodeState node = ready_node(t, 1, 3);
  EXPECT_THROW(on_receive(node, Message{MessageKind::InitQuery, 0, 1, std::nullopt}, ForwardPolicy::Drop),
               ParameterError);
  EXPECT_THROW(on_receive(node, Message{MessageKind::Flood, 0, 1, std::nullopt}, ForwardPolicy::Drop),
               ParameterError);
  EXPECT_THROW(on_receive(node, data_message(MessageKind::Flood, 0, 2, 0, 1), ForwardPolicy::Drop),
               SimulationError);
  node.alive = false;
  EXPECT_THROW(on_receive(node, data_message(MessageKind::Flood, 0, 1, 0, 1), ForwardPolicy::Drop),
               SimulationError);
}

TEST(Buffer, NeverOverflowsOrDuplicates) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    Buffer b(1 + rng.below(8));
    for (int i = 0; i < 40; ++i) {
      const auto src = static_cast<NodeId>(rng.below(12));
      const bool had = b.contains(src);
      const bool was_full = b.full();
      const StoreResult r = b.try_store(Packet{src, {}, 0, Flag::Old});
      if (had) {
        ASSERT_EQ(r, StoreResult::Duplicate);
      } else if (was_full) {
        ASSERT_EQ(r, StoreResult::Full);
      } else {
        ASSERT_EQ(r, StoreResult::Stored);
      }
      ASSERT_LE(b.size(), b.capacity());
      std::set<NodeId> ids;
      for (const auto& p : b.slots()) ASSERT_TRUE(ids.insert(p.source_id).second);
    }
  }
  EXPECT_THROW(Buffer(0), ParameterError);
}

TEST(Collect, UnionOfBuffers) {
  const Topology t = line3();
  std::vector<NodeState> nodes;
  for (NodeId v = 0; v < 3; ++v) nodes.push_back(ready_node(t, v, 3));
  nodes[1].buffer.try_store(Packet{2, Bytes{2, 0xAB}, 0, Flag::Old});

  EXPECT_TRUE(collect(std::vector<NodeId>{}, nodes).empty());

  const std::vector<NodeId> q1{1};
  const auto got = collect(q1, nodes);
  std::map<NodeId, Bytes> scan;
  for (const auto& p : nodes[1].buffer.slots()) scan.emplace(p.source_id, p.payload);
  EXPECT_EQ(got, scan);

  const std::vector<NodeId> all{0, 1, 2};
  EXPECT_EQ(collect(all, nodes).size(), 3u);

  nodes[2].alive = false;
  const std::vector<NodeId> q2{2};
  EXPECT_THROW(collect(q2, nodes), ParameterError);
  const std::vector<NodeId> q3{7};
  EXPECT_THROW(collect(q3, nodes), ParameterError);
}

TEST(ForwardPolicy, Parse) {
  EXPECT_EQ(parse_forward_policy("drop"), ForwardPolicy::Drop);
  EXPECT_EQ(parse_forward_policy("FORWARD"), ForwardPolicy::Forward);
  EXPECT_THROW(parse_forward_policy("maybe"), ParameterError);
}

}  // namespace
}  // namespace mdsa
