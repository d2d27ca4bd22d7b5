#include "mdsa/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "mdsa/error.hpp"

namespace mdsa {

std::string_view to_string(ForwardPolicy p) {
  return p == ForwardPolicy::Drop ? "drop" : "forward";
}

ForwardPolicy parse_forward_policy(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "drop") return ForwardPolicy::Drop;
  if (lower == "forward") return ForwardPolicy::Forward;
  throw ParameterError("forward policy must be 'drop' or 'forward', got '" + std::string(text) + "'");
}

NodeState::NodeState(NodeId node_id, std::size_t buffer_capacity, Bytes datum, std::uint64_t seed)
    : id(node_id), buffer(buffer_capacity), rng(seed), sensed(std::move(datum)) {}

std::uint32_t compute_hop_count(std::uint64_t n_total, std::uint64_t n_neighbors) {
  if (n_total == 0) throw ParameterError("total node count must be at least 1");
  if (n_neighbors == 0) return 0;
  return static_cast<std::uint32_t>(n_total / n_neighbors);
}

InitCounts discover_neighbors(NodeState& node, const Topology& t) {
  node.neighbor_ids = neighbors(t, node.id);
  node.hop_budget = compute_hop_count(t.size(), node.neighbor_ids.size());

  const std::uint64_t degree = node.neighbor_ids.size();
  node.counters.init_sent += degree;
  node.counters.init_received += degree;
  return InitCounts{degree, degree};
}

Packet prepare_packet(NodeState& node) {
  if (!node.buffer.empty()) {
    throw SimulationError("node " + std::to_string(node.id) +
                          " must prepare its own packet before storing others");
  }
  Packet own{node.id, node.sensed, node.hop_budget, Flag::Old};
  node.buffer.try_store(own);
  return own;
}

std::vector<Message> flood_packet(NodeState& node) {
  if (node.buffer.empty() || node.buffer.slots().front().source_id != node.id) {
    throw SimulationError("node " + std::to_string(node.id) + " flooded before preparing");
  }
  const Packet& own = node.buffer.slots().front();

  std::vector<Message> out;
  out.reserve(node.neighbor_ids.size());
  for (NodeId peer : node.neighbor_ids) {
    out.push_back(Message{MessageKind::Flood, node.id, peer, own});
  }
  node.counters.data_sent += out.size();
  return out;
}

namespace {

std::optional<NodeId> pick_next_hop(NodeState& node, NodeId sender) {
  const auto& adj = node.neighbor_ids;
  if (adj.empty()) return std::nullopt;

  const bool sender_is_neighbor = std::binary_search(adj.begin(), adj.end(), sender);
  const std::size_t candidates = adj.size() - (sender_is_neighbor ? 1 : 0);
  if (candidates == 0) return sender;

  // Index into adj with the sender's entry skipped.
  std::size_t k = node.rng.below(candidates);
  if (sender_is_neighbor) {
    const auto sender_pos = static_cast<std::size_t>(
        std::lower_bound(adj.begin(), adj.end(), sender) - adj.begin());
    if (k >= sender_pos) ++k;
  }
  return adj[k];
}

}  // namespace

ReceiveResult on_receive(NodeState& node, const Message& msg, ForwardPolicy policy) {
  if (!msg.carries_data()) {
    throw ParameterError("on_receive handles Flood and Unicast only, got " +
                         std::string(to_string(msg.kind)));
  }
  if (!msg.well_formed()) throw ParameterError("data message without a packet");
  if (msg.receiver != node.id) {
    throw SimulationError("message for node " + std::to_string(msg.receiver) +
                          " delivered to node " + std::to_string(node.id));
  }
  if (!node.alive) {
    throw SimulationError("delivery to dead node " + std::to_string(node.id));
  }

  ++node.counters.data_received;
  const Packet& incoming = *msg.packet;

  // Fullness is judged on arrival: a duplicate reaching a node with free
  // slots still travels on, one reaching a full node does not under Drop.
  const bool full_on_arrival = node.buffer.full();
  ReceiveResult result;
  result.store = node.buffer.try_store(incoming);

  const bool may_forward = !full_on_arrival || policy == ForwardPolicy::Forward;
  if (incoming.hop_count > 0 && may_forward) {
    if (auto next = pick_next_hop(node, msg.sender)) {
      Packet relayed = incoming;
      --relayed.hop_count;
      result.forward = Message{MessageKind::Unicast, node.id, *next, std::move(relayed)};
      ++node.counters.data_sent;
    }
  }
  return result;
}

std::map<NodeId, Bytes> collect(std::span<const NodeId> query_set,
                                std::span<const NodeState> nodes) {
  std::map<NodeId, Bytes> recovered;
  for (NodeId q : query_set) {
    if (q >= nodes.size()) {
      throw ParameterError("query for unknown node " + std::to_string(q));
    }
    const NodeState& node = nodes[q];
    if (!node.alive) throw ParameterError("query for dead node " + std::to_string(q));
    for (const Packet& p : node.buffer.slots()) recovered.try_emplace(p.source_id, p.payload);
  }
  return recovered;
}

}  // namespace mdsa
