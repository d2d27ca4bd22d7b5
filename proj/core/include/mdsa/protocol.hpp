#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mdsa/packet.hpp"
#include "mdsa/rng.hpp"
#include "mdsa/topology.hpp"

namespace mdsa {

// What a node does with a packet it could not store because its buffer is full.
//   Drop    - cancel the operation: no store, no forward (default).
//   Forward - still pass the packet on if it has hops left.
enum class ForwardPolicy { Drop, Forward };

std::string_view to_string(ForwardPolicy p);
// Accepts "drop" / "forward" (any case). Throws ParameterError otherwise.
ForwardPolicy parse_forward_policy(std::string_view text);

struct MessageCounters {
  std::uint64_t data_sent = 0;
  std::uint64_t data_received = 0;
  std::uint64_t init_sent = 0;
  std::uint64_t init_received = 0;
};

struct NodeState {
  NodeState(NodeId id, std::size_t buffer_capacity, Bytes sensed, std::uint64_t seed);

  NodeId id;
  std::vector<NodeId> neighbor_ids;  // sorted
  Buffer buffer;
  std::uint32_t hop_budget = 0;
  Rng rng;
  bool alive = true;
  Bytes sensed;  // the datum this node contributes
  MessageCounters counters;
};

// hop_count = floor(n_total / n_neighbors); 0 for an isolated node.
// Throws ParameterError when n_total is 0.
std::uint32_t compute_hop_count(std::uint64_t n_total, std::uint64_t n_neighbors);

struct InitCounts {
  std::uint64_t query_deliveries = 0;  // one broadcast, one delivery per neighbor
  std::uint64_t replies = 0;
  std::uint64_t total() const noexcept { return query_deliveries + replies; }
};

// Learns the neighbor set and derives the hop budget. Only this node's
// counters are touched (queries sent, replies received); the caller credits
// the neighbors' side of the exchange.
InitCounts discover_neighbors(NodeState& node, const Topology& t);

// Builds the node's own packet and places it in buffer slot 0. Throws
// SimulationError if the buffer already holds anything.
Packet prepare_packet(NodeState& node);

// One Flood message per neighbor, each carrying the node's own packet.
std::vector<Message> flood_packet(NodeState& node);

struct ReceiveResult {
  StoreResult store = StoreResult::Stored;
  std::optional<Message> forward;  // the Unicast, if any
};

// Store-and-unicast step for one delivered Flood or Unicast message.
//
// The packet is stored unless a packet from the same source is already held
// or the buffer is full. If the packet still has hops left it is forwarded to
// one neighbor drawn uniformly from neighbor_ids minus the sender (the sender
// itself when it is the only neighbor), with hop_count reduced by one. A
// buffer that was already full when the message arrived suppresses the
// forward under ForwardPolicy::Drop; duplicates arriving at a node with free
// slots are still forwarded.
//
// Throws SimulationError for a dead receiver or a misaddressed message and
// ParameterError for a kind that carries no packet.
ReceiveResult on_receive(NodeState& node, const Message& msg, ForwardPolicy policy);

// Union of the buffers of the queried nodes, keyed by source id. Throws
// ParameterError for an unknown or dead node.
std::map<NodeId, Bytes> collect(std::span<const NodeId> query_set,
                                std::span<const NodeState> nodes);

}  // namespace mdsa
