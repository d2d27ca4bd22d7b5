#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mdsa/dsa1.hpp"
#include "mdsa/protocol.hpp"
#include "mdsa/sim_config.hpp"
#include "mdsa/topology.hpp"

namespace mdsa {

struct TraceRecord {
  std::size_t round = 0;
  MessageKind kind = MessageKind::Flood;
  NodeId from = 0;
  NodeId to = 0;
  NodeId source = 0;
  std::uint32_t hops = 0;
};

// "round=<r> kind=<k> from=<i> to=<j> src=<s> hops=<h>"
std::string format_trace(const TraceRecord& r);

using TraceSink = std::function<void(const TraceRecord&)>;

// Deterministic datum for every node, `length` bytes each.
std::vector<Bytes> sensed_payloads(std::size_t n, std::size_t length, std::uint64_t seed);

struct MdsaRun {
  Topology topology;
  std::vector<NodeState> nodes;
  SimReport report;
};

// Connected topology for cfg (regenerated until connected).
ConnectedTopology topology_for(const SimConfig& cfg);

// Full MDSA run: neighbor discovery, prepare and flood, then synchronous
// store-and-unicast rounds until no message is in flight. Messages sent in
// round r are delivered in round r+1 in ascending (receiver, sender) order.
// Failures from cfg.failure_fraction are applied after dissemination.
MdsaRun run_mdsa(const SimConfig& cfg, const TraceSink& trace = {});

// Same, on a caller-supplied topology (cfg.n and cfg.radius are ignored).
MdsaRun run_mdsa(const Topology& topology, const SimConfig& cfg, const TraceSink& trace = {});

Dsa1Result run_dsa1(const SimConfig& cfg);
Dsa1Result run_dsa1(const Topology& topology, const SimConfig& cfg);

// floor(fraction * n) distinct node ids, uniformly chosen. Throws
// ParameterError unless 0 <= fraction < 1.
std::vector<NodeId> choose_failures(std::size_t n, double fraction, std::uint64_t seed);
void apply_failures(std::span<NodeState> nodes, double fraction, std::uint64_t seed);
void apply_failures(std::span<Dsa1Node> nodes, double fraction, std::uint64_t seed);

// ceil(ratio * n) distinct alive nodes, uniformly chosen. Throws
// ParameterError unless 0 < ratio <= 1 and InsufficientNodesError when too
// few nodes are alive.
std::vector<NodeId> sample_query_set(const std::vector<bool>& alive, double ratio,
                                     std::uint64_t seed);

// Percentage of all N sources recoverable from a uniformly sampled query set.
double measure_recovery(std::span<const NodeState> nodes, double ratio, std::uint64_t seed);
double measure_recovery(std::span<const Dsa1Node> nodes, double ratio, std::uint64_t seed);

}  // namespace mdsa
