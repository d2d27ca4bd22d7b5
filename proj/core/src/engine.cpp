#include "mdsa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "mdsa/error.hpp"
#include "mdsa/rng.hpp"

namespace mdsa {

std::string format_trace(const TraceRecord& r) {
  return "round=" + std::to_string(r.round) + " kind=" + std::string(to_string(r.kind)) +
         " from=" + std::to_string(r.from) + " to=" + std::to_string(r.to) +
         " src=" + std::to_string(r.source) + " hops=" + std::to_string(r.hops);
}

std::vector<Bytes> sensed_payloads(std::size_t n, std::size_t length, std::uint64_t seed) {
  std::vector<Bytes> out(n, Bytes(length));
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(derive_seed(seed, "payload"), i));
    for (auto& b : out[i]) b = static_cast<std::uint8_t>(rng.next_u64() & 0xff);
  }
  return out;
}

ConnectedTopology topology_for(const SimConfig& cfg) {
  validate(cfg);
  return generate_connected_topology(cfg.n, effective_radius(cfg), derive_seed(cfg.seed, "topology"),
                                     cfg.max_topology_attempts);
}

namespace {

void trace_send(const TraceSink& trace, std::size_t round, const Message& m) {
  if (!trace) return;
  trace(TraceRecord{round, m.kind, m.sender, m.receiver, m.packet->source_id, m.packet->hop_count});
}

}  // namespace

MdsaRun run_mdsa(const SimConfig& cfg, const TraceSink& trace) {
  ConnectedTopology ct = topology_for(cfg);
  MdsaRun run = run_mdsa(ct.topology, cfg, trace);
  run.report.topology_retries = ct.retries;
  return run;
}

MdsaRun run_mdsa(const Topology& topology, const SimConfig& cfg, const TraceSink& trace) {
  validate(cfg);
  const std::size_t n = topology.size();
  const std::size_t capacity = cfg.buffer_capacity.value_or(auto_buffer_capacity(n));
  const std::vector<Bytes> payloads = sensed_payloads(n, cfg.payload_length, cfg.seed);

  MdsaRun run{topology, {}, {}};
  run.nodes.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    run.nodes.emplace_back(v, capacity, payloads[v], derive_seed(derive_seed(cfg.seed, "node"), v));
  }
  SimReport& report = run.report;
  report.algorithm = Algorithm::Mdsa;
  report.n = n;
  report.buffer_capacity = capacity;
  report.forward_policy = cfg.forward_policy;

  // Phase 1: query broadcast and replies. The neighbor's half of each
  // exchange (query received, reply sent) is credited here.
  for (NodeState& node : run.nodes) {
    report.init_messages += discover_neighbors(node, topology).total();
    for (NodeId peer : node.neighbor_ids) {
      ++run.nodes[peer].counters.init_received;
      ++run.nodes[peer].counters.init_sent;
    }
  }

  // Phase 2: own packet into slot 0, then one Flood per neighbor.
  std::size_t round = 1;
  std::vector<Message> in_flight;
  for (NodeState& node : run.nodes) prepare_packet(node);
  for (NodeState& node : run.nodes) {
    for (Message& m : flood_packet(node)) {
      trace_send(trace, round, m);
      in_flight.push_back(std::move(m));
    }
  }
  report.flood_messages = in_flight.size();

  // Phase 3: store and unicast.
  std::uint32_t max_budget = 0;
  for (const NodeState& node : run.nodes) max_budget = std::max(max_budget, node.hop_budget);
  std::vector<Message> next;
  while (!in_flight.empty()) {
    ++round;
    if (round > std::size_t{max_budget} + 2) {
      throw SimulationError("dissemination still active after " + std::to_string(round - 1) +
                            " rounds; bound is max hop budget + 2");
    }
    std::stable_sort(in_flight.begin(), in_flight.end(), [](const Message& a, const Message& b) {
      return std::tie(a.receiver, a.sender) < std::tie(b.receiver, b.sender);
    });
    next.clear();
    for (const Message& m : in_flight) {
      ReceiveResult r = on_receive(run.nodes[m.receiver], m, cfg.forward_policy);
      if (r.forward) {
        trace_send(trace, round, *r.forward);
        ++report.unicast_messages;
        next.push_back(std::move(*r.forward));
      }
    }
    in_flight.swap(next);
  }
  report.rounds_to_quiescence = round;
  report.data_messages = report.flood_messages + report.unicast_messages;

  for (const NodeState& node : run.nodes) {
    report.messages_sent += node.counters.data_sent + node.counters.init_sent;
    report.messages_received += node.counters.data_received + node.counters.init_received;
    report.buffer_used.push_back(node.buffer.size());
  }
  report.energy_total = static_cast<double>(report.messages_sent) * cfg.energy_tx +
                        static_cast<double>(report.messages_received) * cfg.energy_rx;
  finalize_occupancy(report);

  if (cfg.failure_fraction > 0.0) {
    apply_failures(run.nodes, cfg.failure_fraction, derive_seed(cfg.seed, "failures"));
  }
  return run;
}

Dsa1Result run_dsa1(const SimConfig& cfg) {
  ConnectedTopology ct = topology_for(cfg);
  Dsa1Result result = run_dsa1(ct.topology, cfg);
  result.report.topology_retries = ct.retries;
  return result;
}

Dsa1Result run_dsa1(const Topology& topology, const SimConfig& cfg) {
  validate(cfg);
  const std::size_t n = topology.size();
  const std::size_t capacity = cfg.buffer_capacity.value_or(auto_buffer_capacity(n));
  const std::vector<Bytes> payloads = sensed_payloads(n, cfg.payload_length, cfg.seed);
  Dsa1Result result =
      dsa1_disseminate(topology, payloads, capacity, robust_soliton(n, cfg.lt_c, cfg.lt_delta),
                       derive_seed(cfg.seed, "dsa1"), cfg.energy_tx, cfg.energy_rx);
  result.report.forward_policy = cfg.forward_policy;
  if (cfg.failure_fraction > 0.0) {
    apply_failures(result.nodes, cfg.failure_fraction, derive_seed(cfg.seed, "failures"));
  }
  return result;
}

std::vector<NodeId> choose_failures(std::size_t n, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw ParameterError("failure fraction must be in [0, 1)");
  }
  // The epsilon keeps products like 0.29 * 100 from flooring to 28.
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) std::swap(ids[i], ids[i + rng.below(n - i)]);
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void apply_failures(std::span<NodeState> nodes, double fraction, std::uint64_t seed) {
  for (NodeId v : choose_failures(nodes.size(), fraction, seed)) nodes[v].alive = false;
}

void apply_failures(std::span<Dsa1Node> nodes, double fraction, std::uint64_t seed) {
  for (NodeId v : choose_failures(nodes.size(), fraction, seed)) nodes[v].alive = false;
}

std::vector<NodeId> sample_query_set(const std::vector<bool>& alive, double ratio,
                                     std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ParameterError("query ratio must be in (0, 1]");
  const std::size_t n = alive.size();
  const auto wanted = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n) - 1e-9));

  std::vector<NodeId> pool;
  for (NodeId v = 0; v < n; ++v) {
    if (alive[v]) pool.push_back(v);
  }
  if (pool.size() < wanted) {
    throw InsufficientNodesError("query needs " + std::to_string(wanted) + " alive nodes, only " +
                                 std::to_string(pool.size()) + " available");
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < wanted; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  pool.resize(wanted);
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

template <typename Node>
std::vector<bool> alive_mask(std::span<const Node> nodes) {
  std::vector<bool> alive(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) alive[i] = nodes[i].alive;
  return alive;
}

}  // namespace

double measure_recovery(std::span<const NodeState> nodes, double ratio, std::uint64_t seed) {
  if (nodes.empty()) throw ParameterError("no nodes to query");
  const auto query = sample_query_set(alive_mask(nodes), ratio, seed);
  const auto recovered = collect(query, nodes);
  return 100.0 * static_cast<double>(recovered.size()) / static_cast<double>(nodes.size());
}

double measure_recovery(std::span<const Dsa1Node> nodes, double ratio, std::uint64_t seed) {
  if (nodes.empty()) throw ParameterError("no nodes to query");
  const auto query = sample_query_set(alive_mask(nodes), ratio, seed);
  std::vector<EncodedSymbol> symbols;
  for (NodeId q : query) {
    for (auto& s : nodes[q].symbols()) symbols.push_back(std::move(s));
  }
  const auto recovered = lt_decode(symbols, nodes.size());
  return 100.0 * static_cast<double>(recovered.size()) / static_cast<double>(nodes.size());
}

}  // namespace mdsa
