#include "mdsa/dsa1.hpp"

#include <algorithm>
#include <tuple>

#include "mdsa/error.hpp"
#include "mdsa/rng.hpp"

namespace mdsa {

std::vector<EncodedSymbol> Dsa1Node::symbols() const {
  std::vector<EncodedSymbol> out;
  for (const auto& s : slots) {
    if (!s.ids.empty()) out.push_back(s);
  }
  return out;
}

std::size_t Dsa1Node::used_slots() const {
  return static_cast<std::size_t>(
      std::count_if(slots.begin(), slots.end(), [](const auto& s) { return !s.ids.empty(); }));
}

namespace {

struct Delivery {
  NodeId receiver;
  NodeId sender;
  NodeId source;

  friend bool operator<(const Delivery& a, const Delivery& b) {
    return std::tie(a.receiver, a.sender, a.source) < std::tie(b.receiver, b.sender, b.source);
  }
};

void offer(Dsa1Node& node, NodeId source, const Bytes& payload, std::size_t n, Rng& rng) {
  ++node.sources_seen;
  const double nd = static_cast<double>(n);
  for (std::size_t s = 0; s < node.slots.size(); ++s) {
    EncodedSymbol& slot = node.slots[s];
    const std::size_t degree = node.slot_degrees[s];
    if (slot.ids.size() >= degree) continue;
    if (!rng.bernoulli(static_cast<double>(degree) / nd)) continue;
    slot.ids.insert(std::upper_bound(slot.ids.begin(), slot.ids.end(), source), source);
    xor_into(slot.payload, payload);
  }
}

}  // namespace

Dsa1Result dsa1_disseminate(const Topology& t, std::span<const Bytes> payloads,
                            std::size_t capacity, const DegreeDistribution& dist,
                            std::uint64_t seed, double energy_tx, double energy_rx) {
  const std::size_t n = t.size();
  if (payloads.size() != n) throw ParameterError("one payload per node required");
  if (capacity == 0) throw ParameterError("buffer capacity must be at least 1");
  if (dist.k() != n) throw ParameterError("degree distribution must cover k = N sources");
  const std::size_t len = payloads[0].size();
  for (const Bytes& p : payloads) {
    if (p.size() != len) throw ParameterError("payloads must have equal length");
  }
  if (!is_connected(t)) throw SimulationError("DSA-I baseline requires a connected topology");

  Dsa1Result result;
  std::vector<Rng> rngs;
  rngs.reserve(n);
  result.nodes.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    rngs.emplace_back(derive_seed(derive_seed(seed, "dsa1-node"), v));
    Dsa1Node& node = result.nodes[v];
    node.id = v;
    node.capacity = capacity;
    node.slot_degrees.resize(capacity);
    node.slots.assign(capacity, EncodedSymbol{{}, Bytes(len, 0)});
    for (auto& d : node.slot_degrees) d = dist.sample(rngs[v]);
  }

  // seen[v * n + s]: node v already holds source s's packet.
  std::vector<bool> seen(n * n, false);
  std::vector<std::uint64_t> sent(n, 0), received(n, 0);
  std::vector<Delivery> in_flight;

  const auto multicast = [&](NodeId from, NodeId source, std::vector<Delivery>& out) {
    for (NodeId peer : t.adjacent(from)) out.push_back({peer, from, source});
    sent[from] += t.degree(from);
  };

  for (NodeId v = 0; v < n; ++v) {
    seen[std::size_t{v} * n + v] = true;
    offer(result.nodes[v], v, payloads[v], n, rngs[v]);
    multicast(v, v, in_flight);
  }

  std::size_t rounds = 1;
  std::uint64_t deliveries = 0;
  std::vector<Delivery> next;
  while (!in_flight.empty()) {
    ++rounds;
    std::sort(in_flight.begin(), in_flight.end());
    next.clear();
    for (const Delivery& d : in_flight) {
      ++received[d.receiver];
      ++deliveries;
      const std::size_t key = std::size_t{d.receiver} * n + d.source;
      if (seen[key]) continue;
      seen[key] = true;
      offer(result.nodes[d.receiver], d.source, payloads[d.source], n, rngs[d.receiver]);
      multicast(d.receiver, d.source, next);
    }
    in_flight.swap(next);
  }

  SimReport& r = result.report;
  r.algorithm = Algorithm::Dsa1;
  r.n = n;
  r.buffer_capacity = capacity;
  r.flood_messages = deliveries;
  r.data_messages = deliveries;
  for (NodeId v = 0; v < n; ++v) {
    r.messages_sent += sent[v];
    r.messages_received += received[v];
    r.buffer_used.push_back(result.nodes[v].used_slots());
  }
  r.energy_total = static_cast<double>(r.messages_sent) * energy_tx +
                   static_cast<double>(r.messages_received) * energy_rx;
  r.rounds_to_quiescence = rounds;
  finalize_occupancy(r);
  return result;
}

}  // namespace mdsa
