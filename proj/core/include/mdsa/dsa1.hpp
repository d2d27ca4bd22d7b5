#pragma once

// Reconstructed DSA-I baseline: network-wide flooding of every source packet
// with duplicate suppression, and LT-coded storage at every node.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdsa/lt_code.hpp"
#include "mdsa/sim_config.hpp"
#include "mdsa/topology.hpp"

namespace mdsa {

struct Dsa1Node {
  NodeId id = 0;
  std::size_t capacity = 0;
  // One entry per storage slot: the degree drawn for it and what it accepted.
  // A slot whose id set is still empty is unused.
  std::vector<std::size_t> slot_degrees;
  std::vector<EncodedSymbol> slots;
  std::size_t sources_seen = 0;
  bool alive = true;

  // Non-empty slots only.
  std::vector<EncodedSymbol> symbols() const;
  std::size_t used_slots() const;
};

struct Dsa1Result {
  std::vector<Dsa1Node> nodes;
  SimReport report;
};

// Every source floods its packet; each node re-multicasts each first-seen
// packet to all its neighbors, one message per link. Deliveries happen in
// synchronous rounds ordered by (receiver, sender, source). Every node draws
// a degree for each of its `capacity` slots and, as each distinct source
// packet arrives (its own first), XOR-accepts it into a slot with
// probability degree/N until that slot holds `degree` sources.
//
// Throws ParameterError if payloads do not match the topology size or differ
// in length, or if dist.k() != N; SimulationError for a disconnected topology.
Dsa1Result dsa1_disseminate(const Topology& t, std::span<const Bytes> payloads,
                            std::size_t capacity, const DegreeDistribution& dist,
                            std::uint64_t seed, double energy_tx = 1.0,
                            double energy_rx = 0.5);

}  // namespace mdsa
