#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mdsa {

// Dense node identifier, assigned 0..n-1 in creation order.
using NodeId = std::uint32_t;

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

// Random geometric graph over the unit square. Immutable once built; two
// nodes are adjacent iff their euclidean distance is at most the radius.
class Topology {
 public:
  Topology() = default;

  // Builds adjacency from explicit positions. Used by the generator and by
  // the text reader; tests use it to hand-place nodes.
  Topology(std::vector<Position> positions, double radius, std::uint64_t seed = 0);

  std::size_t size() const noexcept { return positions_.size(); }
  double radius() const noexcept { return radius_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<Position>& positions() const noexcept { return positions_; }
  const Position& position(NodeId id) const;

  // Sorted neighbor list; view into the topology.
  const std::vector<NodeId>& adjacent(NodeId id) const;
  std::size_t degree(NodeId id) const { return adjacent(id).size(); }
  std::size_t degree_sum() const noexcept;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::vector<Position> positions_;
  double radius_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<std::vector<NodeId>> adjacency_;
};

// n i.i.d. uniform positions in [0,1]^2. Throws ParameterError unless
// n >= 1 and 0 < radius <= sqrt(2).
Topology generate_topology(std::size_t n, double radius, std::uint64_t seed);

// Neighbor set by value; throws ParameterError for an out-of-range id.
std::vector<NodeId> neighbors(const Topology& t, NodeId id);

// Single component check (a one-node topology is connected).
bool is_connected(const Topology& t);

// P(|a - b| <= r) for two independent uniform points in the unit square.
double pair_within_radius_probability(double r);

// Radius whose expected degree (n - 1) * P(|a - b| <= r) equals 2 ln(n),
// border effects included. Capped at sqrt(2) for tiny n.
double preset_radius(std::size_t n);

struct ConnectedTopology {
  Topology topology;
  // Number of rejected disconnected draws before `topology` was accepted.
  std::size_t retries = 0;
};

// Regenerates with seeds derived from `seed` until the graph is connected.
// Attempt 0 uses `seed` itself. Throws SimulationError after max_attempts.
ConnectedTopology generate_connected_topology(std::size_t n, double radius, std::uint64_t seed,
                                              std::size_t max_attempts = 10000);

// Text form: "n radius seed" header, then "id x y" per node, six fractional
// digits throughout.
void write_topology(std::ostream& out, const Topology& t);
std::string to_text(const Topology& t);

// Parses the text form. Positions come back rounded to the written digits
// and adjacency is rebuilt from them. Throws ParameterError on malformed input.
Topology read_topology(std::istream& in);

}  // namespace mdsa
