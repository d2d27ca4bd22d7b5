#include "mdsa/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "mdsa/error.hpp"
#include "mdsa/rng.hpp"

namespace mdsa {

namespace {

constexpr double kMaxRadius = 1.4142135623730951;  // diagonal of the unit square

void check_radius(double radius) {
  if (!(radius > 0.0) || radius > kMaxRadius) {
    throw ParameterError("radius must be in (0, sqrt(2)], got " + std::to_string(radius));
  }
}

}  // namespace

Topology::Topology(std::vector<Position> positions, double radius, std::uint64_t seed)
    : positions_(std::move(positions)), radius_(radius), seed_(seed) {
  if (positions_.empty()) throw ParameterError("topology needs at least one node");
  check_radius(radius);

  const std::size_t n = positions_.size();
  adjacency_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = positions_[i].x - positions_[j].x;
      const double dy = positions_[i].y - positions_[j].y;
      if (std::sqrt(dx * dx + dy * dy) <= radius_) {
        adjacency_[i].push_back(static_cast<NodeId>(j));
        adjacency_[j].push_back(static_cast<NodeId>(i));
      }
    }
  }
  // Both loops append in increasing id order, so every list is already sorted.
}

const Position& Topology::position(NodeId id) const {
  if (id >= size()) throw ParameterError("node id " + std::to_string(id) + " out of range");
  return positions_[id];
}

const std::vector<NodeId>& Topology::adjacent(NodeId id) const {
  if (id >= size()) throw ParameterError("node id " + std::to_string(id) + " out of range");
  return adjacency_[id];
}

std::size_t Topology::degree_sum() const noexcept {
  return std::accumulate(adjacency_.begin(), adjacency_.end(), std::size_t{0},
                         [](std::size_t acc, const auto& adj) { return acc + adj.size(); });
}

Topology generate_topology(std::size_t n, double radius, std::uint64_t seed) {
  if (n == 0) throw ParameterError("node count must be at least 1");
  check_radius(radius);

  Rng rng(seed);
  std::vector<Position> positions(n);
  for (auto& p : positions) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  return Topology(std::move(positions), radius, seed);
}

std::vector<NodeId> neighbors(const Topology& t, NodeId id) { return t.adjacent(id); }

bool is_connected(const Topology& t) {
  const std::size_t n = t.size();
  if (n <= 1) return true;

  std::vector<bool> seen(n, false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (NodeId w : t.adjacent(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

double pair_within_radius_probability(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= kMaxRadius) return 1.0;
  const double r2 = r * r;
  if (r <= 1.0) return std::numbers::pi * r2 - 8.0 / 3.0 * r2 * r + 0.5 * r2 * r2;
  // Beyond r = 1 the disc leaves the square in both directions.
  const double s = std::sqrt(r2 - 1.0);
  return 1.0 / 3.0 + (std::numbers::pi - 2.0) * r2 + 4.0 / 3.0 * (2.0 * r2 + 1.0) * s -
         0.5 * r2 * r2 - 4.0 * r2 * std::acos(1.0 / r);
}

double preset_radius(std::size_t n) {
  if (n <= 1) return kMaxRadius;
  const double target = 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n - 1);
  if (target >= 1.0) return kMaxRadius;
  // The pair probability is increasing in r; bisect for the target.
  double lo = 0.0, hi = kMaxRadius;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pair_within_radius_probability(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

ConnectedTopology generate_connected_topology(std::size_t n, double radius, std::uint64_t seed,
                                              std::size_t max_attempts) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed(derive_seed(seed, "topology-retry"), attempt);
    Topology t = generate_topology(n, radius, s);
    if (is_connected(t)) return {std::move(t), attempt};
  }
  throw SimulationError("no connected topology for n=" + std::to_string(n) +
                        " radius=" + std::to_string(radius) + " after " +
                        std::to_string(max_attempts) + " attempts");
}

void write_topology(std::ostream& out, const Topology& t) {
  char line[128];
  std::snprintf(line, sizeof line, "%zu %.6f %llu\n", t.size(), t.radius(),
                static_cast<unsigned long long>(t.seed()));
  out << line;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Position& p = t.positions()[i];
    std::snprintf(line, sizeof line, "%zu %.6f %.6f\n", i, p.x, p.y);
    out << line;
  }
}

std::string to_text(const Topology& t) {
  std::ostringstream out;
  write_topology(out, t);
  return out.str();
}

Topology read_topology(std::istream& in) {
  std::size_t n = 0;
  double radius = 0.0;
  unsigned long long seed = 0;
  if (!(in >> n >> radius >> seed)) throw ParameterError("topology header must be 'n radius seed'");
  if (n == 0) throw ParameterError("topology header declares zero nodes");

  std::vector<Position> positions(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t id = 0;
    Position p;
    if (!(in >> id >> p.x >> p.y)) {
      throw ParameterError("topology line " + std::to_string(i + 2) + " must be 'id x y'");
    }
    if (id != i) throw ParameterError("topology ids must be dense and ordered");
    positions[i] = p;
  }
  return Topology(std::move(positions), radius, seed);
}

}  // namespace mdsa
