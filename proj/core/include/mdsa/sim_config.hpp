#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdsa/protocol.hpp"

namespace mdsa {

enum class Algorithm { Mdsa, Dsa1 };

std::string_view to_string(Algorithm a);  // "mdsa" / "dsa1"
Algorithm parse_algorithm(std::string_view text);

struct SimConfig {
  std::size_t n = 50;
  std::optional<double> radius;                // unset: preset_radius(n)
  std::optional<std::size_t> buffer_capacity;  // unset: auto, round(0.10 n), min 1
  ForwardPolicy forward_policy = ForwardPolicy::Drop;
  double failure_fraction = 0.0;
  std::uint64_t seed = 1;
  double energy_tx = 1.0;
  double energy_rx = 0.5;
  std::size_t payload_length = 16;
  // Robust soliton parameters for the DSA-I baseline.
  double lt_c = 0.1;
  double lt_delta = 0.5;
  std::size_t max_topology_attempts = 10000;
};

// round(0.10 n), at least 1.
std::size_t auto_buffer_capacity(std::size_t n);
std::size_t effective_capacity(const SimConfig& cfg);
double effective_radius(const SimConfig& cfg);

// Throws ConfigError describing the first offending field.
void validate(const SimConfig& cfg);

// Line-oriented "key = value" text. Blank lines and '#' comments are ignored.
// Keys mirror the SimConfig fields; "buffer_capacity = auto" and
// "radius = auto" select the presets. Unknown keys are a ConfigError.
void apply_config_text(SimConfig& cfg, std::istream& in);
void apply_config_entry(SimConfig& cfg, std::string_view key, std::string_view value);
// Throws IoError if the file cannot be opened.
SimConfig load_config(const std::filesystem::path& path, SimConfig base = {});

std::string to_config_text(const SimConfig& cfg);

// Accounting ledger shared by both algorithms.
struct SimReport {
  Algorithm algorithm = Algorithm::Mdsa;
  std::size_t n = 0;
  std::size_t buffer_capacity = 0;
  ForwardPolicy forward_policy = ForwardPolicy::Drop;

  std::uint64_t flood_messages = 0;
  std::uint64_t unicast_messages = 0;
  std::uint64_t data_messages = 0;  // flood + unicast
  std::uint64_t init_messages = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_received = 0;
  double energy_total = 0.0;

  std::vector<std::size_t> buffer_used;  // per node
  std::size_t total_capacity = 0;
  std::size_t total_free = 0;
  double percent_unused = 0.0;  // 100 * total_free / total_capacity

  std::size_t rounds_to_quiescence = 0;
  std::size_t topology_retries = 0;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

// Fills total_capacity, total_free and percent_unused from buffer_used.
void finalize_occupancy(SimReport& report);

}  // namespace mdsa
