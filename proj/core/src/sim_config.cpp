#include "mdsa/sim_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "mdsa/csv.hpp"
#include "mdsa/error.hpp"
#include "mdsa/topology.hpp"

namespace mdsa {

std::string_view to_string(Algorithm a) { return a == Algorithm::Mdsa ? "mdsa" : "dsa1"; }

Algorithm parse_algorithm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "mdsa") return Algorithm::Mdsa;
  if (lower == "dsa1" || lower == "dsa-i") return Algorithm::Dsa1;
  throw ParameterError("algorithm must be 'mdsa' or 'dsa1', got '" + std::string(text) + "'");
}

std::size_t auto_buffer_capacity(std::size_t n) {
  const auto slots = static_cast<std::size_t>(std::llround(0.10 * static_cast<double>(n)));
  return std::max<std::size_t>(1, slots);
}

std::size_t effective_capacity(const SimConfig& cfg) {
  return cfg.buffer_capacity.value_or(auto_buffer_capacity(cfg.n));
}

double effective_radius(const SimConfig& cfg) { return cfg.radius.value_or(preset_radius(cfg.n)); }

void validate(const SimConfig& cfg) {
  if (cfg.n == 0) throw ConfigError("n must be at least 1");
  if (cfg.radius && !(*cfg.radius > 0.0 && *cfg.radius <= std::sqrt(2.0))) {
    throw ConfigError("radius must be in (0, sqrt(2)]");
  }
  if (cfg.buffer_capacity && *cfg.buffer_capacity == 0) {
    throw ConfigError("buffer_capacity must be at least 1");
  }
  if (!(cfg.failure_fraction >= 0.0 && cfg.failure_fraction < 1.0)) {
    throw ConfigError("failure_fraction must be in [0, 1)");
  }
  if (!(cfg.energy_tx >= 0.0) || !(cfg.energy_rx >= 0.0)) {
    throw ConfigError("energy_tx and energy_rx must be non-negative");
  }
  if (cfg.payload_length == 0) throw ConfigError("payload_length must be at least 1");
  if (!(cfg.lt_c > 0.0)) throw ConfigError("lt_c must be positive");
  if (!(cfg.lt_delta > 0.0 && cfg.lt_delta < 1.0)) throw ConfigError("lt_delta must be in (0, 1)");
  if (cfg.max_topology_attempts == 0) throw ConfigError("max_topology_attempts must be at least 1");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

}  // namespace

void apply_config_entry(SimConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  try {
    if (key == "n") {
      cfg.n = parse_number<std::size_t>(key, value);
    } else if (key == "radius") {
      cfg.radius = value == "auto" ? std::nullopt
                                   : std::optional<double>(parse_number<double>(key, value));
    } else if (key == "buffer_capacity" || key == "buffer") {
      cfg.buffer_capacity = value == "auto" ? std::nullopt
                                            : std::optional<std::size_t>(
                                                  parse_number<std::size_t>(key, value));
    } else if (key == "forward_policy" || key == "policy") {
      cfg.forward_policy = parse_forward_policy(value);
    } else if (key == "failure_fraction") {
      cfg.failure_fraction = parse_number<double>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "energy_tx") {
      cfg.energy_tx = parse_number<double>(key, value);
    } else if (key == "energy_rx") {
      cfg.energy_rx = parse_number<double>(key, value);
    } else if (key == "payload_length") {
      cfg.payload_length = parse_number<std::size_t>(key, value);
    } else if (key == "lt_c") {
      cfg.lt_c = parse_number<double>(key, value);
    } else if (key == "lt_delta") {
      cfg.lt_delta = parse_number<double>(key, value);
    } else if (key == "max_topology_attempts") {
      cfg.max_topology_attempts = parse_number<std::size_t>(key, value);
    } else {
      throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

void apply_config_text(SimConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_config_entry(cfg, view.substr(0, eq), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

SimConfig load_config(const std::filesystem::path& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  apply_config_text(base, in);
  return base;
}

std::string to_config_text(const SimConfig& cfg) {
  std::ostringstream out;
  out << "n = " << cfg.n << '\n';
  out << "radius = ";
  out << (cfg.radius ? format_number(*cfg.radius) : "auto");
  out << "\nbuffer_capacity = ";
  if (cfg.buffer_capacity) out << *cfg.buffer_capacity; else out << "auto";
  out << "\nforward_policy = " << to_string(cfg.forward_policy) << '\n';
  out << "failure_fraction = " << format_number(cfg.failure_fraction) << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "energy_tx = " << format_number(cfg.energy_tx) << '\n';
  out << "energy_rx = " << format_number(cfg.energy_rx) << '\n';
  out << "payload_length = " << cfg.payload_length << '\n';
  out << "lt_c = " << format_number(cfg.lt_c) << '\n';
  out << "lt_delta = " << format_number(cfg.lt_delta) << '\n';
  out << "max_topology_attempts = " << cfg.max_topology_attempts << '\n';
  return out.str();
}

void finalize_occupancy(SimReport& report) {
  report.total_capacity = report.buffer_capacity * report.buffer_used.size();
  std::size_t used = 0;
  for (std::size_t u : report.buffer_used) used += u;
  report.total_free = report.total_capacity - used;
  report.percent_unused = report.total_capacity == 0
                              ? 0.0
                              : 100.0 * static_cast<double>(report.total_free) /
                                    static_cast<double>(report.total_capacity);
}

}  // namespace mdsa
