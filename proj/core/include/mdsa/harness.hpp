#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdsa/sim_config.hpp"

namespace mdsa {

struct SweepPoint {
  double query_ratio = 0.0;
  double mean = 0.0;    // mean recovery percent
  double stddev = 0.0;  // sample standard deviation
  std::size_t trials = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepCurve {
  Algorithm algorithm = Algorithm::Mdsa;
  std::size_t n = 0;
  std::size_t buffer = 0;
  std::vector<SweepPoint> points;
  std::size_t skipped_trials = 0;  // excluded from the means
};

struct SweepOptions {
  Algorithm algorithm = Algorithm::Mdsa;
  SimConfig base;  // n, radius, buffer, policy, failures; base.seed is unused
  std::size_t trials = 30;
  double step = 0.1;
  std::uint64_t base_seed = 1;
  std::size_t jobs = 1;  // worker threads for trials
};

// Query ratios step, 2*step, ..., up to 1 (rounded to 1e-9).
std::vector<double> query_ratios(double step);

// Seed of one trial; depends only on (base_seed, ratio, trial) so adding
// ratios or trials leaves existing ones untouched.
std::uint64_t trial_seed(std::uint64_t base_seed, double ratio, std::size_t trial);

// For every ratio, `trials` independent simulations (fresh topology each),
// each queried once. Trials with too few alive nodes are skipped and counted.
// Throws ParameterError unless n >= 10, trials >= 1 and 0 < step <= 1.
SweepCurve sweep(const SweepOptions& opts);

struct ComparisonRow {
  Algorithm algorithm = Algorithm::Mdsa;
  std::size_t n = 0;
  std::size_t buffer = 0;
  double data_messages = 0.0;   // mean over replicates
  double percent_unused = 0.0;  // mean over replicates

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

struct ComparisonTable {
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::vector<ComparisonRow> rows;  // DSA-I rows then MDSA rows, M ascending

  const ComparisonRow& row(Algorithm a, std::size_t buffer) const;
};

struct Table1Options {
  std::size_t n = 15;
  std::vector<std::size_t> buffers{5, 6, 7, 8};
  std::size_t replicates = 20;
  std::uint64_t base_seed = 1;
  SimConfig base;  // radius, policy, energy and LT parameters
};

// Both algorithms on the same connected topology per replicate and buffer size.
ComparisonTable table1(const Table1Options& opts);

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace mdsa
