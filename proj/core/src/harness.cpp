#include "mdsa/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "mdsa/engine.hpp"
#include "mdsa/error.hpp"
#include "mdsa/rng.hpp"

namespace mdsa {

std::vector<double> query_ratios(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw ParameterError("step must be in (0, 1]");
  std::vector<double> out;
  for (std::size_t i = 1;; ++i) {
    const double r = std::round(static_cast<double>(i) * step * 1e9) / 1e9;
    if (r > 1.0) break;
    out.push_back(r);
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t base_seed, double ratio, std::size_t trial) {
  const auto ratio_key = static_cast<std::uint64_t>(std::llround(ratio * 1e6));
  return derive_seed(base_seed, ratio_key, trial);
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < std::min(jobs, count); ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

double run_trial(const SweepOptions& opts, double ratio, std::uint64_t seed) {
  SimConfig cfg = opts.base;
  cfg.seed = seed;
  const std::uint64_t query_seed = derive_seed(seed, "query");
  if (opts.algorithm == Algorithm::Mdsa) {
    const MdsaRun run = run_mdsa(cfg);
    return measure_recovery(run.nodes, ratio, query_seed);
  }
  const Dsa1Result run = run_dsa1(cfg);
  return measure_recovery(run.nodes, ratio, query_seed);
}

}  // namespace

SweepCurve sweep(const SweepOptions& opts) {
  if (opts.base.n < 10) throw ParameterError("sweep needs n >= 10");
  if (opts.trials == 0) throw ParameterError("sweep needs at least one trial");
  validate(opts.base);
  const std::vector<double> ratios = query_ratios(opts.step);

  // Every (ratio, trial) cell is independent; results land in a fixed slot
  // so aggregation does not depend on completion order.
  const std::size_t cells = ratios.size() * opts.trials;
  std::vector<std::optional<double>> values(cells);
  parallel_for(cells, opts.jobs, [&](std::size_t cell) {
    const double ratio = ratios[cell / opts.trials];
    const std::size_t trial = cell % opts.trials;
    try {
      values[cell] = run_trial(opts, ratio, trial_seed(opts.base_seed, ratio, trial));
    } catch (const InsufficientNodesError&) {
      values[cell].reset();
    }
  });

  SweepCurve curve;
  curve.algorithm = opts.algorithm;
  curve.n = opts.base.n;
  curve.buffer = effective_capacity(opts.base);
  for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
    std::vector<double> ok;
    for (std::size_t t = 0; t < opts.trials; ++t) {
      if (const auto& v = values[ri * opts.trials + t]) ok.push_back(*v);
    }
    curve.skipped_trials += opts.trials - ok.size();

    SweepPoint p;
    p.query_ratio = ratios[ri];
    p.trials = ok.size();
    if (!ok.empty()) {
      double sum = 0.0;
      for (double v : ok) sum += v;
      p.mean = sum / static_cast<double>(ok.size());
      if (ok.size() > 1) {
        double ss = 0.0;
        for (double v : ok) ss += (v - p.mean) * (v - p.mean);
        p.stddev = std::sqrt(ss / static_cast<double>(ok.size() - 1));
      }
    }
    curve.points.push_back(p);
  }
  return curve;
}

const ComparisonRow& ComparisonTable::row(Algorithm a, std::size_t buffer) const {
  for (const auto& r : rows) {
    if (r.algorithm == a && r.buffer == buffer) return r;
  }
  throw ParameterError("no table row for " + std::string(to_string(a)) + " M=" +
                       std::to_string(buffer));
}

ComparisonTable table1(const Table1Options& opts) {
  if (opts.replicates == 0) throw ParameterError("table1 needs at least one replicate");
  if (opts.buffers.empty()) throw ParameterError("table1 needs at least one buffer size");
  SimConfig cfg = opts.base;
  cfg.n = opts.n;
  cfg.failure_fraction = 0.0;
  validate(cfg);

  ComparisonTable table;
  table.n = opts.n;
  table.replicates = opts.replicates;
  for (Algorithm a : {Algorithm::Dsa1, Algorithm::Mdsa}) {
    for (std::size_t m : opts.buffers) {
      if (m == 0) throw ParameterError("buffer sizes must be positive");
      table.rows.push_back({a, opts.n, m, 0.0, 0.0});
    }
  }

  for (std::size_t rep = 0; rep < opts.replicates; ++rep) {
    const std::uint64_t rep_seed = derive_seed(derive_seed(opts.base_seed, "table1"), rep);
    const Topology topology =
        generate_connected_topology(opts.n, effective_radius(cfg), derive_seed(rep_seed, "topology"),
                                    cfg.max_topology_attempts)
            .topology;
    for (std::size_t mi = 0; mi < opts.buffers.size(); ++mi) {
      cfg.buffer_capacity = opts.buffers[mi];
      cfg.seed = derive_seed(rep_seed, opts.buffers[mi]);
      const SimReport dsa1 = run_dsa1(topology, cfg).report;
      const SimReport mdsa = run_mdsa(topology, cfg).report;

      ComparisonRow& d = table.rows[mi];
      ComparisonRow& m = table.rows[opts.buffers.size() + mi];
      d.data_messages += static_cast<double>(dsa1.data_messages);
      d.percent_unused += dsa1.percent_unused;
      m.data_messages += static_cast<double>(mdsa.data_messages);
      m.percent_unused += mdsa.percent_unused;
    }
  }
  for (ComparisonRow& r : table.rows) {
    r.data_messages /= static_cast<double>(opts.replicates);
    r.percent_unused /= static_cast<double>(opts.replicates);
  }
  return table;
}

}  // namespace mdsa
