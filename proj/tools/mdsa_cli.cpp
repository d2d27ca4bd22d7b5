// mdsa: run MDSA / DSA-I simulations, decoding sweeps and the buffer/message
// comparison from the command line.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 simulation failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdsa/csv.hpp"
#include "mdsa/engine.hpp"
#include "mdsa/error.hpp"
#include "mdsa/harness.hpp"
#include "mdsa/plot.hpp"
#include "mdsa/sim_config.hpp"
#include "mdsa/topology.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitSimulation = 3;

const std::vector<std::size_t> kPresetSizes{50, 100, 150, 200, 400, 600};

// Flags shared by every subcommand. Optional members stay unset unless given
// on the command line, so they only override the config file when present.
struct CommonFlags {
  std::string config_path;
  std::optional<std::size_t> n;
  std::optional<double> radius;
  std::optional<std::string> buffer;
  std::optional<std::string> policy;
  std::optional<double> failures;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonFlags& f, bool seed_required = false) {
  cmd->add_option("--config", f.config_path, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--n", f.n, "number of nodes");
  cmd->add_option("--radius", f.radius, "communication radius in the unit square (default: preset)");
  cmd->add_option("--buffer", f.buffer, "buffer slots per node, or 'auto' (10% of n)");
  cmd->add_option("--policy", f.policy, "full-buffer policy: drop|forward");
  cmd->add_option("--failures", f.failures, "fraction of nodes failing after dissemination");
  auto* seed = cmd->add_option("--seed", f.seed, "master seed");
  if (seed_required) seed->required();
  cmd->add_option("--out", f.out_dir, "output directory");
}

mdsa::SimConfig build_config(const CommonFlags& f) {
  mdsa::SimConfig cfg;
  if (!f.config_path.empty()) cfg = mdsa::load_config(f.config_path, cfg);
  if (f.n) cfg.n = *f.n;
  if (f.radius) cfg.radius = *f.radius;
  if (f.buffer) mdsa::apply_config_entry(cfg, "buffer_capacity", *f.buffer);
  if (f.policy) mdsa::apply_config_entry(cfg, "forward_policy", *f.policy);
  if (f.failures) cfg.failure_fraction = *f.failures;
  if (f.seed) cfg.seed = *f.seed;
  mdsa::validate(cfg);
  return cfg;
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw mdsa::IoError("cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

std::string file_stem(const char* kind, mdsa::Algorithm a, std::size_t n) {
  return std::string(kind) + "_" + std::string(mdsa::to_string(a)) + "_n" + std::to_string(n);
}

void print_report(const mdsa::SimReport& r) {
  std::cout << "algorithm          " << mdsa::to_string(r.algorithm) << '\n'
            << "nodes              " << r.n << '\n'
            << "buffer slots       " << r.buffer_capacity << '\n'
            << "policy             " << mdsa::to_string(r.forward_policy) << '\n'
            << "data messages      " << r.data_messages << " (flood " << r.flood_messages
            << ", unicast " << r.unicast_messages << ")\n"
            << "init messages      " << r.init_messages << '\n'
            << "energy             " << mdsa::format_number(r.energy_total) << '\n'
            << "unused buffer      " << mdsa::format_number(r.percent_unused) << " %\n"
            << "rounds             " << r.rounds_to_quiescence << '\n'
            << "topology retries   " << r.topology_retries << '\n';
}

void print_curve(const mdsa::SweepCurve& c) {
  std::cout << mdsa::curve_label(c) << '\n';
  for (const auto& p : c.points) {
    std::cout << "  ratio " << mdsa::format_number(p.query_ratio) << "  mean "
              << mdsa::format_number(p.mean) << "  stddev " << mdsa::format_number(p.stddev)
              << "  trials " << p.trials << '\n';
  }
  if (c.skipped_trials) std::cout << "  skipped trials: " << c.skipped_trials << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MDSA distributed storage simulator"};
  app.require_subcommand(1);

  // run
  CommonFlags run_flags;
  std::string run_algorithm = "mdsa";
  std::string dump_path, trace_path;
  auto* run = app.add_subcommand("run", "single simulation and report");
  add_common(run, run_flags);
  run->add_option("--algorithm", run_algorithm, "mdsa|dsa1");
  run->add_option("--dump-topology", dump_path, "also write the topology text to this file");
  run->add_option("--trace", trace_path, "write the message trace (mdsa only)");

  // sweep
  CommonFlags sweep_flags;
  std::string sweep_algorithm = "mdsa";
  std::string preset;
  std::size_t sweep_trials = 30, sweep_jobs = 1;
  double sweep_step = 0.1;
  auto* sweep = app.add_subcommand("sweep", "recovery vs decoding ratio, Monte Carlo");
  add_common(sweep, sweep_flags, /*seed_required=*/true);
  sweep->add_option("--algorithm", sweep_algorithm, "mdsa|dsa1");
  sweep->add_option("--trials", sweep_trials, "trials per ratio")->check(CLI::PositiveNumber);
  sweep->add_option("--step", sweep_step, "decoding ratio step");
  sweep->add_option("--jobs", sweep_jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--preset", preset, "paper-figs: n in {50,100,150,200,400,600}, auto buffers")
      ->check(CLI::IsMember({"paper-figs"}));

  // table1
  CommonFlags table_flags;
  std::size_t table_trials = 20;
  auto* table = app.add_subcommand("table1", "messages and unused buffer, both algorithms, M=5..8");
  add_common(table, table_flags);
  table->add_option("--trials", table_trials, "topologies averaged per row")
      ->check(CLI::PositiveNumber);

  // compare
  CommonFlags cmp_flags;
  std::size_t cmp_trials = 30, cmp_jobs = 1;
  double cmp_step = 0.1;
  auto* compare = app.add_subcommand("compare", "sweep both algorithms into one plot");
  add_common(compare, cmp_flags);
  compare->add_option("--trials", cmp_trials, "trials per ratio")->check(CLI::PositiveNumber);
  compare->add_option("--step", cmp_step, "decoding ratio step");
  compare->add_option("--jobs", cmp_jobs, "worker threads")->check(CLI::PositiveNumber);

  // dump-topology
  CommonFlags dump_flags;
  std::string dump_file;
  auto* dump = app.add_subcommand("dump-topology", "write the connected topology a run would use");
  add_common(dump, dump_flags);
  dump->add_option("--file", dump_file, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      const mdsa::SimConfig cfg = build_config(run_flags);
      const mdsa::Algorithm algorithm = mdsa::parse_algorithm(run_algorithm);
      const fs::path out = prepare_out_dir(run_flags.out_dir);

      std::ofstream trace_out;
      mdsa::TraceSink sink;
      if (!trace_path.empty()) {
        trace_out.open(trace_path, std::ios::binary | std::ios::trunc);
        if (!trace_out) throw mdsa::IoError("cannot open " + trace_path + " for writing");
        sink = [&](const mdsa::TraceRecord& r) { trace_out << mdsa::format_trace(r) << '\n'; };
      }

      const mdsa::ConnectedTopology ct = mdsa::topology_for(cfg);
      mdsa::SimReport report;
      if (algorithm == mdsa::Algorithm::Mdsa) {
        report = mdsa::run_mdsa(ct.topology, cfg, sink).report;
      } else {
        report = mdsa::run_dsa1(ct.topology, cfg).report;
      }
      report.topology_retries = ct.retries;
      if (!dump_path.empty()) {
        std::ofstream f(dump_path, std::ios::binary | std::ios::trunc);
        if (!f) throw mdsa::IoError("cannot open " + dump_path + " for writing");
        mdsa::write_topology(f, ct.topology);
      }
      const fs::path csv = out / (file_stem("run", algorithm, cfg.n) + ".csv");
      mdsa::save_reports_csv(csv, std::span(&report, 1));
      print_report(report);
      std::cout << "wrote " << csv.string() << '\n';
    } else if (*sweep) {
      const mdsa::SimConfig cfg = build_config(sweep_flags);
      const mdsa::Algorithm algorithm = mdsa::parse_algorithm(sweep_algorithm);
      const fs::path out = prepare_out_dir(sweep_flags.out_dir);

      std::vector<std::size_t> sizes{cfg.n};
      if (preset == "paper-figs") sizes = kPresetSizes;

      std::vector<mdsa::SweepCurve> all;
      for (std::size_t n : sizes) {
        mdsa::SweepOptions opts;
        opts.algorithm = algorithm;
        opts.base = cfg;
        opts.base.n = n;
        if (!preset.empty()) opts.base.buffer_capacity.reset();
        opts.trials = sweep_trials;
        opts.step = sweep_step;
        opts.base_seed = cfg.seed;
        opts.jobs = sweep_jobs;
        const mdsa::SweepCurve curve = mdsa::sweep(opts);
        print_curve(curve);
        const std::string stem = file_stem("sweep", algorithm, n);
        mdsa::save_curves_csv(out / (stem + ".csv"), std::span(&curve, 1));
        mdsa::save_svg_plot(out / (stem + ".svg"), std::span(&curve, 1),
                            "n=" + std::to_string(n) + ", buffer=" + std::to_string(curve.buffer));
        all.push_back(curve);
      }
      if (all.size() > 1) {
        mdsa::save_curves_csv(out / "paper_figs.csv", all);
        mdsa::save_svg_plot(out / "paper_figs.svg", all, "decoding curves");
      }
    } else if (*table) {
      mdsa::SimConfig cfg = build_config(table_flags);
      const fs::path out = prepare_out_dir(table_flags.out_dir);
      mdsa::Table1Options opts;
      opts.n = table_flags.n.value_or(15);
      cfg.n = opts.n;
      if (!table_flags.radius) cfg.radius.reset();
      opts.replicates = table_trials;
      opts.base_seed = cfg.seed;
      opts.base = cfg;
      const mdsa::ComparisonTable t = mdsa::table1(opts);

      std::cout << "n=" << t.n << ", " << t.replicates << " topologies, policy "
                << mdsa::to_string(cfg.forward_policy) << '\n';
      std::cout << "algorithm  M  data_messages  percent_unused\n";
      for (const auto& r : t.rows) {
        std::cout << mdsa::to_string(r.algorithm) << "       " << r.buffer << "  "
                  << mdsa::format_number(r.data_messages) << "  "
                  << mdsa::format_number(r.percent_unused) << '\n';
      }
      const fs::path csv = out / "table1.csv";
      mdsa::save_table_csv(csv, t);
      std::cout << "wrote " << csv.string() << '\n';
    } else if (*compare) {
      const mdsa::SimConfig cfg = build_config(cmp_flags);
      const fs::path out = prepare_out_dir(cmp_flags.out_dir);
      std::vector<mdsa::SweepCurve> curves;
      for (mdsa::Algorithm a : {mdsa::Algorithm::Mdsa, mdsa::Algorithm::Dsa1}) {
        mdsa::SweepOptions opts;
        opts.algorithm = a;
        opts.base = cfg;
        opts.trials = cmp_trials;
        opts.step = cmp_step;
        opts.base_seed = cfg.seed;
        opts.jobs = cmp_jobs;
        curves.push_back(mdsa::sweep(opts));
        print_curve(curves.back());
      }
      const std::string stem = "compare_n" + std::to_string(cfg.n);
      mdsa::save_curves_csv(out / (stem + ".csv"), curves);
      mdsa::save_svg_plot(out / (stem + ".svg"), curves, "MDSA vs DSA-I, n=" + std::to_string(cfg.n));
    } else if (*dump) {
      const mdsa::SimConfig cfg = build_config(dump_flags);
      const mdsa::ConnectedTopology ct = mdsa::topology_for(cfg);
      if (dump_file.empty()) {
        mdsa::write_topology(std::cout, ct.topology);
      } else {
        std::ofstream f(dump_file, std::ios::binary | std::ios::trunc);
        if (!f) throw mdsa::IoError("cannot open " + dump_file + " for writing");
        mdsa::write_topology(f, ct.topology);
      }
    }
  } catch (const mdsa::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const mdsa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mdsa::ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mdsa::Error& e) {
    std::cerr << "simulation failed: " << e.what() << '\n';
    return kExitSimulation;
  }
  return 0;
}
