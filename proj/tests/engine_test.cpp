#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "mdsa/engine.hpp"
#include "mdsa/error.hpp"
#include "mdsa/rng.hpp"
#include "oracles.hpp"

namespace mdsa {
namespace {

SimConfig config(std::size_t n, std::uint64_t seed) {
  SimConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  return cfg;
}

TEST(RunMdsa, SingleNode) {
  const MdsaRun run = run_mdsa(config(1, 3));
  EXPECT_EQ(run.report.data_messages, 0u);
  EXPECT_EQ(run.report.rounds_to_quiescence, 1u);
  ASSERT_EQ(run.nodes[0].buffer.size(), 1u);
  EXPECT_EQ(run.nodes[0].buffer.slots()[0].source_id, 0u);
}

TEST(RunMdsa, TwoNodeClique) {
  SimConfig cfg = config(2, 4);
  cfg.radius = std::sqrt(2.0);
  cfg.buffer_capacity = 2;
  const MdsaRun run = run_mdsa(cfg);
  EXPECT_EQ(run.report.flood_messages, 2u);
  for (const NodeState& node : run.nodes) {
    EXPECT_EQ(node.hop_budget, 2u);
    EXPECT_TRUE(node.buffer.contains(0));
    EXPECT_TRUE(node.buffer.contains(1));
  }
  // Each node's flood copy can travel at most hop_budget more links.
  EXPECT_LE(run.report.unicast_messages, 2u * 1u * 2u);
  EXPECT_EQ(run.report.init_messages, 4u);
}

TEST(RunMdsa, Seeded15MatchesIndependentReplay) {
  SimConfig cfg = config(15, 7);
  cfg.radius = 0.35;
  cfg.buffer_capacity = 5;
  const MdsaRun run = run_mdsa(cfg);
  const Topology& t = run.topology;

  std::uint64_t upper = 0;
  for (NodeId v = 0; v < t.size(); ++v) upper += t.degree(v) * (1 + run.nodes[v].hop_budget);
  EXPECT_GE(run.report.data_messages, t.degree_sum());
  EXPECT_LE(run.report.data_messages, upper);

  const auto replay = oracle::replay_mdsa(t, 5, false, cfg.seed);
  EXPECT_EQ(run.report.flood_messages, replay.flood);
  EXPECT_EQ(run.report.unicast_messages, replay.unicast);
  EXPECT_EQ(run.report.rounds_to_quiescence, replay.rounds);
  for (NodeId v = 0; v < t.size(); ++v) {
    std::vector<NodeId> ids;
    for (const Packet& p : run.nodes[v].buffer.slots()) ids.push_back(p.source_id);
    EXPECT_EQ(ids, replay.stored[v]) << "node " << v;
  }
}

// Property sweep over random configurations.
TEST(RunMdsa, InvariantsOnRandomConfigs) {
  Rng meta(99);
  for (int i = 0; i < 60; ++i) {
    SimConfig cfg = config(2 + meta.below(60), meta.next_u64());
    cfg.buffer_capacity = 1 + meta.below(8);
    cfg.forward_policy = meta.bernoulli(0.5) ? ForwardPolicy::Drop : ForwardPolicy::Forward;

    std::vector<TraceRecord> trace;
    const MdsaRun run = run_mdsa(cfg, [&](const TraceRecord& r) { trace.push_back(r); });
    const Topology& t = run.topology;
    const SimReport& rep = run.report;

    // Independent replay of the same event order.
    const auto replay = oracle::replay_mdsa(t, *cfg.buffer_capacity,
                                            cfg.forward_policy == ForwardPolicy::Forward, cfg.seed);
    ASSERT_EQ(rep.unicast_messages, replay.unicast);
    ASSERT_EQ(rep.rounds_to_quiescence, replay.rounds);

    std::uint32_t max_budget = 0;
    std::uint64_t bound = 0;
    std::map<NodeId, std::uint64_t> unicasts_per_source;
    for (const NodeState& node : run.nodes) {
      max_budget = std::max(max_budget, node.hop_budget);
      bound += node.neighbor_ids.size() * (1 + node.hop_budget);
      ASSERT_LE(node.buffer.size(), node.buffer.capacity());
      ASSERT_EQ(node.buffer.slots()[0].source_id, node.id);
      std::set<NodeId> ids;
      for (const Packet& p : node.buffer.slots()) ASSERT_TRUE(ids.insert(p.source_id).second);
    }
    ASSERT_EQ(rep.flood_messages, t.degree_sum());
    ASSERT_LE(rep.data_messages, bound);
    ASSERT_LE(rep.rounds_to_quiescence, std::size_t{max_budget} + 2);
    ASSERT_EQ(rep.messages_sent, rep.messages_received);
    ASSERT_DOUBLE_EQ(rep.energy_total, static_cast<double>(rep.messages_sent) * cfg.energy_tx +
                                           static_cast<double>(rep.messages_received) * cfg.energy_rx);
    ASSERT_EQ(trace.size(), rep.data_messages);

    for (const TraceRecord& r : trace) {
      const std::uint32_t budget = run.nodes[r.source].hop_budget;
      if (r.kind == MessageKind::Flood) {
        ASSERT_EQ(r.hops, budget);
      } else {
        ASSERT_LT(r.hops, budget);
        ++unicasts_per_source[r.source];
      }
    }
    for (const auto& [src, count] : unicasts_per_source) {
      ASSERT_LE(count, t.degree(src) * std::uint64_t{run.nodes[src].hop_budget});
    }

    std::vector<NodeId> all(t.size());
    std::iota(all.begin(), all.end(), NodeId{0});
    ASSERT_EQ(collect(all, run.nodes).size(), t.size());

    const MdsaRun again = run_mdsa(cfg);
    ASSERT_EQ(again.report, rep);
  }
}

TEST(RunMdsa, TraceFormat) {
  SimConfig cfg = config(2, 4);
  cfg.radius = std::sqrt(2.0);
  std::vector<std::string> lines;
  run_mdsa(cfg, [&](const TraceRecord& r) { lines.push_back(format_trace(r)); });
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines[0], "round=1 kind=Flood from=0 to=1 src=0 hops=2");
}

TEST(Failures, FloorOfFraction) {
  EXPECT_TRUE(choose_failures(10, 0.0, 1).empty());
  EXPECT_EQ(choose_failures(10, 0.5, 1).size(), 5u);
  EXPECT_EQ(choose_failures(100, 0.29, 1).size(), 29u);
  EXPECT_EQ(choose_failures(10, 0.5, 1), choose_failures(10, 0.5, 1));
  EXPECT_THROW(choose_failures(10, 1.0, 1), ParameterError);
  EXPECT_THROW(choose_failures(10, -0.1, 1), ParameterError);

  MdsaRun run = run_mdsa(config(10, 2));
  apply_failures(run.nodes, 0.5, 8);
  std::size_t dead = 0;
  for (const auto& node : run.nodes) dead += !node.alive;
  EXPECT_EQ(dead, 5u);
}

TEST(Failures, AppliedFromConfig) {
  SimConfig cfg = config(20, 3);
  cfg.failure_fraction = 0.25;
  const MdsaRun run = run_mdsa(cfg);
  std::size_t dead = 0;
  for (const auto& node : run.nodes) dead += !node.alive;
  EXPECT_EQ(dead, 5u);
  EXPECT_THROW(measure_recovery(run.nodes, 0.9, 1), InsufficientNodesError);
  EXPECT_GT(measure_recovery(run.nodes, 0.75, 1), 0.0);
}

TEST(MeasureRecovery, FullQueryRecoversEverything) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const MdsaRun run = run_mdsa(config(30, seed));
    EXPECT_DOUBLE_EQ(measure_recovery(run.nodes, 1.0, seed), 100.0);
  }
}

TEST(MeasureRecovery, SingleIsolatedNode) {
  // All nodes isolated: each holds only its own packet.
  const Topology t({{0.05, 0.05}, {0.25, 0.05}, {0.45, 0.05}, {0.65, 0.05}, {0.85, 0.05},
                    {0.05, 0.75}, {0.25, 0.75}, {0.45, 0.75}, {0.65, 0.75}, {0.85, 0.75}},
                   0.1);
  SimConfig cfg = config(10, 1);
  const MdsaRun run = run_mdsa(t, cfg);
  EXPECT_DOUBLE_EQ(measure_recovery(run.nodes, 0.1, 5), 10.0);
}

TEST(MeasureRecovery, MatchesBufferUnion) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimConfig cfg = config(10, seed);
    cfg.buffer_capacity = 2;
    const MdsaRun run = run_mdsa(cfg);
    for (double ratio : {0.1, 0.3, 0.5, 0.8}) {
      std::vector<bool> alive(10, true);
      const auto query = sample_query_set(alive, ratio, 1234);
      ASSERT_EQ(query.size(), static_cast<std::size_t>(std::llround(ratio * 10)));
      std::set<NodeId> seen;
      for (NodeId q : query) {
        for (const Packet& p : run.nodes[q].buffer.slots()) seen.insert(p.source_id);
      }
      EXPECT_DOUBLE_EQ(measure_recovery(run.nodes, ratio, 1234), 10.0 * static_cast<double>(seen.size()));
    }
  }
}

TEST(MeasureRecovery, Errors) {
  const MdsaRun run = run_mdsa(config(10, 1));
  EXPECT_THROW(measure_recovery(run.nodes, 0.0, 1), ParameterError);
  EXPECT_THROW(measure_recovery(run.nodes, 1.2, 1), ParameterError);
}

TEST(MeasureRecovery, Dsa1FullQueryDecodesWhatTheSymbolsAllow) {
  SimConfig cfg = config(30, 6);
  cfg.buffer_capacity = 6;
  const Dsa1Result r = run_dsa1(cfg);
  std::vector<EncodedSymbol> all;
  for (const auto& node : r.nodes) {
    for (auto& s : node.symbols()) all.push_back(s);
  }
  const double expected = 100.0 * static_cast<double>(lt_decode(all, 30).size()) / 30.0;
  EXPECT_DOUBLE_EQ(measure_recovery(r.nodes, 1.0, 1), expected);
}

TEST(SimConfig, AutoCapacity) {
  const std::map<std::size_t, std::size_t> expected{{50, 5},   {100, 10}, {150, 15},
                                                    {200, 20}, {400, 40}, {600, 60},
                                                    {1, 1},    {4, 1},    {15, 2}};
  for (const auto& [n, m] : expected) EXPECT_EQ(auto_buffer_capacity(n), m) << n;
}

TEST(SimConfig, ParseKeyValueText) {
  std::istringstream in(
      "# comment\n"
      "n = 40\n"
      "radius = 0.3\n"
      "buffer_capacity = auto\n"
      "forward_policy = forward   # trailing comment\n"
      "failure_fraction = 0.1\n"
      "seed = 77\n"
      "energy_tx = 2\n"
      "energy_rx = 0.25\n"
      "\n"
      "payload_length = 8\n");
  SimConfig cfg;
  apply_config_text(cfg, in);
  EXPECT_EQ(cfg.n, 40u);
  EXPECT_EQ(cfg.radius, 0.3);
  EXPECT_FALSE(cfg.buffer_capacity);
  EXPECT_EQ(effective_capacity(cfg), 4u);
  EXPECT_EQ(cfg.forward_policy, ForwardPolicy::Forward);
  EXPECT_EQ(cfg.failure_fraction, 0.1);
  EXPECT_EQ(cfg.seed, 77u);
  EXPECT_EQ(cfg.energy_tx, 2.0);
  EXPECT_EQ(cfg.energy_rx, 0.25);
  EXPECT_EQ(cfg.payload_length, 8u);
  validate(cfg);

  std::istringstream round_trip(to_config_text(cfg));
  SimConfig back;
  apply_config_text(back, round_trip);
  EXPECT_EQ(to_config_text(back), to_config_text(cfg));
}

TEST(SimConfig, Errors) {
  SimConfig cfg;
  std::istringstream unknown("colour = blue\n");
  EXPECT_THROW(apply_config_text(cfg, unknown), ConfigError);
  std::istringstream no_eq("n 5\n");
  EXPECT_THROW(apply_config_text(cfg, no_eq), ConfigError);
  std::istringstream bad_num("n = five\n");
  EXPECT_THROW(apply_config_text(cfg, bad_num), ConfigError);
  std::istringstream bad_policy("forward_policy = sometimes\n");
  EXPECT_THROW(apply_config_text(cfg, bad_policy), ConfigError);

  SimConfig c2;
  c2.failure_fraction = 1.0;
  EXPECT_THROW(validate(c2), ConfigError);
  c2 = {};
  c2.buffer_capacity = 0;
  EXPECT_THROW(validate(c2), ConfigError);
  c2 = {};
  c2.n = 0;
  EXPECT_THROW(validate(c2), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/mdsa.conf"), IoError);
}

}  // namespace
}  // namespace mdsa
