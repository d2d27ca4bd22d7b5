#include "mdsa/lt_code.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "mdsa/error.hpp"

namespace mdsa {

DegreeDistribution::DegreeDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw ParameterError("degree distribution needs k >= 1");
  double sum = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw ParameterError("degree probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ParameterError("degree probabilities must sum to 1, got " + std::to_string(sum));
  }
  cumulative_.resize(probabilities_.size());
  std::partial_sum(probabilities_.begin(), probabilities_.end(), cumulative_.begin());
}

double DegreeDistribution::probability(std::size_t degree) const {
  if (degree == 0 || degree > k()) return 0.0;
  return probabilities_[degree - 1];
}

double DegreeDistribution::mean() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    m += static_cast<double>(i + 1) * probabilities_[i];
  }
  return m;
}

std::size_t DegreeDistribution::sample(Rng& rng) const {
  const double u = rng.uniform01() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(idx, k() - 1) + 1;
}

DegreeDistribution ideal_soliton(std::size_t k) {
  if (k == 0) throw ParameterError("ideal soliton needs k >= 1");
  std::vector<double> rho(k);
  rho[0] = 1.0 / static_cast<double>(k);
  for (std::size_t i = 2; i <= k; ++i) {
    rho[i - 1] = 1.0 / (static_cast<double>(i) * static_cast<double>(i - 1));
  }
  // The closed form telescopes to exactly 1; fold rounding into degree 1.
  const double sum = std::accumulate(rho.begin(), rho.end(), 0.0);
  rho[0] += 1.0 - sum;
  return DegreeDistribution(std::move(rho));
}

DegreeDistribution robust_soliton(std::size_t k, double c, double delta) {
  if (k == 0) throw ParameterError("robust soliton needs k >= 1");
  if (!(c > 0.0)) throw ParameterError("robust soliton needs c > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("robust soliton needs delta in (0,1)");

  const double kd = static_cast<double>(k);
  const double R = c * std::log(kd / delta) * std::sqrt(kd);
  const auto spike = static_cast<std::size_t>(
      std::clamp(std::floor(kd / R), 1.0, kd));

  std::vector<double> mu = ideal_soliton(k).probabilities();
  for (std::size_t i = 1; i < spike; ++i) mu[i - 1] += R / (static_cast<double>(i) * kd);
  mu[spike - 1] += std::max(0.0, R * std::log(R / delta) / kd);

  const double z = std::accumulate(mu.begin(), mu.end(), 0.0);
  for (double& m : mu) m /= z;
  const double sum = std::accumulate(mu.begin(), mu.end(), 0.0);
  mu[spike - 1] += 1.0 - sum;
  return DegreeDistribution(std::move(mu));
}

std::string to_string(const EncodedSymbol& s) {
  std::string out = "ids={";
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.ids[i]);
  }
  out += "} len=" + std::to_string(s.payload.size());
  return out;
}

void xor_into(Bytes& acc, const Bytes& other) {
  if (acc.size() != other.size()) throw ParameterError("XOR of payloads with unequal length");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= other[i];
}

EncodedSymbol make_symbol(std::vector<NodeId> ids, std::span<const Bytes> sources) {
  if (ids.empty()) throw ParameterError("encoded symbol needs at least one source");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.back() >= sources.size()) throw ParameterError("symbol names an unknown source");

  EncodedSymbol s{std::move(ids), Bytes(sources[0].size(), 0)};
  for (NodeId id : s.ids) xor_into(s.payload, sources[id]);
  return s;
}

EncodedSymbol lt_encode(std::span<const Bytes> sources, const DegreeDistribution& dist, Rng& rng) {
  if (sources.empty()) throw ParameterError("no sources to encode");
  const std::size_t k = sources.size();
  const std::size_t degree = std::min(dist.sample(rng), k);

  // Partial Fisher-Yates over the source indices.
  std::vector<NodeId> pool(k);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  for (std::size_t i = 0; i < degree; ++i) {
    const std::size_t j = i + rng.below(k - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(degree);
  return make_symbol(std::move(pool), sources);
}

std::map<NodeId, Bytes> lt_decode(std::span<const EncodedSymbol> symbols, std::size_t k) {
  if (k == 0) throw ParameterError("decoder needs k >= 1");
  if (symbols.empty()) return {};

  const std::size_t len = symbols.front().payload.size();
  std::map<std::vector<NodeId>, const Bytes*> seen_sets;
  std::vector<std::vector<NodeId>> ids(symbols.size());
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    const EncodedSymbol& sym = symbols[s];
    if (sym.ids.empty()) throw ParameterError("encoded symbol with empty id set");
    if (sym.payload.size() != len) throw ParameterError("encoded symbols with unequal payload length");
    ids[s] = sym.ids;
    std::sort(ids[s].begin(), ids[s].end());
    ids[s].erase(std::unique(ids[s].begin(), ids[s].end()), ids[s].end());
    if (ids[s].back() >= k) throw ParameterError("encoded symbol names source outside [0, k)");

    auto [it, inserted] = seen_sets.try_emplace(ids[s], &sym.payload);
    if (!inserted && *it->second != sym.payload) {
      throw DataCorruptionError("symbols over " + to_string(sym) + " carry different payloads");
    }
  }

  std::vector<Bytes> residual(symbols.size());
  std::vector<std::size_t> unknown(symbols.size());
  std::vector<std::vector<std::size_t>> covering(k);
  std::deque<std::size_t> ready;
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    residual[s] = symbols[s].payload;
    unknown[s] = ids[s].size();
    for (NodeId id : ids[s]) covering[id].push_back(s);
    if (unknown[s] == 1) ready.push_back(s);
  }

  std::vector<bool> known(k, false);
  std::map<NodeId, Bytes> recovered;
  const auto require_zero = [&](std::size_t s) {
    if (std::any_of(residual[s].begin(), residual[s].end(), [](std::uint8_t b) { return b != 0; })) {
      throw DataCorruptionError("symbol " + to_string(symbols[s]) +
                                " is inconsistent with the recovered sources");
    }
  };

  while (!ready.empty()) {
    const std::size_t s = ready.front();
    ready.pop_front();
    if (unknown[s] != 1) continue;

    const auto id_it = std::find_if(ids[s].begin(), ids[s].end(),
                                    [&](NodeId id) { return !known[id]; });
    const NodeId id = *id_it;
    known[id] = true;
    const Bytes value = residual[s];
    recovered.emplace(id, value);

    for (std::size_t t : covering[id]) {
      xor_into(residual[t], value);
      if (--unknown[t] == 1) {
        ready.push_back(t);
      } else if (unknown[t] == 0) {
        require_zero(t);
      }
    }
  }
  return recovered;
}

}  // namespace mdsa
