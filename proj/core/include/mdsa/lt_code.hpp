#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mdsa/packet.hpp"
#include "mdsa/rng.hpp"

namespace mdsa {

// Probability vector over degrees 1..k. probabilities()[d - 1] is P(degree = d).
class DegreeDistribution {
 public:
  // Validates non-negativity and unit sum (1e-12); throws ParameterError.
  explicit DegreeDistribution(std::vector<double> probabilities);

  std::size_t k() const noexcept { return probabilities_.size(); }
  const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  double probability(std::size_t degree) const;
  double mean() const noexcept;

  // Inverse-CDF draw in [1, k].
  std::size_t sample(Rng& rng) const;

 private:
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

// rho(1) = 1/k, rho(i) = 1/(i(i-1)).
DegreeDistribution ideal_soliton(std::size_t k);

// Ideal soliton plus the tau correction with its spike at k/R,
// R = c ln(k/delta) sqrt(k), renormalized. When R <= delta the spike term
// would be negative and is dropped; the spike index is clamped to [1, k].
DegreeDistribution robust_soliton(std::size_t k, double c = 0.1, double delta = 0.5);

// XOR of the source payloads named by ids. ids are kept sorted and unique.
struct EncodedSymbol {
  std::vector<NodeId> ids;
  Bytes payload;

  friend bool operator==(const EncodedSymbol&, const EncodedSymbol&) = default;
};

// "ids={a,b,...} len=<bytes>"
std::string to_string(const EncodedSymbol& s);

void xor_into(Bytes& acc, const Bytes& other);

// Builds the symbol over the given subset of `sources` (indexed by NodeId).
EncodedSymbol make_symbol(std::vector<NodeId> ids, std::span<const Bytes> sources);

// Fresh symbol: degree from dist, that many distinct sources chosen uniformly.
EncodedSymbol lt_encode(std::span<const Bytes> sources, const DegreeDistribution& dist, Rng& rng);

// Peeling decoder. Repeatedly releases degree-one symbols and XORs each
// recovered source out of the symbols that cover it, until no degree-one
// symbol remains. Returns every source it could recover.
//
// Throws ParameterError for malformed symbols (empty id set, id >= k,
// unequal payload lengths) and DataCorruptionError when symbols contradict
// each other (same id set with different payloads, or a fully peeled symbol
// that does not reduce to zero).
std::map<NodeId, Bytes> lt_decode(std::span<const EncodedSymbol> symbols, std::size_t k);

}  // namespace mdsa
