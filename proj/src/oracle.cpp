#include "dsc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "dsc/error.hpp"

namespace dsc::oracle {
namespace {

// One entry per stub: 1 if the stub belongs to a member node.
std::vector<std::uint8_t> stub_flags(std::span<const std::size_t> degrees,
                                     std::span<const std::uint8_t> in_set) {
  if (degrees.size() != in_set.size()) {
    throw PreconditionError("degree and membership sequences differ in length");
  }
  std::vector<std::uint8_t> stubs;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    stubs.insert(stubs.end(), degrees[i], in_set[i] ? 1 : 0);
  }
  if (stubs.size() % 2 != 0) throw PreconditionError("degree sum is odd");
  return stubs;
}

class Matcher {
 public:
  explicit Matcher(std::vector<std::uint8_t> stubs)
      : stubs_(std::move(stubs)), used_(stubs_.size(), 0), counts_(stubs_.size() / 2 + 1, 0) {}

  std::vector<std::uint64_t> run() {
    recurse(0, 0);
    return counts_;
  }

 private:
  void recurse(std::size_t from, std::size_t internal) {
    while (from < stubs_.size() && used_[from]) ++from;
    if (from == stubs_.size()) {
      ++counts_[internal];
      return;
    }
    used_[from] = 1;
    for (std::size_t j = from + 1; j < stubs_.size(); ++j) {
      if (used_[j]) continue;
      used_[j] = 1;
      recurse(from + 1, internal + (stubs_[from] & stubs_[j]));
      used_[j] = 0;
    }
    used_[from] = 0;
  }

  std::vector<std::uint8_t> stubs_;
  std::vector<std::uint8_t> used_;
  std::vector<std::uint64_t> counts_;
};

std::vector<std::size_t> degrees_of(const Graph& g) {
  std::vector<std::size_t> d(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) d[v] = g.degree(v);
  return d;
}

std::vector<std::uint8_t> mask_of(const Graph& g, std::span<const NodeId> members) {
  std::vector<std::uint8_t> mask(g.node_count(), 0);
  for (NodeId v : members) {
    if (v >= g.node_count()) throw PreconditionError("node index out of range");
    mask[v] = 1;
  }
  return mask;
}

}  // namespace

std::vector<PairingOutcome> enumerate_pairings(std::span<const std::size_t> degrees,
                                               std::span<const std::uint8_t> in_set) {
  auto stubs = stub_flags(degrees, in_set);
  const std::size_t edges = stubs.size() / 2;
  if (edges > kMaxEnumerationEdges) {
    throw PreconditionError("exhaustive enumeration supports at most " +
                            std::to_string(kMaxEnumerationEdges) + " edges (got " +
                            std::to_string(edges) + "); use the Monte-Carlo estimate instead");
  }
  const auto counts = Matcher(std::move(stubs)).run();
  std::vector<PairingOutcome> out;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] != 0) out.push_back({k, counts[k]});
  }
  return out;
}

double exact_pvalue(std::span<const std::size_t> degrees, std::span<const std::uint8_t> in_set,
                    std::size_t threshold) {
  const auto outcomes = enumerate_pairings(degrees, in_set);
  std::uint64_t total = 0;
  std::uint64_t tail = 0;
  for (const auto& o : outcomes) {
    total += o.multiplicity;
    if (o.internal_edges >= threshold) tail += o.multiplicity;
  }
  return static_cast<double>(tail) / static_cast<double>(total);
}

double exact_pvalue(const Graph& g, std::span<const NodeId> members, std::size_t threshold) {
  const auto d = degrees_of(g);
  const auto mask = mask_of(g, members);
  return exact_pvalue(d, mask, threshold);
}

McEstimate mc_pvalue(std::span<const std::size_t> degrees, std::span<const std::uint8_t> in_set,
                     std::size_t threshold, std::size_t trials, std::uint64_t seed) {
  if (trials < kMinMcTrials) {
    throw PreconditionError("Monte-Carlo estimate needs at least " + std::to_string(kMinMcTrials) +
                            " trials");
  }
  auto stubs = stub_flags(degrees, in_set);
  McEstimate est;
  est.trials = trials;
  if (threshold == 0) {
    est.hits = trials;
    est.p = 1.0;
    return est;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::size_t internal = 0;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) internal += stubs[i] & stubs[i + 1];
    if (internal >= threshold) ++est.hits;
  }
  est.p = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.p * (1.0 - est.p) / static_cast<double>(trials));
  return est;
}

McEstimate mc_pvalue(const Graph& g, std::span<const NodeId> members, std::size_t threshold,
                     std::size_t trials, std::uint64_t seed) {
  const auto d = degrees_of(g);
  const auto mask = mask_of(g, members);
  return mc_pvalue(d, mask, threshold, trials, seed);
}

}  // namespace dsc::oracle
