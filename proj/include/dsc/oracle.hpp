#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dsc/graph.hpp"

namespace dsc::oracle {

/// Largest edge count accepted by exhaustive enumeration (15!! = 2,027,025 matchings).
inline constexpr std::size_t kMaxEnumerationEdges = 8;

/// Number of perfect matchings of the stubs that place exactly
/// `internal_edges` edges with both stubs on member nodes.
struct PairingOutcome {
  std::size_t internal_edges = 0;
  std::uint64_t multiplicity = 0;
};

/// Exhaustively pairs every labeled stub (lowest unmatched stub against each
/// later one) and tallies internal edges. Self-loops and multi-edges are
/// legitimate outcomes. `in_set[i]` marks node i as a member; `degrees` and
/// `in_set` have equal length. Sorted by internal_edges, zero-count outcomes
/// omitted.
std::vector<PairingOutcome> enumerate_pairings(std::span<const std::size_t> degrees,
                                               std::span<const std::uint8_t> in_set);

/// P[internal edges >= threshold] under uniform stub matching, by enumeration.
/// Throws PreconditionError when the edge count exceeds kMaxEnumerationEdges.
double exact_pvalue(std::span<const std::size_t> degrees, std::span<const std::uint8_t> in_set,
                    std::size_t threshold);
double exact_pvalue(const Graph& g, std::span<const NodeId> members, std::size_t threshold);

struct McEstimate {
  double p = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::size_t hits = 0;
};

inline constexpr std::size_t kMinMcTrials = 1000;

/// Monte-Carlo estimate of the same tail: seeded uniform shuffles of the
/// stub list, consecutive stubs paired. Needs trials >= kMinMcTrials.
McEstimate mc_pvalue(std::span<const std::size_t> degrees, std::span<const std::uint8_t> in_set,
                     std::size_t threshold, std::size_t trials, std::uint64_t seed);
McEstimate mc_pvalue(const Graph& g, std::span<const NodeId> members, std::size_t threshold,
                     std::size_t trials, std::uint64_t seed);

}  // namespace dsc::oracle
