#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsc/graph.hpp"
#include "dsc/significance.hpp"

namespace dsc {

struct DscConfig {
  /// Significance level a community's p-value bound must fall below.
  double alpha = 0.01;
  /// Merge A and B when |A ∩ B| / min(|A|, |B|) exceeds this.
  double overlap_threshold = 0.7;
  /// Stop a local search once the best move improves ln p by less than this.
  double logp_delta = 5.0;
  std::size_t min_size = 3;
  /// Seeds need at least this many neighbors.
  std::size_t seed_min_degree = 3;
  /// Moves per local search; 0 means 10 * |V|.
  std::size_t max_iterations = 0;
  FactorialMode factorial_mode = FactorialMode::exact;

  /// Throws PreconditionError on out-of-range fields.
  void validate() const;
};

struct DetectedCommunity {
  std::vector<NodeId> members;  // ascending
  LogPValue log_p;
  std::size_t e_in = 0;
  std::size_t e_out = 0;
  std::size_t d_s = 0;
  NodeId seed = 0;
  /// Local-search moves applied (summed over constituents after merging).
  std::size_t iterations = 0;
  /// Indices, in acceptance order, of the accepted communities folded into
  /// this one; a single entry for an unmerged community.
  std::vector<std::size_t> merged_from;
  /// False only for a merged union whose bound is not below alpha.
  bool significant = true;
};

struct SearchResult {
  DetectedCommunity community;
  /// ln p of the starting set followed by every accepted move.
  std::vector<double> trajectory;
  bool hit_iteration_cap = false;
};

struct DetectionResult {
  std::vector<DetectedCommunity> communities;
  /// Accepted communities before merging, in acceptance order.
  std::vector<DetectedCommunity> accepted;
  std::size_t searches = 0;
  std::vector<std::string> warnings;
};

/// Among `candidates` with degree >= cfg.seed_min_degree, the node with the
/// largest clustering coefficient; ties go to the higher degree, then the
/// lower index.
std::optional<NodeId> select_seed(const Graph& g, std::span<const NodeId> candidates,
                                  const DscConfig& cfg);

/// Greedy single-node add/remove descent on the p-value bound.
///
/// Each step scores removing every member and adding every non-member with
/// a neighbor in the set, then applies the move with the smallest ln p
/// (ties: additions before removals, then lower node index) if it is
/// strictly better. Stops when nothing improves, when the improvement is
/// below cfg.logp_delta (the move is not applied), or at the iteration cap.
SearchResult search_one_community(const Graph& g, const LogFactorialTable& table,
                                  std::span<const NodeId> seed_set, const DscConfig& cfg);

/// Fixpoint merge of the most-overlapping pair while its overlap ratio
/// exceeds cfg.overlap_threshold. Unions get fresh statistics and ln p.
std::vector<DetectedCommunity> merge_redundant(std::vector<DetectedCommunity> cover,
                                               const Graph& g, const LogFactorialTable& table,
                                               const DscConfig& cfg);

/// Called once per local search, accepted or not.
using SearchObserver = std::function<void(const SearchResult&)>;

/// The full pipeline: seed, search, accept when |sc| >= min_size and the
/// bound is below alpha, drop accepted nodes (or the rejected seed) from the
/// candidate pool, repeat until no seed qualifies, then merge.
DetectionResult detect(const Graph& g, const DscConfig& cfg, const SearchObserver& observe = {});

}  // namespace dsc
