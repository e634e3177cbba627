#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dsc/graph.hpp"

namespace dsc {

/// A possibly overlapping set of communities over nodes 0..universe_size-1.
/// Nodes may be left uncovered.
struct Cover {
  std::vector<std::vector<NodeId>> communities;
  std::size_t universe_size = 0;

  /// Sorts and deduplicates each community; throws PreconditionError on an
  /// index outside the universe.
  void normalize();
  /// Nodes in at least one community, ascending.
  std::vector<NodeId> covered() const;
};

/// Overlapping NMI from per-community binary membership entropies (bits).
///
/// H(X_k | Y) is the minimum over l of H(X_k, Y_l) - H(Y_l); each term is
/// divided by H(X_k) and the terms are averaged; the result is
/// 1 - (H(X|Y) + H(Y|X)) / 2. A community covering none or all of the
/// universe has zero entropy and contributes 0. Returns 0 when either cover
/// has no communities. Throws PreconditionError on mismatched universes.
double onmi(const Cover& x, const Cover& y);

/// (1/N) sum_k max_j |w_k ∩ c_j|. Overlapping detections can push this above
/// 1; it is not clamped. 0 for an empty detected cover.
double purity(const Cover& detected, const Cover& truth);

struct PairConfusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const PairConfusion&, const PairConfusion&) = default;
};

/// Counts over all unordered node pairs. "Same label" means some truth
/// community holds both, "same community" means some detected one does, so
/// uncovered nodes act as singletons.
PairConfusion pair_confusion(const Cover& detected, const Cover& truth);

/// (tp + tn) / total; throws PreconditionError when total is 0.
double rand_index(const PairConfusion& pc);
/// tp / (tp + fp); 0 when no pair is co-assigned.
double precision(const PairConfusion& pc);
/// tp / (tp + fn); 0 when no pair shares a label.
double recall(const PairConfusion& pc);
/// Harmonic mean of precision and recall; 0 when both are 0.
double f_measure(const PairConfusion& pc);

/// Spearman rank correlation with average ranks for ties.
/// Throws PreconditionError on unequal lengths, fewer than two values, or a
/// constant sequence.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct MetricsReport {
  double onmi = 0.0;
  double purity = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double rand_index = 0.0;
  double f_measure = 0.0;
  std::size_t detected_count = 0;
  std::size_t detected_max_size = 0;
  std::size_t detected_min_size = 0;
  std::size_t truth_count = 0;
  std::size_t covered_nodes = 0;
  std::size_t universe_size = 0;
};

/// Re-indexes `c` onto `nodes` (position i stands for nodes[i]); members
/// outside `nodes` are dropped, as are communities left empty.
Cover restrict_to(const Cover& c, std::span<const NodeId> nodes);

/// ONMI over the whole universe. Purity and the pair metrics are computed on
/// the nodes the detected cover reports, with the truth restricted to them.
MetricsReport evaluate(const Cover& detected, const Cover& truth);

}  // namespace dsc
