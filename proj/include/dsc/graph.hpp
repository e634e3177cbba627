#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dsc {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph in CSR form.
///
/// Nodes are dense indices 0..node_count()-1; each carries the external label
/// it was read with. Neighbor lists are sorted ascending. Self-loops and
/// duplicate edges are discarded at construction and counted.
class Graph {
 public:
  Graph() = default;

  /// Builds from labels and an edge list over indices into `labels`.
  Graph(std::vector<std::string> labels, std::span<const Edge> edges);

  /// Convenience for tests and generators: labels are "0".."n-1".
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return degree_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }
  /// D = 2|E|.
  std::size_t total_degree() const noexcept { return adjacency_.size(); }

  std::size_t degree(NodeId v) const { return degree_.at(v); }
  std::span<const NodeId> neighbors(NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_.at(v); }
  std::optional<NodeId> find(std::string_view label) const;

  std::size_t self_loops_dropped() const noexcept { return self_loops_dropped_; }
  std::size_t duplicates_dropped() const noexcept { return duplicates_dropped_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::size_t> degree_;
  std::size_t self_loops_dropped_ = 0;
  std::size_t duplicates_dropped_ = 0;
};

/// Reads a whitespace-separated edge list. Lines starting with '#' or '%' and
/// blank lines are skipped; tokens after the first two on a line are ignored.
/// Labels are indexed in order of first appearance.
/// Throws ParseError on a malformed line or when no edge survives.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Fraction of neighbor pairs of `v` that are themselves adjacent.
/// Nodes with fewer than two neighbors get 0.
double clustering_coefficient(const Graph& g, NodeId v);

/// A node set together with its cached edge counts.
///
/// e_in counts edges with both ends inside, e_out edges with exactly one end
/// inside, and d_s the degree sum, so d_s == 2*e_in + e_out at all times.
/// add/remove cost O(deg(v)) using a membership mask sized to the graph.
class CommunityStats {
 public:
  CommunityStats() = default;
  explicit CommunityStats(const Graph& g);

  std::size_t e_in() const noexcept { return e_in_; }
  std::size_t e_out() const noexcept { return e_out_; }
  std::size_t d_s() const noexcept { return d_s_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains(NodeId v) const { return v < mask_.size() && mask_[v] != 0; }
  /// Insertion order, not sorted.
  std::span<const NodeId> members() const noexcept { return members_; }
  std::vector<NodeId> sorted_members() const;

  /// Number of neighbors of `v` currently inside the set.
  std::size_t links_into(const Graph& g, NodeId v) const;

  void add(const Graph& g, NodeId v);
  void remove(const Graph& g, NodeId v);

  friend CommunityStats community_stats(const Graph& g, std::span<const NodeId> members);

  friend bool operator==(const CommunityStats& a, const CommunityStats& b) {
    return a.e_in_ == b.e_in_ && a.e_out_ == b.e_out_ && a.d_s_ == b.d_s_ &&
           a.sorted_members() == b.sorted_members();
  }

 private:
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint32_t> position_;
  std::vector<NodeId> members_;
  std::size_t e_in_ = 0;
  std::size_t e_out_ = 0;
  std::size_t d_s_ = 0;
};

/// Full recount of the statistics of `members`. Duplicate entries are ignored.
CommunityStats community_stats(const Graph& g, std::span<const NodeId> members);

/// Copy of `s` with `v` added; throws PreconditionError if already a member.
CommunityStats stats_add_node(const Graph& g, CommunityStats s, NodeId v);
/// Copy of `s` with `v` removed; throws PreconditionError if not a member.
CommunityStats stats_remove_node(const Graph& g, CommunityStats s, NodeId v);

}  // namespace dsc
