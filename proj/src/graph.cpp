#include "dsc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dsc/error.hpp"

namespace dsc {

Graph::Graph(std::vector<std::string> labels, std::span<const Edge> edges)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  index_.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    if (!index_.emplace(labels_[v], v).second) {
      throw PreconditionError("duplicate node label '" + labels_[v] + "'");
    }
  }

  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw PreconditionError("edge endpoint out of range");
    }
    if (u == v) {
      ++self_loops_dropped_;
      continue;
    }
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  const auto last = std::unique(canon.begin(), canon.end());
  duplicates_dropped_ = static_cast<std::size_t>(canon.end() - last);
  canon.erase(last, canon.end());

  degree_.assign(n, 0);
  for (auto [u, v] : canon) {
    ++degree_[u];
    ++degree_[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree_[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : canon) {
    adjacency_[fill[u]++] = v;
    adjacency_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<std::string> labels(node_count);
  for (std::size_t i = 0; i < node_count; ++i) labels[i] = std::to_string(i);
  return Graph(std::move(labels), edges);
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  if (v >= node_count()) throw PreconditionError("node index out of range");
  return {adjacency_.data() + offsets_[v], degree_[v]};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nu = neighbors(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;

  auto intern = [&](const std::string& label) {
    const auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;

    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a >> b)) {
      throw ParseError("expected two node labels", line_no);
    }
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    edges.emplace_back(u, v);
  }
  if (in.bad()) throw ParseError("read failure", line_no);

  Graph g(std::move(labels), edges);
  if (g.edge_count() == 0) throw ParseError("graph has no edges", 0);
  return g;
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return load_edge_list(in);
}

double clustering_coefficient(const Graph& g, NodeId v) {
  const auto nv = g.neighbors(v);
  const std::size_t k = nv.size();
  if (k < 2) return 0.0;

  // Each neighbor-neighbor edge is found by merging two sorted lists.
  std::size_t links = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto nu = g.neighbors(nv[i]);
    auto a = nv.begin() + static_cast<std::ptrdiff_t>(i) + 1;
    auto b = std::lower_bound(nu.begin(), nu.end(), *a);
    while (a != nv.end() && b != nu.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++links;
        ++a;
        ++b;
      }
    }
  }
  return static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
}

CommunityStats::CommunityStats(const Graph& g)
    : mask_(g.node_count(), 0), position_(g.node_count(), 0) {}

std::vector<NodeId> CommunityStats::sorted_members() const {
  std::vector<NodeId> out(members_.begin(), members_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t CommunityStats::links_into(const Graph& g, NodeId v) const {
  std::size_t k = 0;
  for (NodeId u : g.neighbors(v)) k += mask_[u];
  return k;
}

void CommunityStats::add(const Graph& g, NodeId v) {
  if (mask_.size() != g.node_count()) {
    throw PreconditionError("community stats not sized for this graph");
  }
  if (v >= g.node_count()) throw PreconditionError("node index out of range");
  if (mask_[v]) throw PreconditionError("node " + g.label(v) + " is already a member");
  const std::size_t k = links_into(g, v);
  const std::size_t d = g.degree(v);
  e_in_ += k;
  e_out_ = e_out_ + d - 2 * k;
  d_s_ += d;
  mask_[v] = 1;
  position_[v] = static_cast<std::uint32_t>(members_.size());
  members_.push_back(v);
}

void CommunityStats::remove(const Graph& g, NodeId v) {
  if (v >= mask_.size() || !mask_[v]) {
    throw PreconditionError("node " + (v < g.node_count() ? g.label(v) : std::to_string(v)) +
                            " is not a member");
  }
  mask_[v] = 0;
  const std::size_t k = links_into(g, v);
  const std::size_t d = g.degree(v);
  e_in_ -= k;
  e_out_ = e_out_ + 2 * k - d;
  d_s_ -= d;
  const NodeId moved = members_.back();
  members_[position_[v]] = moved;
  position_[moved] = position_[v];
  members_.pop_back();
}

CommunityStats community_stats(const Graph& g, std::span<const NodeId> members) {
  CommunityStats s(g);
  for (NodeId v : members) {
    if (v >= g.node_count()) throw PreconditionError("node index out of range");
    if (s.mask_[v]) continue;
    s.mask_[v] = 1;
    s.position_[v] = static_cast<std::uint32_t>(s.members_.size());
    s.members_.push_back(v);
  }
  std::size_t inside_ends = 0;
  for (NodeId v : s.members_) {
    s.d_s_ += g.degree(v);
    for (NodeId u : g.neighbors(v)) {
      if (s.mask_[u]) {
        ++inside_ends;
      } else {
        ++s.e_out_;
      }
    }
  }
  s.e_in_ = inside_ends / 2;
  return s;
}

CommunityStats stats_add_node(const Graph& g, CommunityStats s, NodeId v) {
  s.add(g, v);
  return s;
}

CommunityStats stats_remove_node(const Graph& g, CommunityStats s, NodeId v) {
  s.remove(g, v);
  return s;
}

}  // namespace dsc
