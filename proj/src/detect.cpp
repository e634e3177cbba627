#include "dsc/detect.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <tuple>

#include "dsc/error.hpp"

namespace dsc {

void DscConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0, 1)");
  if (!(overlap_threshold > 0.0 && overlap_threshold <= 1.0)) {
    throw PreconditionError("overlap threshold must lie in (0, 1]");
  }
  if (!(logp_delta >= 0.0) || !std::isfinite(logp_delta)) {
    throw PreconditionError("log-p delta must be a finite non-negative number");
  }
}

namespace {

struct CandidateOrder {
  double cc;
  std::size_t degree;
  NodeId node;
};

bool better_seed(const CandidateOrder& a, const CandidateOrder& b) {
  if (a.cc != b.cc) return a.cc > b.cc;
  if (a.degree != b.degree) return a.degree > b.degree;
  return a.node < b.node;
}

// Index-addressed set with O(1) insert/erase.
class NodeSet {
 public:
  explicit NodeSet(std::size_t n) : pos_(n, kAbsent) {}

  bool contains(NodeId v) const { return pos_[v] != kAbsent; }
  void insert(NodeId v) {
    if (contains(v)) return;
    pos_[v] = static_cast<std::uint32_t>(items_.size());
    items_.push_back(v);
  }
  void erase(NodeId v) {
    if (!contains(v)) return;
    const NodeId last = items_.back();
    items_[pos_[v]] = last;
    pos_[last] = pos_[v];
    items_.pop_back();
    pos_[v] = kAbsent;
  }
  std::span<const NodeId> items() const { return items_; }

 private:
  static constexpr std::uint32_t kAbsent = ~std::uint32_t{0};
  std::vector<std::uint32_t> pos_;
  std::vector<NodeId> items_;
};

enum class MoveKind { add = 0, remove = 1 };

struct Move {
  double log_p;
  MoveKind kind;
  NodeId node;

  bool operator<(const Move& o) const {
    return std::tie(log_p, kind, node) < std::tie(o.log_p, o.kind, o.node);
  }
};

// Local-search state: the member set plus, for every node, how many of its
// neighbors are members, so each candidate move is scored in O(1).
class SearchState {
 public:
  SearchState(const Graph& g, std::span<const NodeId> seed)
      : g_(g), links_(g.node_count(), 0), frontier_(g.node_count()) {
    set_ = community_stats(g, seed);
    for (NodeId u : set_.members()) {
      for (NodeId w : g.neighbors(u)) ++links_[w];
    }
    for (NodeId u : set_.members()) {
      for (NodeId w : g.neighbors(u)) {
        if (!set_.contains(w)) frontier_.insert(w);
      }
    }
  }

  const CommunityStats& set() const { return set_; }

  template <typename Score>
  std::optional<Move> best_move(Score&& score) const {
    std::optional<Move> best;
    const std::size_t e_in = set_.e_in();
    const std::size_t d_s = set_.d_s();
    for (NodeId v : set_.members()) {
      const Move m{score(e_in - links_[v], d_s - g_.degree(v)), MoveKind::remove, v};
      if (!best || m < *best) best = m;
    }
    for (NodeId v : frontier_.items()) {
      const Move m{score(e_in + links_[v], d_s + g_.degree(v)), MoveKind::add, v};
      if (!best || m < *best) best = m;
    }
    return best;
  }

  void apply(const Move& m) {
    const NodeId v = m.node;
    if (m.kind == MoveKind::add) {
      set_.add(g_, v);
      frontier_.erase(v);
      for (NodeId w : g_.neighbors(v)) {
        if (++links_[w] == 1 && !set_.contains(w)) frontier_.insert(w);
      }
    } else {
      set_.remove(g_, v);
      for (NodeId w : g_.neighbors(v)) {
        if (--links_[w] == 0) frontier_.erase(w);
      }
      if (links_[v] > 0) frontier_.insert(v);
    }
  }

 private:
  const Graph& g_;
  CommunityStats set_;
  std::vector<std::uint32_t> links_;
  NodeSet frontier_;
};

DetectedCommunity make_community(const Graph& g, const LogFactorialTable& table,
                                 std::vector<NodeId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const auto stats = community_stats(g, members);
  DetectedCommunity c;
  c.log_p = log_pvalue_bound(table, stats, g.edge_count());
  c.e_in = stats.e_in();
  c.e_out = stats.e_out();
  c.d_s = stats.d_s();
  c.members = std::move(members);
  return c;
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

std::optional<NodeId> select_seed(const Graph& g, std::span<const NodeId> candidates,
                                  const DscConfig& cfg) {
  std::optional<CandidateOrder> best;
  for (NodeId v : candidates) {
    if (v >= g.node_count()) throw PreconditionError("node index out of range");
    const std::size_t d = g.degree(v);
    if (d < cfg.seed_min_degree) continue;
    const CandidateOrder c{clustering_coefficient(g, v), d, v};
    if (!best || better_seed(c, *best)) best = c;
  }
  if (!best) return std::nullopt;
  return best->node;
}

SearchResult search_one_community(const Graph& g, const LogFactorialTable& table,
                                  std::span<const NodeId> seed_set, const DscConfig& cfg) {
  if (seed_set.empty()) throw PreconditionError("local search needs a non-empty seed set");
  const std::size_t m = g.edge_count();
  const std::size_t cap = cfg.max_iterations != 0 ? cfg.max_iterations : 10 * g.node_count();
  auto score = [&](std::size_t e_in, std::size_t d_s) {
    return log_pvalue_bound(table, e_in, d_s, m).log_bound;
  };

  SearchState state(g, seed_set);
  SearchResult result;
  double current = score(state.set().e_in(), state.set().d_s());
  result.trajectory.push_back(current);

  std::size_t iterations = 0;
  while (true) {
    const auto move = state.best_move(score);
    if (!move || !(move->log_p < current)) break;
    if (current - move->log_p < cfg.logp_delta) break;
    if (iterations == cap) {
      result.hit_iteration_cap = true;
      break;
    }
    state.apply(*move);
    current = move->log_p;
    result.trajectory.push_back(current);
    ++iterations;
  }

  auto& c = result.community;
  c.members = state.set().sorted_members();
  c.e_in = state.set().e_in();
  c.e_out = state.set().e_out();
  c.d_s = state.set().d_s();
  c.log_p = LogPValue{current};
  c.seed = seed_set.front();
  c.iterations = iterations;
  return result;
}

std::vector<DetectedCommunity> merge_redundant(std::vector<DetectedCommunity> cover,
                                               const Graph& g, const LogFactorialTable& table,
                                               const DscConfig& cfg) {
  for (auto& c : cover) {
    std::sort(c.members.begin(), c.members.end());
    c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
  }
  while (cover.size() > 1) {
    double best_ratio = -1.0;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      for (std::size_t j = i + 1; j < cover.size(); ++j) {
        const std::size_t smaller = std::min(cover[i].members.size(), cover[j].members.size());
        if (smaller == 0) continue;
        const double ratio =
            static_cast<double>(intersection_size(cover[i].members, cover[j].members)) /
            static_cast<double>(smaller);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          bi = i;
          bj = j;
        }
      }
    }
    if (!(best_ratio > cfg.overlap_threshold)) break;

    auto& a = cover[bi];
    auto& b = cover[bj];
    std::vector<NodeId> united;
    united.reserve(a.members.size() + b.members.size());
    std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                   std::back_inserter(united));
    DetectedCommunity merged = make_community(g, table, std::move(united));
    merged.seed = a.seed;
    merged.iterations = a.iterations + b.iterations;
    merged.merged_from = a.merged_from;
    merged.merged_from.insert(merged.merged_from.end(), b.merged_from.begin(),
                              b.merged_from.end());
    std::sort(merged.merged_from.begin(), merged.merged_from.end());
    merged.significant = merged.log_p.p() < cfg.alpha;
    cover[bi] = std::move(merged);
    cover.erase(cover.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return cover;
}

DetectionResult detect(const Graph& g, const DscConfig& cfg, const SearchObserver& observe) {
  cfg.validate();
  if (g.node_count() == 0) throw PreconditionError("cannot detect communities in an empty graph");
  const auto table = LogFactorialTable::for_graph(g, cfg.factorial_mode);

  // Clustering coefficients never change, so the seed order is fixed up front;
  // each round takes the first node of that order still in the pool.
  std::vector<CandidateOrder> order;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) >= cfg.seed_min_degree) {
      order.push_back({clustering_coefficient(g, v), g.degree(v), v});
    }
  }
  std::sort(order.begin(), order.end(), better_seed);

  std::vector<std::uint8_t> pool(g.node_count(), 1);
  DetectionResult out;
  std::size_t cursor = 0;
  while (true) {
    while (cursor < order.size() && !pool[order[cursor].node]) ++cursor;
    if (cursor == order.size()) break;
    const NodeId seed = order[cursor].node;

    std::vector<NodeId> ns{seed};
    const auto nbrs = g.neighbors(seed);
    ns.insert(ns.end(), nbrs.begin(), nbrs.end());
    auto found = search_one_community(g, table, ns, cfg);
    ++out.searches;
    if (observe) observe(found);
    if (found.hit_iteration_cap) {
      out.warnings.push_back("local search from seed " + g.label(seed) +
                             " stopped at the iteration cap");
    }

    pool[seed] = 0;
    auto& sc = found.community;
    if (sc.members.size() >= cfg.min_size && sc.log_p.p() < cfg.alpha) {
      for (NodeId v : sc.members) pool[v] = 0;
      sc.merged_from = {out.accepted.size()};
      out.accepted.push_back(std::move(sc));
    }
  }

  out.communities = merge_redundant(out.accepted, g, table, cfg);
  return out;
}

}  // namespace dsc
