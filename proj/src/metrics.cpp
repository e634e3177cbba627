#include "dsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dsc/error.hpp"

namespace dsc {

void Cover::normalize() {
  for (auto& c : communities) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (!c.empty() && c.back() >= universe_size) {
      throw PreconditionError("community member " + std::to_string(c.back()) +
                              " outside universe of size " + std::to_string(universe_size));
    }
  }
}

std::vector<NodeId> Cover::covered() const {
  std::vector<std::uint8_t> seen(universe_size, 0);
  for (const auto& c : communities) {
    for (NodeId v : c) {
      if (v >= universe_size) throw PreconditionError("community member outside universe");
      seen[v] = 1;
    }
  }
  std::vector<NodeId> out;
  for (NodeId v = 0; v < universe_size; ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

namespace {

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

double binary_entropy(double p) { return plogp(p) + plogp(1.0 - p); }

// memberships[v] = ids of the communities containing v, ascending.
std::vector<std::vector<std::uint32_t>> memberships(const Cover& c) {
  std::vector<std::vector<std::uint32_t>> out(c.universe_size);
  for (std::uint32_t k = 0; k < c.communities.size(); ++k) {
    for (NodeId v : c.communities[k]) {
      if (v >= c.universe_size) throw PreconditionError("community member outside universe");
      if (out[v].empty() || out[v].back() != k) out[v].push_back(k);
    }
  }
  return out;
}

std::vector<std::size_t> unique_sizes(const Cover& c) {
  std::vector<std::size_t> sizes;
  for (const auto& com : c.communities) {
    auto copy = com;
    std::sort(copy.begin(), copy.end());
    sizes.push_back(static_cast<std::size_t>(std::unique(copy.begin(), copy.end()) - copy.begin()));
  }
  return sizes;
}

// Normalised conditional entropy H(X|Y) given |X_k|, |Y_l| and |X_k ∩ Y_l|.
double normalized_conditional(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys,
                              const std::vector<std::vector<std::size_t>>& overlap, bool transpose,
                              double n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double px = static_cast<double>(xs[k]) / n;
    const double hx = binary_entropy(px);
    if (hx == 0.0) continue;
    double best = hx;
    bool first = true;
    for (std::size_t l = 0; l < ys.size(); ++l) {
      const double a = static_cast<double>(transpose ? overlap[l][k] : overlap[k][l]);
      const double b = static_cast<double>(xs[k]) - a;
      const double c = static_cast<double>(ys[l]) - a;
      const double d = n - a - b - c;
      const double joint = plogp(a / n) + plogp(b / n) + plogp(c / n) + plogp(d / n);
      const double cond = joint - binary_entropy(static_cast<double>(ys[l]) / n);
      if (first || cond < best) best = cond;
      first = false;
    }
    sum += best / hx;
  }
  return sum / static_cast<double>(xs.size());
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double onmi(const Cover& x, const Cover& y) {
  if (x.universe_size != y.universe_size) {
    throw PreconditionError("covers have different universes (" + std::to_string(x.universe_size) +
                            " vs " + std::to_string(y.universe_size) + ")");
  }
  if (x.communities.empty() || y.communities.empty() || x.universe_size == 0) return 0.0;

  const auto xs = unique_sizes(x);
  const auto ys = unique_sizes(y);
  const auto xm = memberships(x);
  const auto ym = memberships(y);
  std::vector<std::vector<std::size_t>> overlap(xs.size(), std::vector<std::size_t>(ys.size(), 0));
  for (std::size_t v = 0; v < x.universe_size; ++v) {
    for (auto k : xm[v]) {
      for (auto l : ym[v]) ++overlap[k][l];
    }
  }
  const double n = static_cast<double>(x.universe_size);
  const double hxy = normalized_conditional(xs, ys, overlap, false, n);
  const double hyx = normalized_conditional(ys, xs, overlap, true, n);
  return 1.0 - (hxy + hyx) / 2.0;
}

double purity(const Cover& detected, const Cover& truth) {
  if (detected.universe_size != truth.universe_size) {
    throw PreconditionError("covers have different universes");
  }
  if (detected.communities.empty() || detected.universe_size == 0) return 0.0;
  const auto tm = memberships(truth);
  std::size_t correct = 0;
  std::vector<std::size_t> hits(truth.communities.size());
  for (const auto& com : detected.communities) {
    std::fill(hits.begin(), hits.end(), 0);
    auto members = com;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (NodeId v : members) {
      for (auto j : tm[v]) ++hits[j];
    }
    if (!hits.empty()) correct += *std::max_element(hits.begin(), hits.end());
  }
  return static_cast<double>(correct) / static_cast<double>(detected.universe_size);
}

PairConfusion pair_confusion(const Cover& detected, const Cover& truth) {
  if (detected.universe_size != truth.universe_size) {
    throw PreconditionError("covers have different universes");
  }
  const auto dm = memberships(detected);
  const auto tm = memberships(truth);
  auto share = [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        return true;
      }
    }
    return false;
  };
  PairConfusion pc;
  const auto n = static_cast<NodeId>(detected.universe_size);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const bool same_label = share(tm[u], tm[v]);
      const bool same_community = share(dm[u], dm[v]);
      if (same_label && same_community) {
        ++pc.tp;
      } else if (same_label) {
        ++pc.fn;
      } else if (same_community) {
        ++pc.fp;
      } else {
        ++pc.tn;
      }
    }
  }
  return pc;
}

double rand_index(const PairConfusion& pc) {
  if (pc.total() == 0) throw PreconditionError("Rand index needs at least one node pair");
  return static_cast<double>(pc.tp + pc.tn) / static_cast<double>(pc.total());
}

double precision(const PairConfusion& pc) {
  if (pc.tp + pc.fp == 0) return 0.0;
  return static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fp);
}

double recall(const PairConfusion& pc) {
  if (pc.tp + pc.fn == 0) return 0.0;
  return static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fn);
}

double f_measure(const PairConfusion& pc) {
  const double p = precision(pc);
  const double r = recall(pc);
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw PreconditionError("spearman: sequences differ in length");
  if (xs.size() < 2) throw PreconditionError("spearman: need at least two observations");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw PreconditionError("spearman: a sequence is constant (zero rank variance)");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Cover restrict_to(const Cover& c, std::span<const NodeId> nodes) {
  constexpr auto kDropped = ~NodeId{0};
  std::vector<NodeId> index(c.universe_size, kDropped);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= c.universe_size) throw PreconditionError("node outside universe");
    index[nodes[i]] = static_cast<NodeId>(i);
  }
  Cover out;
  out.universe_size = nodes.size();
  for (const auto& com : c.communities) {
    std::vector<NodeId> kept;
    for (NodeId v : com) {
      if (v >= c.universe_size) throw PreconditionError("community member outside universe");
      if (index[v] != kDropped) kept.push_back(index[v]);
    }
    if (!kept.empty()) out.communities.push_back(std::move(kept));
  }
  out.normalize();
  return out;
}

MetricsReport evaluate(const Cover& detected, const Cover& truth) {
  MetricsReport r;
  r.universe_size = detected.universe_size;
  r.onmi = onmi(detected, truth);

  const auto reported = detected.covered();
  const auto det = restrict_to(detected, reported);
  const auto tru = restrict_to(truth, reported);
  r.purity = purity(det, tru);
  const auto pc = pair_confusion(det, tru);
  if (pc.total() > 0) {
    r.rand_index = rand_index(pc);
    r.precision = precision(pc);
    r.recall = recall(pc);
    r.f_measure = f_measure(pc);
  }
  const auto sizes = unique_sizes(detected);
  r.detected_count = sizes.size();
  if (!sizes.empty()) {
    r.detected_max_size = *std::max_element(sizes.begin(), sizes.end());
    r.detected_min_size = *std::min_element(sizes.begin(), sizes.end());
  }
  r.truth_count = truth.communities.size();
  r.covered_nodes = reported.size();
  return r;
}

}  // namespace dsc
