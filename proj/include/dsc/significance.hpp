#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dsc/graph.hpp"

namespace dsc {

enum class FactorialMode { exact, stirling };

FactorialMode parse_factorial_mode(std::string_view name);
std::string_view to_string(FactorialMode mode);

/// ln(n!) lookup.
///
/// Exact mode holds a table of cumulative sums of ln(k) up to `capacity` and
/// rejects larger arguments. Stirling mode evaluates
/// ln(sqrt(2*pi*n)) + n*ln(n/e) for any n, with ln(0!) = ln(1!) = 0 since the
/// approximation is wrong at 0 and inexact at 1.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(std::size_t capacity, FactorialMode mode = FactorialMode::exact);

  /// Sized for scoring any node set of `g` (capacity 2|E|).
  static LogFactorialTable for_graph(const Graph& g, FactorialMode mode = FactorialMode::exact) {
    return LogFactorialTable(g.total_degree(), mode);
  }

  double operator()(std::size_t n) const;

  std::size_t capacity() const noexcept { return capacity_; }
  FactorialMode mode() const noexcept { return mode_; }

 private:
  std::size_t capacity_;
  FactorialMode mode_;
  std::vector<double> table_;
};

/// Natural log of the configuration-model p-value upper bound, never above 0.
struct LogPValue {
  double log_bound = 0.0;

  double p() const { return std::exp(log_bound); }

  friend auto operator<=>(const LogPValue&, const LogPValue&) = default;
};

double log_factorial(const LogFactorialTable& t, std::size_t n);

/// ln C(n, k); throws PreconditionError when k > n.
double log_binomial(const LogFactorialTable& t, std::size_t n, std::size_t k);

/// ln of C(d_s, 2 e_in) * C(m, e_in) / C(2m, 2 e_in), clamped to <= 0.
///
/// Bounds the probability that a configuration-model graph with the same
/// degree sequence puts at least e_in edges inside a node set of degree sum
/// d_s; m is the edge count of the whole graph. Equality holds when the set
/// has no boundary edges (d_s == 2 e_in).
/// Throws PreconditionError naming the failed inequality unless
/// 2 e_in <= d_s, e_in <= m and d_s <= 2m.
LogPValue log_pvalue_bound(const LogFactorialTable& t, std::size_t e_in, std::size_t d_s,
                           std::size_t m);

inline LogPValue log_pvalue_bound(const LogFactorialTable& t, const CommunityStats& s,
                                  std::size_t m) {
  return log_pvalue_bound(t, s.e_in(), s.d_s(), m);
}

/// ln((2m)! / (m! 2^m)): perfect matchings of 2m labeled half-edges.
double log_pairings_count(const LogFactorialTable& t, std::size_t m);

/// ln((2m)! / (m! 2^m prod d_i!)) with 2m = sum of `degrees`.
/// Throws PreconditionError on an odd degree sum.
double log_distinct_graphs(const LogFactorialTable& t, std::span<const std::size_t> degrees);

/// e_out / min(d_s, D - d_s); 0 when that minimum is 0.
double conductance(const CommunityStats& s, std::size_t total_degree);

/// e_out / (|S| (|V| - |S|)); throws PreconditionError unless 0 < |S| < |V|.
double ratio_cut(const CommunityStats& s, std::size_t n_members, std::size_t n_total);

/// e_in / m + ((e_in + e_out) / 2m)^2.
///
/// Note the plus sign: this is the single-community score the correlation
/// study ranks against, not Newman's modularity term (which subtracts).
double modularity_single(const CommunityStats& s, std::size_t m);

}  // namespace dsc
