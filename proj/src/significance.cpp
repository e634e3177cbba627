#include "dsc/significance.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "dsc/error.hpp"

namespace dsc {

FactorialMode parse_factorial_mode(std::string_view name) {
  if (name == "exact") return FactorialMode::exact;
  if (name == "stirling") return FactorialMode::stirling;
  throw PreconditionError("unknown factorial mode '" + std::string(name) + "'");
}

std::string_view to_string(FactorialMode mode) {
  return mode == FactorialMode::exact ? "exact" : "stirling";
}

LogFactorialTable::LogFactorialTable(std::size_t capacity, FactorialMode mode)
    : capacity_(capacity), mode_(mode) {
  if (mode_ != FactorialMode::exact) return;
  table_.resize(capacity_ + 1);
  table_[0] = 0.0;
  // Kahan-compensated running sum of ln k.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t k = 1; k <= capacity_; ++k) {
    const double y = std::log(static_cast<double>(k)) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    table_[k] = sum;
  }
}

double LogFactorialTable::operator()(std::size_t n) const {
  if (mode_ == FactorialMode::stirling) {
    if (n <= 1) return 0.0;
    const double x = static_cast<double>(n);
    return 0.5 * std::log(2.0 * std::numbers::pi * x) + x * (std::log(x) - 1.0);
  }
  if (n > capacity_) {
    throw PreconditionError("ln(n!) requested for n=" + std::to_string(n) +
                            " beyond table capacity " + std::to_string(capacity_));
  }
  return table_[n];
}

double log_factorial(const LogFactorialTable& t, std::size_t n) { return t(n); }

double log_binomial(const LogFactorialTable& t, std::size_t n, std::size_t k) {
  if (k > n) {
    throw PreconditionError("binomial C(n,k) needs k <= n (n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  }
  if (k == 0 || k == n) return 0.0;
  return t(n) - t(k) - t(n - k);
}

LogPValue log_pvalue_bound(const LogFactorialTable& t, std::size_t e_in, std::size_t d_s,
                           std::size_t m) {
  if (2 * e_in > d_s) {
    throw PreconditionError("p-value bound needs d_s >= 2*e_in (e_in=" + std::to_string(e_in) +
                            ", d_s=" + std::to_string(d_s) + ")");
  }
  if (e_in > m) {
    throw PreconditionError("p-value bound needs e_in <= |E| (e_in=" + std::to_string(e_in) +
                            ", |E|=" + std::to_string(m) + ")");
  }
  if (d_s > 2 * m) {
    throw PreconditionError("p-value bound needs d_s <= 2|E| (d_s=" + std::to_string(d_s) +
                            ", |E|=" + std::to_string(m) + ")");
  }
  const double raw = log_binomial(t, d_s, 2 * e_in) + log_binomial(t, m, e_in) -
                     log_binomial(t, 2 * m, 2 * e_in);
  return LogPValue{std::min(0.0, raw)};
}

double log_pairings_count(const LogFactorialTable& t, std::size_t m) {
  return t(2 * m) - t(m) - static_cast<double>(m) * std::numbers::ln2;
}

double log_distinct_graphs(const LogFactorialTable& t, std::span<const std::size_t> degrees) {
  std::size_t total = 0;
  double log_perm = 0.0;
  for (std::size_t d : degrees) {
    total += d;
    log_perm += t(d);
  }
  if (total % 2 != 0) {
    throw PreconditionError("degree sum " + std::to_string(total) + " is odd");
  }
  return log_pairings_count(t, total / 2) - log_perm;
}

double conductance(const CommunityStats& s, std::size_t total_degree) {
  const std::size_t rest = total_degree >= s.d_s() ? total_degree - s.d_s() : 0;
  const std::size_t denom = std::min(s.d_s(), rest);
  if (denom == 0) return 0.0;
  return static_cast<double>(s.e_out()) / static_cast<double>(denom);
}

double ratio_cut(const CommunityStats& s, std::size_t n_members, std::size_t n_total) {
  if (n_members == 0 || n_members >= n_total) {
    throw PreconditionError("ratio cut needs 0 < |S| < |V| (|S|=" + std::to_string(n_members) +
                            ", |V|=" + std::to_string(n_total) + ")");
  }
  return static_cast<double>(s.e_out()) /
         (static_cast<double>(n_members) * static_cast<double>(n_total - n_members));
}

double modularity_single(const CommunityStats& s, std::size_t m) {
  if (m == 0) throw PreconditionError("modularity needs |E| > 0");
  const double edges = static_cast<double>(m);
  const double share = static_cast<double>(s.e_in() + s.e_out()) / (2.0 * edges);
  return static_cast<double>(s.e_in()) / edges + share * share;
}

}  // namespace dsc
