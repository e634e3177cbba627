#pragma once

// Slow, direct reference computations used to check the library.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "dsc/metrics.hpp"

namespace reference {

using Big = boost::multiprecision::cpp_int;

inline Big factorial(std::size_t n) {
  Big r = 1;
  for (std::size_t k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Big binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

inline Big double_factorial_odd(std::size_t two_m) {
  // (two_m - 1)!!, with (-1)!! = 1.
  Big r = 1;
  for (std::size_t k = 1; k + 1 <= two_m; k += 2) r *= k;
  return r;
}

inline double ln(const Big& x) {
  // Shift down to the top 60 bits so the double conversion is exact enough.
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 60) return std::log(static_cast<double>(x));
  const std::size_t shift = bits - 60;
  const Big top = x >> shift;
  return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

// Matchings of the stubs with exactly k pairs inside the member set, counted
// in closed form: choose the 2k internal stubs and pair them, match every other
// member stub to a distinct outside stub, pair what is left outside.
inline Big matchings_with_internal(std::size_t member_stubs, std::size_t other_stubs,
                                   std::size_t k) {
  if (2 * k > member_stubs) return 0;
  const std::size_t cross = member_stubs - 2 * k;
  if (cross > other_stubs) return 0;
  const std::size_t rest = other_stubs - cross;
  if (rest % 2 != 0) return 0;
  return binomial(member_stubs, 2 * k) * double_factorial_odd(2 * k) *
         binomial(other_stubs, cross) * factorial(cross) * double_factorial_odd(rest);
}

inline double tail_probability(std::size_t d_s, std::size_t total_stubs, std::size_t threshold) {
  Big tail = 0;
  Big all = 0;
  for (std::size_t k = 0; 2 * k <= d_s; ++k) {
    const Big c = matchings_with_internal(d_s, total_stubs - d_s, k);
    all += c;
    if (k >= threshold) tail += c;
  }
  using Float = boost::multiprecision::cpp_bin_float_50;
  return static_cast<double>(Float(tail) / Float(all));
}

// ONMI written out node by node from the probability definitions.
inline double onmi_literal(const dsc::Cover& x, const dsc::Cover& y) {
  const std::size_t n = x.universe_size;
  auto as_sets = [](const dsc::Cover& c) {
    std::vector<std::set<dsc::NodeId>> out;
    for (const auto& com : c.communities) out.emplace_back(com.begin(), com.end());
    return out;
  };
  const auto xs = as_sets(x);
  const auto ys = as_sets(y);
  auto h = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };

  auto conditional = [&](const std::vector<std::set<dsc::NodeId>>& a,
                         const std::vector<std::set<dsc::NodeId>>& b) {
    double total = 0.0;
    for (const auto& ak : a) {
      double p1 = 0.0;
      for (std::size_t v = 0; v < n; ++v) p1 += ak.count(static_cast<dsc::NodeId>(v)) ? 1.0 : 0.0;
      p1 /= static_cast<double>(n);
      const double h_a = h(p1) + h(1.0 - p1);
      if (h_a == 0.0) continue;
      double best = 0.0;
      bool first = true;
      for (const auto& bl : b) {
        double joint[2][2] = {{0, 0}, {0, 0}};
        double q1 = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
          const int i = ak.count(static_cast<dsc::NodeId>(v)) ? 1 : 0;
          const int j = bl.count(static_cast<dsc::NodeId>(v)) ? 1 : 0;
          joint[i][j] += 1.0 / static_cast<double>(n);
          q1 += j;
        }
        q1 /= static_cast<double>(n);
        const double h_ab = h(joint[0][0]) + h(joint[0][1]) + h(joint[1][0]) + h(joint[1][1]);
        const double h_b = h(q1) + h(1.0 - q1);
        const double c = h_ab - h_b;
        if (first || c < best) best = c;
        first = false;
      }
      total += best / h_a;
    }
    return total / static_cast<double>(a.size());
  };
  return 1.0 - 0.5 * (conditional(xs, ys) + conditional(ys, xs));
}

// Pair counts by asking, for every pair, whether any community holds both.
inline dsc::PairConfusion pairs_literal(const dsc::Cover& det, const dsc::Cover& truth) {
  auto together = [](const dsc::Cover& c, dsc::NodeId u, dsc::NodeId v) {
    for (const auto& com : c.communities) {
      const std::set<dsc::NodeId> s(com.begin(), com.end());
      if (s.count(u) && s.count(v)) return true;
    }
    return false;
  };
  dsc::PairConfusion pc;
  for (dsc::NodeId u = 0; u < det.universe_size; ++u) {
    for (dsc::NodeId v = u + 1; v < det.universe_size; ++v) {
      const bool label = together(truth, u, v);
      const bool comm = together(det, u, v);
      if (label && comm) ++pc.tp;
      if (label && !comm) ++pc.fn;
      if (!label && comm) ++pc.fp;
      if (!label && !comm) ++pc.tn;
    }
  }
  return pc;
}

}  // namespace reference
