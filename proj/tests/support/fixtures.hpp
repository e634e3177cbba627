#pragma once

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsc/graph.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(DSC_TEST_DATA_DIR) + "/" + name;
}

inline dsc::Graph parse(const std::string& text) {
  std::istringstream in(text);
  return dsc::load_edge_list(in);
}

inline dsc::Graph load(const std::string& name) { return dsc::load_edge_list_file(data_path(name)); }

// G(n, p); may contain isolated nodes.
inline dsc::Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<dsc::Edge> edges;
  for (dsc::NodeId u = 0; u < n; ++u) {
    for (dsc::NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return dsc::Graph::from_edges(n, edges);
}

// Random graph with exactly `m` edges drawn without replacement.
inline dsc::Graph random_graph_m(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<dsc::Edge> all;
  for (dsc::NodeId u = 0; u < n; ++u) {
    for (dsc::NodeId v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(m, all.size()));
  return dsc::Graph::from_edges(n, all);
}

inline std::vector<dsc::NodeId> nodes_of(const dsc::Graph& g, std::initializer_list<const char*> labels) {
  std::vector<dsc::NodeId> out;
  for (const char* l : labels) out.push_back(*g.find(l));
  return out;
}

inline std::vector<dsc::NodeId> subset_from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<dsc::NodeId> out;
  for (dsc::NodeId v = 0; v < n; ++v) {
    if (mask >> v & 1) out.push_back(v);
  }
  return out;
}

}  // namespace fixtures
