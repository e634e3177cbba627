// dsc: significance scoring, community detection and cover evaluation.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dsc/cover_io.hpp"
#include "dsc/detect.hpp"
#include "dsc/error.hpp"
#include "dsc/graph.hpp"
#include "dsc/metrics.hpp"
#include "dsc/oracle.hpp"
#include "dsc/significance.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kArgument = 2,
  kParse = 3,
  kPrecondition = 4,
};

// A p-value bound given by its natural log; printed in scientific notation.
struct PBound {
  double log_p;
};

// A flat record printed either as a two-line TSV table or as a JSON object.
using Value = std::variant<std::monostate, std::string, double, std::size_t, bool, PBound>;

class Record {
 public:
  Record& add(std::string key, Value v) {
    fields_.emplace_back(std::move(key), std::move(v));
    return *this;
  }

  void write(std::ostream& out, dsc::OutputFormat format) const {
    if (format == dsc::OutputFormat::json) {
      nlohmann::ordered_json doc = nlohmann::ordered_json::object();
      for (const auto& [k, v] : fields_) doc[k] = to_json(v);
      out << doc.dump(2) << '\n';
      return;
    }
    out << '#';
    for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "\t" : "") << fields_[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "\t" : "") << to_text(fields_[i].second);
    out << '\n';
  }

 private:
  static nlohmann::ordered_json to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> nlohmann::ordered_json {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return nullptr;
          } else if constexpr (std::is_same_v<T, double>) {
            if (!std::isfinite(x)) return nullptr;
            return x;
          } else if constexpr (std::is_same_v<T, PBound>) {
            return std::stod(dsc::format_p(x.log_p));
          } else {
            return x;
          }
        },
        v);
  }

  static std::string to_text(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return "NA";
          } else if constexpr (std::is_same_v<T, std::string>) {
            return x;
          } else if constexpr (std::is_same_v<T, double>) {
            return std::isfinite(x) ? dsc::format_double(x) : "NA";
          } else if constexpr (std::is_same_v<T, bool>) {
            return x ? "true" : "false";
          } else if constexpr (std::is_same_v<T, PBound>) {
            return dsc::format_p(x.log_p);
          } else {
            return std::to_string(x);
          }
        },
        v);
  }

  std::vector<std::pair<std::string, Value>> fields_;
};

struct Options {
  std::string graph_path;
  std::string truth_path;
  std::string detected_path;
  std::string output_path;
  std::string format = "tsv";
  std::string factorial_mode = "exact";
  dsc::DscConfig cfg;
  std::vector<std::string> members;
  std::vector<std::size_t> degrees;
  std::optional<std::size_t> threshold;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
  bool details = false;
};

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", o.output_path, "Write to this file instead of stdout");
}

void add_factorial_mode(CLI::App* cmd, Options& o) {
  cmd->add_option("--factorial-mode", o.factorial_mode, "ln n! evaluation")
      ->check(CLI::IsMember({"exact", "stirling"}))
      ->capture_default_str();
}

void add_detect_flags(CLI::App* cmd, Options& o) {
  auto& c = o.cfg;
  cmd->add_option("--alpha", c.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--overlap-threshold", c.overlap_threshold, "Merge when overlap exceeds this")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--logp-delta", c.logp_delta, "Minimum ln p improvement per move")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--min-size", c.min_size, "Smallest community reported")->capture_default_str();
  cmd->add_option("--seed-min-degree", c.seed_min_degree, "Smallest seed degree")
      ->capture_default_str();
  cmd->add_option("--max-iterations", c.max_iterations, "Moves per search (0 = 10|V|)")
      ->capture_default_str();
  add_factorial_mode(cmd, o);
}

dsc::Graph load_graph(const Options& o) { return dsc::load_edge_list_file(o.graph_path); }

std::vector<dsc::NodeId> resolve_labels(const dsc::Graph& g, const std::vector<std::string>& labels) {
  std::vector<dsc::NodeId> ids;
  std::string missing;
  for (const auto& l : labels) {
    if (const auto v = g.find(l)) {
      ids.push_back(*v);
    } else {
      missing += (missing.empty() ? "" : ", ") + l;
    }
  }
  if (!missing.empty()) throw dsc::PreconditionError("unknown node labels: " + missing);
  return ids;
}

dsc::DscConfig resolved_config(const Options& o) {
  auto cfg = o.cfg;
  cfg.factorial_mode = dsc::parse_factorial_mode(o.factorial_mode);
  return cfg;
}

int run_detect(const Options& o, std::ostream& out) {
  const auto g = load_graph(o);
  const auto result = dsc::detect(g, resolved_config(o));
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  dsc::write_detection(out, g, result.communities, dsc::parse_output_format(o.format),
                       result.warnings);
  return kOk;
}

int run_score(const Options& o, std::ostream& out) {
  const auto g = load_graph(o);
  const auto members = resolve_labels(g, o.members);
  const auto table = dsc::LogFactorialTable::for_graph(g, dsc::parse_factorial_mode(o.factorial_mode));
  const auto s = dsc::community_stats(g, members);
  const auto lp = dsc::log_pvalue_bound(table, s, g.edge_count());
  Value rc;
  if (s.size() > 0 && s.size() < g.node_count()) rc = dsc::ratio_cut(s, s.size(), g.node_count());
  Record()
      .add("size", s.size())
      .add("e_in", s.e_in())
      .add("e_out", s.e_out())
      .add("d_s", s.d_s())
      .add("log_p", lp.log_bound)
      .add("p_bound", PBound{lp.log_bound})
      .add("conductance", dsc::conductance(s, g.total_degree()))
      .add("ratio_cut", rc)
      .add("modularity", dsc::modularity_single(s, g.edge_count()))
      .write(out, dsc::parse_output_format(o.format));
  return kOk;
}

int run_evaluate(const Options& o, std::ostream& out) {
  const auto g = load_graph(o);
  const auto truth = dsc::read_truth_file(o.truth_path, g);
  dsc::Cover detected;
  if (!o.detected_path.empty()) {
    detected = dsc::read_detection_file(o.detected_path, g);
  } else {
    const auto result = dsc::detect(g, resolved_config(o));
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    detected = dsc::to_cover(result.communities, g.node_count());
  }
  const auto r = dsc::evaluate(detected, truth);
  Record()
      .add("onmi", r.onmi)
      .add("purity", r.purity)
      .add("precision", r.precision)
      .add("recall", r.recall)
      .add("rand_index", r.rand_index)
      .add("f_measure", r.f_measure)
      .add("communities", r.detected_count)
      .add("max_size", r.detected_max_size)
      .add("min_size", r.detected_min_size)
      .add("truth_communities", r.truth_count)
      .add("covered_nodes", r.covered_nodes)
      .add("nodes", r.universe_size)
      .write(out, dsc::parse_output_format(o.format));
  return kOk;
}

int run_correlate(const Options& o, std::ostream& out) {
  const auto g = load_graph(o);
  const auto truth = dsc::read_truth_file(o.truth_path, g);
  if (truth.communities.size() < 2) {
    throw dsc::PreconditionError("correlation needs at least two true communities");
  }
  const auto table = dsc::LogFactorialTable::for_graph(g, dsc::parse_factorial_mode(o.factorial_mode));
  std::vector<double> logp, cond, rcut, mod;
  for (const auto& c : truth.communities) {
    const auto s = dsc::community_stats(g, c);
    logp.push_back(dsc::log_pvalue_bound(table, s, g.edge_count()).log_bound);
    cond.push_back(dsc::conductance(s, g.total_degree()));
    rcut.push_back(dsc::ratio_cut(s, s.size(), g.node_count()));
    mod.push_back(dsc::modularity_single(s, g.edge_count()));
  }
  const auto format = dsc::parse_output_format(o.format);
  if (o.details && format == dsc::OutputFormat::tsv) {
    out << "#community\tsize\tlog_p\tconductance\tratio_cut\tmodularity\n";
    for (std::size_t i = 0; i < logp.size(); ++i) {
      out << i + 1 << '\t' << truth.communities[i].size() << '\t' << dsc::format_double(logp[i])
          << '\t' << dsc::format_double(cond[i]) << '\t' << dsc::format_double(rcut[i]) << '\t'
          << dsc::format_double(mod[i]) << '\n';
    }
  }
  if (std::all_of(logp.begin(), logp.end(), [&](double x) { return x == logp.front(); })) {
    throw dsc::PreconditionError("every true community has the same p-value bound");
  }
  // A tied score vector has no rank variance; that coefficient is reported as NA.
  auto rho = [&](const std::vector<double>& other) -> Value {
    try {
      return dsc::spearman(logp, other);
    } catch (const dsc::PreconditionError&) {
      return {};
    }
  };
  Record()
      .add("communities", truth.communities.size())
      .add("spearman_conductance", rho(cond))
      .add("spearman_ratio_cut", rho(rcut))
      .add("spearman_modularity", rho(mod))
      .write(out, format);
  return kOk;
}

int run_oracle(const Options& o, std::ostream& out) {
  std::vector<std::size_t> degrees;
  std::vector<std::uint8_t> mask;
  std::size_t threshold = 0;
  if (!o.degrees.empty()) {
    if (!o.graph_path.empty()) throw CLI::ValidationError("give either a graph or --degrees, not both");
    if (!o.threshold) throw CLI::ValidationError("--degrees needs --threshold");
    degrees = o.degrees;
    mask.assign(degrees.size(), 0);
    for (const auto& l : o.members) {
      std::size_t pos = 0;
      try {
        pos = std::stoul(l);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos > degrees.size()) {
        throw dsc::PreconditionError("member '" + l + "' is not a position in 1.." +
                                     std::to_string(degrees.size()));
      }
      mask[pos - 1] = 1;
    }
    threshold = *o.threshold;
  } else {
    if (o.graph_path.empty()) throw CLI::ValidationError("oracle needs a graph or --degrees");
    const auto g = load_graph(o);
    const auto members = resolve_labels(g, o.members);
    degrees.resize(g.node_count());
    for (dsc::NodeId v = 0; v < g.node_count(); ++v) degrees[v] = g.degree(v);
    mask.assign(g.node_count(), 0);
    for (auto v : members) mask[v] = 1;
    threshold = o.threshold.value_or(dsc::community_stats(g, members).e_in());
  }

  std::size_t total = 0;
  std::size_t d_s = 0;
  std::size_t size = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    total += degrees[i];
    if (mask[i]) {
      d_s += degrees[i];
      ++size;
    }
  }
  if (total % 2 != 0) throw dsc::PreconditionError("degree sum is odd");
  const std::size_t m = total / 2;
  const dsc::LogFactorialTable table(total, dsc::parse_factorial_mode(o.factorial_mode));
  const double log_bound = dsc::log_pvalue_bound(table, threshold, d_s, m).log_bound;
  const double bound = std::exp(log_bound);

  Record rec;
  rec.add("size", size).add("d_s", d_s).add("edges", m).add("threshold", threshold);
  std::string verdict;
  if (o.trials) {
    const auto est = dsc::oracle::mc_pvalue(degrees, mask, threshold, *o.trials, o.seed);
    const double slack = 4.0 * est.std_error + 1e-12;
    verdict = est.p > bound + slack          ? "bound violated"
              : std::abs(est.p - bound) <= slack ? "bound tight"
                                                 : "bound holds";
    rec.add("method", std::string("monte-carlo"))
        .add("p", est.p)
        .add("std_error", est.std_error)
        .add("trials", est.trials);
  } else {
    const double p = dsc::oracle::exact_pvalue(degrees, mask, threshold);
    verdict = p > bound + 1e-12                ? "bound violated"
              : std::abs(p - bound) <= 1e-9 ? "bound tight"
                                            : "bound holds";
    rec.add("method", std::string("exact")).add("p", p).add("std_error", Value{}).add("trials", Value{});
  }
  rec.add("log_bound", log_bound).add("bound", bound).add("verdict", verdict);
  rec.write(out, dsc::parse_output_format(o.format));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistically significant community detection"};
  app.require_subcommand(1);
  Options o;

  auto* detect = app.add_subcommand("detect", "Detect significant communities");
  detect->add_option("graph", o.graph_path, "Edge list")->required();
  add_detect_flags(detect, o);
  add_format(detect, o);

  auto* score = app.add_subcommand("score", "Score one node set");
  score->add_option("graph", o.graph_path, "Edge list")->required();
  score->add_option("--members", o.members, "Comma-separated node labels")->delimiter(',');
  add_factorial_mode(score, o);
  add_format(score, o);

  auto* evaluate = app.add_subcommand("evaluate", "Compare a detected cover with ground truth");
  evaluate->add_option("graph", o.graph_path, "Edge list")->required();
  evaluate->add_option("--truth", o.truth_path, "Ground-truth file")->required();
  evaluate->add_option("--detected", o.detected_path,
                       "Detection listing (TSV or JSON); detection runs when omitted");
  add_detect_flags(evaluate, o);
  add_format(evaluate, o);

  auto* correlate = app.add_subcommand("correlate", "Rank-correlate scores over true communities");
  correlate->add_option("graph", o.graph_path, "Edge list")->required();
  correlate->add_option("--truth", o.truth_path, "Ground-truth file")->required();
  correlate->add_flag("--details", o.details, "Also print per-community scores (tsv)");
  add_factorial_mode(correlate, o);
  add_format(correlate, o);

  auto* oracle = app.add_subcommand("oracle", "Check the bound against the null model");
  oracle->add_option("graph", o.graph_path, "Edge list");
  oracle->add_option("--degrees", o.degrees, "Degree sequence instead of a graph")->delimiter(',');
  oracle->add_option("--members", o.members,
                     "Member labels, or 1-based positions with --degrees")
      ->delimiter(',');
  oracle->add_option("--threshold", o.threshold, "Internal edge count (default: observed)");
  oracle->add_option("--trials", o.trials, "Monte-Carlo trials instead of enumeration")
      ->check(CLI::Range(dsc::oracle::kMinMcTrials, std::size_t{1} << 40));
  oracle->add_option("--seed", o.seed, "Monte-Carlo RNG seed")->capture_default_str();
  add_factorial_mode(oracle, o);
  add_format(oracle, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kArgument;
  }

  try {
    std::ofstream file;
    if (!o.output_path.empty()) {
      file.open(o.output_path);
      if (!file) throw CLI::ValidationError("cannot write '" + o.output_path + "'");
    }
    std::ostream& out = o.output_path.empty() ? std::cout : file;
    if (*detect) return run_detect(o, out);
    if (*score) return run_score(o, out);
    if (*evaluate) return run_evaluate(o, out);
    if (*correlate) return run_correlate(o, out);
    if (*oracle) return run_oracle(o, out);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArgument;
  } catch (const dsc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const dsc::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
