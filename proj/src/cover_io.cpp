#include "dsc/cover_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dsc/error.hpp"

namespace dsc {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

NodeId lookup(const Graph& g, std::string_view label, std::size_t line) {
  const auto v = g.find(label);
  if (!v) throw ParseError("unknown node label '" + std::string(label) + "'", line);
  return *v;
}

std::vector<std::string> sorted_labels(const Graph& g, std::span<const NodeId> members) {
  std::vector<std::string> labels;
  labels.reserve(members.size());
  for (NodeId v : members) labels.push_back(g.label(v));
  std::sort(labels.begin(), labels.end(), label_less);
  return labels;
}

std::string join(std::span<const std::string> items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

struct Summary {
  std::size_t count = 0;
  std::size_t max_size = 0;
  std::size_t min_size = 0;
};

Summary summarize(std::span<const DetectedCommunity> communities) {
  Summary s;
  s.count = communities.size();
  for (std::size_t i = 0; i < communities.size(); ++i) {
    const auto n = communities[i].members.size();
    s.max_size = i == 0 ? n : std::max(s.max_size, n);
    s.min_size = i == 0 ? n : std::min(s.min_size, n);
  }
  return s;
}

Cover read_detection_json(std::istream& in, const Graph& g) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  Cover cover;
  cover.universe_size = g.node_count();
  if (!doc.contains("communities") || !doc["communities"].is_array()) {
    throw ParseError("JSON listing has no \"communities\" array", 0);
  }
  for (const auto& c : doc["communities"]) {
    if (!c.contains("members") || !c["members"].is_array()) {
      throw ParseError("community without a \"members\" array", 0);
    }
    std::vector<NodeId> members;
    for (const auto& m : c["members"]) {
      if (!m.is_string()) throw ParseError("member labels must be strings", 0);
      members.push_back(lookup(g, m.get<std::string>(), 0));
    }
    cover.communities.push_back(std::move(members));
  }
  cover.normalize();
  return cover;
}

Cover read_detection_tsv(std::istream& in, const Graph& g) {
  Cover cover;
  cover.universe_size = g.node_count();
  std::string line;
  std::size_t lineno = 0;
  bool saw_summary = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body, '\t');
    if (fields[0] == "summary") {
      saw_summary = true;
      continue;
    }
    if (fields[0] != "community") throw ParseError("unknown record type", lineno);
    if (fields.size() != 11) throw ParseError("community record needs 11 fields", lineno);
    std::vector<NodeId> members;
    if (!fields[10].empty()) {
      for (auto label : split(fields[10], ',')) members.push_back(lookup(g, label, lineno));
    }
    cover.communities.push_back(std::move(members));
  }
  if (!saw_summary) throw ParseError("listing has no summary record", 0);
  cover.normalize();
  return cover;
}

}  // namespace

bool label_less(std::string_view a, std::string_view b) {
  const bool na = all_digits(a);
  const bool nb = all_digits(b);
  if (na != nb) return na;
  if (na) {
    const auto sa = a.substr(std::min(a.find_first_not_of('0'), a.size() - 1));
    const auto sb = b.substr(std::min(b.find_first_not_of('0'), b.size() - 1));
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

Cover read_truth(std::istream& in, const Graph& g) {
  Cover cover;
  cover.universe_size = g.node_count();
  std::map<std::string, std::size_t, std::less<>> ids;
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto sep = body.find_first_of(" \t");
    if (sep == std::string_view::npos) throw ParseError("expected '<label> <community ids>'", lineno);
    const auto label = body.substr(0, sep);
    const auto rest = trim(body.substr(sep));
    if (rest.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("community ids must be comma-separated", lineno);
    }
    const NodeId v = lookup(g, label, lineno);
    if (seen[v]) throw ParseError("node '" + std::string(label) + "' listed twice", lineno);
    seen[v] = 1;
    for (auto cid : split(rest, ',')) {
      if (cid.empty()) throw ParseError("empty community id", lineno);
      auto [it, fresh] = ids.try_emplace(std::string(cid), cover.communities.size());
      if (fresh) cover.communities.emplace_back();
      cover.communities[it->second].push_back(v);
    }
  }
  if (cover.communities.empty()) throw ParseError("truth file lists no communities", 0);
  cover.normalize();
  return cover;
}

Cover read_truth_file(const std::string& path, const Graph& g) {
  auto in = open_or_throw(path);
  return read_truth(in, g);
}

Cover to_cover(std::span<const DetectedCommunity> communities, std::size_t universe_size) {
  Cover cover;
  cover.universe_size = universe_size;
  for (const auto& c : communities) cover.communities.push_back(c.members);
  cover.normalize();
  return cover;
}

std::string format_p(double log_p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", std::exp(log_p));
  return buf;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "tsv") return OutputFormat::tsv;
  if (name == "json") return OutputFormat::json;
  throw PreconditionError("unknown output format '" + std::string(name) + "' (expected tsv or json)");
}

void write_detection(std::ostream& out, const Graph& g,
                     std::span<const DetectedCommunity> communities, OutputFormat format,
                     std::span<const std::string> warnings) {
  const auto summary = summarize(communities);
  if (format == OutputFormat::json) {
    nlohmann::ordered_json doc;
    doc["communities"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < communities.size(); ++i) {
      const auto& c = communities[i];
      nlohmann::ordered_json rec;
      rec["id"] = i + 1;
      rec["size"] = c.members.size();
      rec["e_in"] = c.e_in;
      rec["e_out"] = c.e_out;
      rec["d_s"] = c.d_s;
      rec["log_p"] = c.log_p.log_bound;
      rec["p_bound"] = std::stod(format_p(c.log_p.log_bound));
      rec["significant"] = c.significant;
      auto merged = nlohmann::ordered_json::array();
      for (auto k : c.merged_from) merged.push_back(k + 1);
      rec["merged_from"] = merged;
      rec["members"] = sorted_labels(g, c.members);
      doc["communities"].push_back(std::move(rec));
    }
    doc["summary"] = {{"communities", summary.count},
                      {"max_size", summary.max_size},
                      {"min_size", summary.min_size}};
    doc["warnings"] = std::vector<std::string>(warnings.begin(), warnings.end());
    out << doc.dump(2) << '\n';
    return;
  }

  for (const auto& w : warnings) out << "# warning: " << w << '\n';
  out << "#record\tid\tsize\te_in\te_out\td_s\tlog_p\tp_bound\tsignificant\tmerged_from\tmembers\n";
  for (std::size_t i = 0; i < communities.size(); ++i) {
    const auto& c = communities[i];
    std::string merged;
    for (std::size_t k = 0; k < c.merged_from.size(); ++k) {
      if (k) merged += ',';
      merged += std::to_string(c.merged_from[k] + 1);
    }
    out << "community\t" << i + 1 << '\t' << c.members.size() << '\t' << c.e_in << '\t' << c.e_out
        << '\t' << c.d_s << '\t' << format_double(c.log_p.log_bound) << '\t'
        << format_p(c.log_p.log_bound) << '\t' << (c.significant ? "true" : "false") << '\t'
        << merged << '\t' << join(sorted_labels(g, c.members)) << '\n';
  }
  out << "#record\tcommunities\tmax_size\tmin_size\n";
  out << "summary\t" << summary.count << '\t' << summary.max_size << '\t' << summary.min_size
      << '\n';
}

Cover read_detection(std::istream& in, const Graph& g) {
  std::ws(in);
  if (in.peek() == '{') return read_detection_json(in, g);
  return read_detection_tsv(in, g);
}

Cover read_detection_file(const std::string& path, const Graph& g) {
  auto in = open_or_throw(path);
  return read_detection(in, g);
}

}  // namespace dsc
