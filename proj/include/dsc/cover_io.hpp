#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsc/detect.hpp"
#include "dsc/graph.hpp"
#include "dsc/metrics.hpp"

namespace dsc {

/// Orders labels numerically when both are non-negative integers, otherwise
/// lexicographically (numbers first).
bool label_less(std::string_view a, std::string_view b);

/// Reads "label<TAB>cid[,cid...]" lines, one per node; blank lines and lines
/// starting with '#' are skipped. Communities are numbered by first
/// appearance of their id. Nodes absent from the file stay uncovered.
/// Throws ParseError on a malformed line or a label not in `g`.
Cover read_truth(std::istream& in, const Graph& g);
Cover read_truth_file(const std::string& path, const Graph& g);

Cover to_cover(std::span<const DetectedCommunity> communities, std::size_t universe_size);

/// Fixed-width scientific rendering of a p-value bound, 6 significant digits.
std::string format_p(double log_p);
/// Shortest text that parses back to exactly `x`.
std::string format_double(double x);

enum class OutputFormat { tsv, json };
OutputFormat parse_output_format(std::string_view name);

/// Community listing: one record per community and a summary record.
/// Members are written by label in label_less order.
void write_detection(std::ostream& out, const Graph& g,
                     std::span<const DetectedCommunity> communities, OutputFormat format,
                     std::span<const std::string> warnings = {});

/// Reads either listing format back into a cover over `g`.
Cover read_detection(std::istream& in, const Graph& g);
Cover read_detection_file(const std::string& path, const Graph& g);

}  // namespace dsc
