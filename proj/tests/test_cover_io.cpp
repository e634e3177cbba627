#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dsc/cover_io.hpp"
#include "dsc/error.hpp"
#include "support/fixtures.hpp"

using dsc::NodeId;

TEST_CASE("label ordering") {
  std::vector<std::string> labels{"10", "9", "b", "007", "a", "100", "8"};
  std::sort(labels.begin(), labels.end(), dsc::label_less);
  CHECK(labels == std::vector<std::string>{"007", "8", "9", "10", "100", "a", "b"});
  CHECK_FALSE(dsc::label_less("5", "5"));
}

TEST_CASE("truth files") {
  const auto g = fixtures::parse("a b\nb c\nc d\nd e\n");
  std::istringstream in("# comment\na\t1\nb\t1,2\nc 2\n\ne\t3\n");
  const auto truth = dsc::read_truth(in, g);
  CHECK(truth.universe_size == 5);
  REQUIRE(truth.communities.size() == 3);
  CHECK(truth.communities[0] == std::vector<NodeId>{*g.find("a"), *g.find("b")});
  CHECK(truth.communities[1] == std::vector<NodeId>{*g.find("b"), *g.find("c")});
  CHECK(truth.covered().size() == 4);

  auto line_of = [&](const char* text) -> std::size_t {
    std::istringstream bad(text);
    try {
      dsc::read_truth(bad, g);
    } catch (const dsc::ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("a 1\nzz 2\n") == 2);
  CHECK(line_of("a\n") == 1);
  CHECK(line_of("a 1\na 2\n") == 2);
  CHECK(line_of("a 1,,2\n") == 1);
  CHECK(line_of("a 1 2\n") == 1);
  CHECK(line_of("# only comments\n") == 0);
}

TEST_CASE("karate truth is the two-faction split") {
  const auto g = fixtures::load("karate.edges");
  const auto truth = dsc::read_truth_file(fixtures::data_path("karate.truth"), g);
  REQUIRE(truth.communities.size() == 2);
  CHECK(truth.covered().size() == 34);
}

TEST_CASE("number formatting") {
  CHECK(dsc::format_p(std::log(8.98282e-3)) == "8.98282e-03");
  CHECK(dsc::format_p(0.0) == "1.00000e+00");
  for (double x : {0.1, -4.712441960938802, 1e-300, 123456.789}) {
    CHECK(std::stod(dsc::format_double(x)) == x);
  }
  CHECK(dsc::parse_output_format("json") == dsc::OutputFormat::json);
  CHECK_THROWS_AS(dsc::parse_output_format("xml"), dsc::PreconditionError);
}

TEST_CASE("detection listings round-trip in both formats") {
  const auto g = fixtures::load("karate.edges");
  const auto result = dsc::detect(g, dsc::DscConfig{});
  REQUIRE_FALSE(result.communities.empty());
  const auto expect = dsc::to_cover(result.communities, g.node_count());

  std::ostringstream tsv;
  std::ostringstream json;
  dsc::write_detection(tsv, g, result.communities, dsc::OutputFormat::tsv);
  dsc::write_detection(json, g, result.communities, dsc::OutputFormat::json);

  std::istringstream tsv_in(tsv.str());
  std::istringstream json_in(json.str());
  CHECK(dsc::read_detection(tsv_in, g).communities == expect.communities);
  CHECK(dsc::read_detection(json_in, g).communities == expect.communities);

  // The two emitters carry the same fields and values.
  const auto doc = nlohmann::json::parse(json.str());
  std::istringstream rows(tsv.str());
  std::string line;
  std::size_t i = 0;
  while (std::getline(rows, line)) {
    if (line.rfind("community\t", 0) != 0) continue;
    std::vector<std::string> f;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, '\t');) f.push_back(cell);
    const auto& c = doc["communities"][i++];
    CHECK(std::stoul(f[1]) == c["id"].get<std::size_t>());
    CHECK(std::stoul(f[2]) == c["size"].get<std::size_t>());
    CHECK(std::stod(f[6]) == c["log_p"].get<double>());
    CHECK(std::stod(f[7]) == c["p_bound"].get<double>());
    std::string members;
    for (const auto& m : c["members"]) members += (members.empty() ? "" : ",") + m.get<std::string>();
    CHECK(f[10] == members);
  }
  CHECK(i == result.communities.size());
  CHECK(doc["summary"]["communities"] == result.communities.size());
}

TEST_CASE("empty listing") {
  const auto g = fixtures::load("triangle.edges");
  std::ostringstream out;
  dsc::write_detection(out, g, {}, dsc::OutputFormat::tsv);
  CHECK(out.str().find("summary\t0\t0\t0") != std::string::npos);
  std::istringstream in(out.str());
  CHECK(dsc::read_detection(in, g).communities.empty());
}

TEST_CASE("malformed listings") {
  const auto g = fixtures::load("triangle.edges");
  std::istringstream no_summary("community\t1\t2\t1\t0\t2\t0\t1\ttrue\t1\t1,2\n");
  CHECK_THROWS_AS(dsc::read_detection(no_summary, g), dsc::ParseError);
  std::istringstream bad_label("community\t1\t2\t1\t0\t2\t0\t1\ttrue\t1\t1,9\nsummary\t1\t2\t2\n");
  CHECK_THROWS_AS(dsc::read_detection(bad_label, g), dsc::ParseError);
  std::istringstream bad_json("{\"communities\": [ {\"members\": [1]} ]}");
  CHECK_THROWS_AS(dsc::read_detection(bad_json, g), dsc::ParseError);
  std::istringstream broken("{\"communities\": ");
  CHECK_THROWS_AS(dsc::read_detection(broken, g), dsc::ParseError);
}
