#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "support/fixtures.hpp"
#include "support/run.hpp"

namespace {

std::string cli(const std::string& args) { return run::cli() + " " + args; }
std::string data(const std::string& name) { return fixtures::data_path(name); }

nlohmann::json json_of(const std::string& args) {
  const auto r = run::shell(cli(args + " --format json"));
  REQUIRE(r.status == 0);
  return nlohmann::json::parse(r.out);
}

std::string temp_path(const std::string& name) { return std::string(DSC_TEST_TMP_DIR) + "/" + name; }

}  // namespace

TEST_CASE("score: example graph sets and the whole graph") {
  const auto s1 = json_of("score " + data("fig3.edges") + " --members 1,2,3,4");
  CHECK(s1["e_in"] == 6);
  CHECK(s1["e_out"] == 2);
  CHECK(s1["d_s"] == 14);
  CHECK(s1["p_bound"].get<double>() == doctest::Approx(8.98e-3).epsilon(1e-3));
  CHECK(s1["ratio_cut"].get<double>() == doctest::Approx(0.1));

  const auto s2 = json_of("score " + data("fig3.edges") + " --members 4,5,6,7,8");
  CHECK(s2["p_bound"].get<double>() == doctest::Approx(0.61).epsilon(1e-2));

  const auto all = json_of("score " + data("fig3.edges") + " --members 1,2,3,4,5,6,7,8,9");
  CHECK(all["p_bound"] == 1.0);
  CHECK(all["ratio_cut"].is_null());

  const auto tsv = run::shell(cli("score " + data("fig3.edges") + " --members 1,2,3,4"));
  CHECK(tsv.out.find("\t8.98282e-03\t") != std::string::npos);
}

TEST_CASE("score: unknown labels are listed") {
  const auto r = run::shell(cli("score " + data("fig3.edges") + " --members 1,x,y"), true);
  CHECK(r.status == 4);
  CHECK(r.out.find("x, y") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run::shell(cli("detect " + data("triangle.edges"))).status == 0);
  CHECK(run::shell(cli("detect /nonexistent/graph.txt")).status == 3);
  CHECK(run::shell(cli("detect " + data("karate.truth"))).status == 0);
  CHECK(run::shell(cli("detect " + data("fig3.edges") + " --alpha 7")).status == 2);
  CHECK(run::shell(cli("detect " + data("fig3.edges") + " --factorial-mode gamma")).status == 2);
  CHECK(run::shell(cli("frobnicate")).status == 2);
  CHECK(run::shell(cli("detect " + data("fig3.edges") + " --alpha 0")).status == 4);
  CHECK(run::shell(cli("--help")).status == 0);

  const auto bad = temp_path("bad.edges");
  std::ofstream(bad) << "1 2\nonly\n";
  const auto r = run::shell(cli("detect " + bad), true);
  CHECK(r.status == 3);
  CHECK(r.out.find("line 2") != std::string::npos);
}

TEST_CASE("detect: empty listing for a triangle") {
  const auto r = run::shell(cli("detect " + data("triangle.edges")));
  CHECK(r.status == 0);
  CHECK(r.out.find("community\t") == std::string::npos);
  CHECK(r.out.find("summary\t0\t0\t0") != std::string::npos);
  const auto j = json_of("detect " + data("triangle.edges"));
  CHECK(j["communities"].empty());
}

TEST_CASE("detect output re-read by evaluate gives the same metrics") {
  const auto listing = temp_path("karate.listing");
  REQUIRE(run::shell(cli("detect " + data("karate.edges") + " -o " + listing)).status == 0);
  const auto direct = run::shell(cli("evaluate " + data("karate.edges") + " --truth " + data("karate.truth")));
  const auto reread = run::shell(cli("evaluate " + data("karate.edges") + " --truth " + data("karate.truth") +
                                     " --detected " + listing));
  CHECK(direct.status == 0);
  CHECK(direct.out == reread.out);

  const auto listing_json = temp_path("karate.json");
  REQUIRE(run::shell(cli("detect " + data("karate.edges") + " --format json -o " + listing_json)).status == 0);
  const auto from_json = run::shell(cli("evaluate " + data("karate.edges") + " --truth " + data("karate.truth") +
                                        " --detected " + listing_json));
  CHECK(from_json.out == direct.out);
}

TEST_CASE("evaluate: record fields") {
  const auto j = json_of("evaluate " + data("football.edges") + " --truth " + data("football.truth"));
  for (const char* key : {"onmi", "purity", "precision", "recall", "rand_index", "f_measure", "communities",
                          "max_size", "min_size", "truth_communities", "covered_nodes", "nodes"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["nodes"] == 115);
  CHECK(j["truth_communities"] == 12);
}

TEST_CASE("correlate") {
  const auto j = json_of("correlate " + data("football.edges") + " --truth " + data("football.truth"));
  CHECK(j["communities"] == 12);
  CHECK(j["spearman_conductance"].get<double>() > 0.9);
  CHECK(j["spearman_modularity"].get<double>() < -0.9);

  // Two communities with identical scores.
  const auto g = temp_path("twins.edges");
  const auto t = temp_path("twins.truth");
  std::ofstream(g) << "a b\nb c\nc a\nx y\ny z\nz x\nc x\n";
  std::ofstream(t) << "a 1\nb 1\nc 1\nx 2\ny 2\nz 2\n";
  CHECK(run::shell(cli("correlate " + g + " --truth " + t)).status == 4);

  const auto one = temp_path("one.truth");
  std::ofstream(one) << "a 1\nb 1\nc 1\n";
  CHECK(run::shell(cli("correlate " + g + " --truth " + one)).status == 4);
}

TEST_CASE("oracle verdicts") {
  const auto hub = json_of("oracle --degrees 3,4,1,1,1 --members 2,3,5 --threshold 2");
  CHECK(hub["verdict"] == "bound holds");
  CHECK(hub["method"] == "exact");
  CHECK(hub["p"].get<double>() <= hub["bound"].get<double>());

  const auto zero = json_of("oracle --degrees 3,4,1,1,1 --members 2,3,5 --threshold 0");
  CHECK(zero["p"] == 1.0);
  CHECK(zero["bound"] == 1.0);

  const auto comp = temp_path("comp.edges");
  std::ofstream(comp) << "a b\nb c\nc a\nx y\ny z\n";
  const auto tight = json_of("oracle " + comp + " --members a,b,c");
  CHECK(tight["verdict"] == "bound tight");

  const auto mc = json_of("oracle " + data("fig3.edges") + " --members 1,2,3,4 --trials 20000 --seed 5");
  CHECK(mc["method"] == "monte-carlo");
  CHECK(mc["verdict"] != "bound violated");

  CHECK(run::shell(cli("oracle " + data("fig3.edges") + " --members 1,2,3,4")).status == 4);
  CHECK(run::shell(cli("oracle --degrees 1,1 --members 1")).status == 2);
  CHECK(run::shell(cli("oracle " + data("fig3.edges") + " --members 1 --trials 10")).status == 2);
}
