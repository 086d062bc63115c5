#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "decaynet/io.hpp"

using namespace decaynet;
using io::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("decaynet-io-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

template <class F>
std::string format_error_of(F&& f) {
  try {
    f();
  } catch (const io::FormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("space documents") {
  TEST_CASE("round trip preserves every bit") {
    Rng rng(1);
    const auto s = gen_euclidean(random_points(7, rng), 2.7);
    const auto back = io::space_from_json(json::parse(io::dump(io::to_json(s))));
    CHECK(back.matrix() == s.matrix());
    CHECK(back.mode() == s.mode());
  }

  TEST_CASE("labels and mode survive") {
    const auto s = gen_threepoint(4.0);
    const auto doc = io::to_json(s);
    CHECK(doc["mode"] == "node-space");
    CHECK(doc["n"] == 3);
    CHECK(io::space_from_json(doc).labels() == std::vector<std::string>{"a", "b", "c"});
  }

  TEST_CASE("unknown keys, bad n and ragged rows are rejected with a location") {
    CHECK(format_error_of([] { io::space_from_json(json::parse(R"({"f":[[0]],"extra":1})")); })
              .find("unknown key \"extra\"") != std::string::npos);
    CHECK(format_error_of([] { io::space_from_json(json::parse(R"({"n":3,"f":[[0,1],[1,0]]})")); })
              .find("space.n") != std::string::npos);
    CHECK(format_error_of([] { io::space_from_json(json::parse(R"({"f":[[0,1],[1]]})")); })
              .find("space.f[1]") != std::string::npos);
    CHECK(format_error_of([] { io::space_from_json(json::parse(R"({"f":[[0,"x"],[1,0]]})")); })
              .find("space.f[0][1]") != std::string::npos);
    CHECK(format_error_of([] { io::space_from_json(json::parse(R"({"mode":"weird","f":[[0]]})")); })
              .find("space.mode") != std::string::npos);
  }

  TEST_CASE("CSV with line:col error locations") {
    const auto s = io::space_from_csv("0,1,2\n1,0,1\n\n2,1,0\n");
    CHECK(s.size() == 3);
    CHECK(s(0, 2) == 2.0);
    CHECK(format_error_of([] { io::space_from_csv("0,1\n1,zz\n", "m.csv"); }).find("m.csv:2:2") != std::string::npos);
    CHECK(format_error_of([] { io::space_from_csv("0,1\n1\n", "m.csv"); }).find("row 2") != std::string::npos);
  }

  TEST_CASE("files dispatch on extension") {
    TempDir dir;
    const auto csv = dir.write("a.csv", "0,3\n3,0\n");
    const auto js = dir.write("a.json", R"({"f":[[0,3],[3,0]]})");
    CHECK(io::load_space(csv).matrix() == io::load_space(js).matrix());
    CHECK_THROWS_AS(io::load_space(dir.path / "missing.json"), io::FormatError);
    CHECK_THROWS_AS(io::load_space(dir.write("bad.json", "{not json")), io::FormatError);
  }
}

TEST_SUITE("system documents") {
  TEST_CASE("round trip with explicit powers") {
    const auto sys = gen_twoline(Graph{3, {{0, 2}}}, 2.0, 0.25).with_power(PowerAssignment::explicit_powers({1, 2, 3}));
    const auto back = io::system_from_json(json::parse(io::dump(io::to_json(sys))));
    CHECK(back.space().matrix() == sys.space().matrix());
    CHECK(back.links() == sys.links());
    CHECK(back.power().powers() == std::vector<double>{1, 2, 3});
  }

  TEST_CASE("defaults: beta 1, noise 0, uniform power 1") {
    const auto sys = io::system_from_json(json::parse(R"({"space":{"f":[[0,1],[1,0]]},"links":[[0,1]]})"));
    CHECK(sys.params().beta == 1.0);
    CHECK(sys.params().noise == 0.0);
    CHECK(sys.power().is_uniform());
    CHECK(sys.power().level() == 1.0);
  }

  TEST_CASE("link-gain spaces imply one link per row") {
    const auto sys = io::system_from_json(
        json::parse(R"({"space":{"mode":"link-gain","f":[[1,0.5],[0.5,1]]},"beta":1.5})"));
    CHECK(sys.size() == 2);
    CHECK(sys.params().beta == 1.5);
  }

  TEST_CASE("node-space systems need links") {
    CHECK(format_error_of([] { io::system_from_json(json::parse(R"({"space":{"f":[[0,1],[1,0]]}})")); })
              .find("links") != std::string::npos);
  }

  TEST_CASE("space given as a path relative to the system file") {
    TempDir dir;
    dir.write("s.csv", "0,2\n2,0\n");
    const auto path = dir.write("sys.json", R"({"space":"s.csv","links":[[1,0]],"power":{"kind":"uniform","P":3}})");
    const auto sys = io::load_system(path);
    CHECK(sys.own_decay(0) == 2.0);
    CHECK(sys.power(0) == 3.0);
  }

  TEST_CASE("bad power kind and bad link shape are format errors") {
    CHECK(format_error_of([] {
            io::system_from_json(
                json::parse(R"({"space":{"f":[[0,1],[1,0]]},"links":[[0,1]],"power":{"kind":"x","P":1}})"));
          }).find("power.kind") != std::string::npos);
    CHECK(format_error_of([] {
            io::system_from_json(json::parse(R"({"space":{"f":[[0,1],[1,0]]},"links":[[0,1,2]]})"));
          }).find("links[0]") != std::string::npos);
  }
}

TEST_SUITE("graphs and generator parameters") {
  TEST_CASE("graph round trip") {
    const Graph g{4, {{0, 1}, {2, 3}}};
    const auto back = io::graph_from_json(io::to_json(g));
    CHECK(back.n == 4);
    CHECK(back.edges == g.edges);
  }

  TEST_CASE("graph with a self-loop is a format error") {
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n":2,"edges":[[1,1]]})")), io::FormatError);
  }

  TEST_CASE("each family parses its parameters") {
    const auto star = io::generator_spec_from_json("star", json::parse(R"({"k":16,"r":1})"), std::nullopt);
    CHECK(std::get<StarParams>(star.params).k == 16);
    const auto tl = io::generator_spec_from_json(
        "twoline", json::parse(R"({"graph":{"n":3,"edges":[[0,1]]},"alpha":3,"delta":0.1})"), 4);
    CHECK(std::get<TwolineParams>(tl.params).delta == 0.1);
    CHECK(tl.seed == std::uint64_t{4});
    const auto eu = io::generator_spec_from_json(
        "euclidean", json::parse(R"({"count":10,"alpha":3,"planted_collinear":true})"), 1);
    CHECK(std::get<EuclideanParams>(eu.params).random_count == 10);
    CHECK(std::get<EuclideanParams>(eu.params).planted_collinear);
    const auto pts =
        io::generator_spec_from_json("euclidean", json::parse(R"({"points":[[0,0],[1,2]]})"), std::nullopt);
    CHECK(std::get<EuclideanParams>(pts.params).points.size() == 2);
    CHECK(std::get<ThreepointParams>(io::generator_spec_from_json("threepoint", json::parse(R"({"q":65536})"), {}).params).q ==
          65536.0);
  }

  TEST_CASE("unknown family and unknown parameter are format errors") {
    CHECK_THROWS_AS(io::generator_spec_from_json("spiral", json::object(), {}), io::FormatError);
    CHECK_THROWS_AS(io::generator_spec_from_json("star", json::parse(R"({"kk":1})"), {}), io::FormatError);
    CHECK_THROWS_AS(io::generator_spec_from_json("equidecay-graph", json::object(), {}), io::FormatError);
  }
}

TEST_SUITE("reports") {
  TEST_CASE("metricity report keys") {
    const auto doc = io::to_json(analyze_metricity(gen_threepoint(16.0)));
    for (const char* key : {"zeta", "zeta_raw", "phi_mult", "phi", "zeta0", "witness_zeta", "witness_phi"})
      CHECK(doc.contains(key));
    CHECK(doc["witness_zeta"].contains("via"));
  }

  TEST_CASE("capacity report and affectance audit") {
    const auto sys = gen_equidecay_graph(Graph{3, {{0, 1}}});
    const auto r = capacity_with_oracle(sys, metric_quasi_distances(sys.space()));
    const auto doc = io::to_json(r);
    CHECK(doc["optimum"] == 2);
    CHECK(doc["separation_basis"] == "link-decay");
    const auto audit = io::affectance_audit(sys, r);
    CHECK(audit.is_array());
  }

  TEST_CASE("non-finite values become strings") {
    AmicableResult a;
    a.shrink = std::numeric_limits<double>::infinity();
    CHECK(io::to_json(a)["shrink"] == "inf");
  }

  TEST_CASE("dump is indented with a trailing newline and round-trips reals") {
    const json doc = {{"x", 0.1}, {"y", 1.0 / 3.0}};
    const auto text = io::dump(doc);
    CHECK(text.back() == '\n');
    CHECK(json::parse(text)["y"].get<double>() == 1.0 / 3.0);
  }

  TEST_CASE("write and read a file") {
    TempDir dir;
    io::write_json_file(dir.path / "r.json", json{{"a", 1}});
    CHECK(io::read_json_file(dir.path / "r.json")["a"] == 1);
    CHECK_THROWS_AS(io::write_json_file(dir.path / "no" / "such" / "r.json", json{}), io::FormatError);
  }
}
