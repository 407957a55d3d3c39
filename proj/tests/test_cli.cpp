#include <doctest.h>

#include <czek/cli.hpp>
#include <czek/io.hpp>

#include <unistd.h>

#include <filesystem>
#include <sstream>

namespace fs = std::filesystem;
using czek::cli_main;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("czek_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const char* kDist = ",a,b,c,d,e\n"
                    "a,0,1,6,7,8\n"
                    "b,1,0,5,6,7\n"
                    "c,6,5,0,1,2\n"
                    "d,7,6,1,0,1\n"
                    "e,8,7,2,1,0\n";

}  // namespace

TEST_CASE("identity diagram writes a valid SVG") {
  TempDir tmp;
  const auto r = run({"diagram", "--dataset", "blocks3", "--order", "identity", "--n-classes", "5", "--out",
                      tmp / "d.svg"});
  CHECK(r.code == 0);
  const auto svg = czek::read_text_file(tmp / "d.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("breaks must start at zero") {
  const auto r = run({"diagram", "--dataset", "chain8", "--breaks", "5,10"});
  CHECK(r.code == 2);
  CHECK(r.err.find("start with 0") != std::string::npos);
}

TEST_CASE("conflicting discretization flags") {
  CHECK(run({"diagram", "--dataset", "chain8", "--n-classes", "4", "--proportions", "0.5,0.5"}).code == 2);
  CHECK(run({"diagram", "--dataset", "chain8", "--original-diagram", "--n-classes", "4"}).code == 2);
  CHECK(run({"diagram", "--dataset", "chain8", "--column-grouping", "1,2"}).code == 2);
  CHECK(run({"diagram", "--dataset", "chain8", "--original-diagram", "--column-grouping", "1,2"}).code == 0);
}

TEST_CASE("bad invocations exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"diagram"}).code == 2);
  CHECK(run({"diagram", "--input", "/nonexistent.csv"}).code == 2);
  CHECK(run({"diagram", "--dataset", "chain8", "--order", "bogus"}).code == 2);
  CHECK(run({"diagram", "--dataset", "chain8", "--out", "x.png"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("criteria on a distance file") {
  TempDir tmp;
  czek::write_text_file(tmp / "w.csv", kDist);
  czek::write_text_file(tmp / "p.csv", "order\n1\n2\n3\n4\n5\n");
  const auto r = run({"criteria", "--input", tmp / "w.csv", "--order-file", tmp / "p.csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("path_length  8\n") != std::string::npos);
  CHECK(r.out.find("um ") != std::string::npos);
  CHECK(r.out.find("two_sum ") != std::string::npos);
}

TEST_CASE("identical invocations give identical bytes") {
  TempDir tmp;
  for (const std::string order : {"olo", "qap2sum", "ga"}) {
    std::vector<std::string> contents;
    for (int rep = 0; rep < 2; ++rep) {
      const std::string stem = tmp / (order + std::to_string(rep));
      const auto r = run({"diagram", "--dataset", "blocks3", "--order", order, "--seed", "7", "--ga-generations",
                          "50", "--out", stem + ".svg", "--out", stem + ".json", "--out", stem + ".txt"});
      REQUIRE(r.code == 0);
      contents.push_back(czek::read_text_file(stem + ".svg") + czek::read_text_file(stem + ".json") +
                         czek::read_text_file(stem + ".txt") + r.out);
    }
    CHECK(contents[0] == contents[1]);
  }
}

TEST_CASE("reorder recomputes the criteria and round-trips the permutation") {
  TempDir tmp;
  czek::write_text_file(tmp / "w.csv", kDist);
  REQUIRE(run({"diagram", "--input", tmp / "w.csv", "--input-kind", "dist", "--out", tmp / "d.json"}).code == 0);
  czek::write_text_file(tmp / "p.csv", "order\n2\n1\n3\n4\n5\n");
  const auto r = run({"reorder", "--json", tmp / "d.json", "--new-order", tmp / "p.csv", "--out", tmp / "r.json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(czek::read_text_file(tmp / "r.json"));
  CHECK(doc["order"] == nlohmann::json::array({2, 1, 3, 4, 5}));
  CHECK(doc["criteria"]["path_length"].get<double>() == doctest::Approx(9.0).epsilon(1e-12));

  const auto c = run({"criteria", "--input", tmp / "w.csv", "--order-file", tmp / "p.csv"});
  CHECK(c.out.find("path_length  9\n") != std::string::npos);

  CHECK(run({"reorder", "--json", tmp / "d.json", "--new-order", tmp / "w.csv"}).code == 2);
}

TEST_CASE("datasets subcommand") {
  auto r = run({"datasets", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("blocks3") != std::string::npos);
  CHECK(r.out.find("skulls_distances") != std::string::npos);

  r = run({"datasets", "dump", "chain8"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",p1,p2") < r.out.find('\n'));
  CHECK(r.out.find("p8,7,6,5,4,3,2,1,0\n") != std::string::npos);
  CHECK(!r.err.empty());

  CHECK(run({"datasets", "dump", "nope"}).code == 2);
}

TEST_CASE("text output and raw printing") {
  const auto r = run({"diagram", "--dataset", "chain8", "--order", "identity", "--print-raw"});
  CHECK(r.code == 0);
  CHECK(r.out.find("classes") != std::string::npos);
  CHECK(r.out.find("path_length") != std::string::npos);
}
