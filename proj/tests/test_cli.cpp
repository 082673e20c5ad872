#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "quilt/rational.hpp"

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(QUILT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WEXITSTATUS(status);
  return res;
}

std::string sample(const std::string& name) {
  return std::string(QUILT_SAMPLES_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("the footnote instance splits weak and strong verdicts") {
  auto strong =
      run_cli("check-sjp " + sample("footnote1.json") + " --class constant-range");
  REQUIRE(strong.exit_code == 0);
  json s = json::parse(strong.out);
  CHECK(s.at("verdict") == false);
  CHECK(s.at("counterexample") ==
        json({{"0", "a"}, {"2", "b"}}));

  auto weak = run_cli("check-sjp " + sample("footnote1.json") +
                      " --class constant-range --mode jp");
  REQUIRE(weak.exit_code == 0);
  CHECK(json::parse(weak.out).at("verdict") == true);
}

TEST_CASE("theorem reports match the named instances") {
  auto topo = run_cli("check-theorem " + sample("indiscrete-sierpinski.json"));
  REQUIRE(topo.exit_code == 0);
  json t = json::parse(topo.out);
  CHECK(t.at("criterion") == false);
  CHECK(t.at("bruteforce") == false);
  CHECK(t.at("converse_applicable") == true);

  auto split = run_cli("check-theorem " + sample("uv-split.json"));
  json s = json::parse(split.out);
  CHECK(s.at("criterion") == true);
  CHECK(s.at("bruteforce") == true);

  auto lumped = run_cli("check-theorem " + sample("uv-lumped.json"));
  json l = json::parse(lumped.out);
  CHECK(l.at("criterion") == false);
  CHECK(l.at("bruteforce") == false);
}

TEST_CASE("criterion reports carry the separator table") {
  auto res = run_cli("check-sep " + sample("uv-split.json"));
  REQUIRE(res.exit_code == 0);
  json r = json::parse(res.out);
  CHECK(r.at("holds") == true);
  CHECK(r.at("separators").size() == 2);

  auto part = run_cli("check-sep " + sample("partition.json"));
  REQUIRE(part.exit_code == 0);
  CHECK(json::parse(part.out).at("holds") == true);
}

TEST_CASE("glued evaluation through instance files") {
  auto even = run_cli("glue-eval " + sample("evens-odds.json") +
                      " --x 4 --budget 64");
  REQUIRE(even.exit_code == 0);
  CHECK(json::parse(even.out).at("value") == 0);

  auto odd = run_cli("glue-eval " + sample("evens-odds.json") +
                     " --x 3 --budget 64");
  CHECK(json::parse(odd.out).at("value") == 1);

  auto ceven = run_cli("glue-eval " + sample("parity-complements.json") +
                       " --x 4 --budget 256");
  REQUIRE(ceven.exit_code == 0);
  CHECK(json::parse(ceven.out).at("value") == 0);
  auto codd = run_cli("glue-eval " + sample("parity-complements.json") +
                      " --x 3 --budget 256");
  CHECK(json::parse(codd.out).at("value") == 1);

  auto off = run_cli("glue-eval " + sample("evens-odds.json") +
                     " --x 77 --budget 64");
  CHECK(off.exit_code == 4);
  CHECK(json::parse(off.out).at("status") == "diverged");
}

TEST_CASE("arctangent enclosure through the CLI") {
  auto res = run_cli("arctan --x 1 --eps 1/1000000");
  REQUIRE(res.exit_code == 0);
  json r = json::parse(res.out);
  quilt::Rational lo = quilt::parse_rational(r.at("interval").at("lo"));
  quilt::Rational hi = quilt::parse_rational(r.at("interval").at("hi"));
  // pi/4 = 0.7853981633974483...
  CHECK(lo <= quilt::Rational(785398164, 1000000000));
  CHECK(quilt::Rational(785398163, 1000000000) <= hi);
  CHECK(hi - lo <= quilt::Rational(1, 1000000));
}

TEST_CASE("the undecidable diagonal reports budget exhaustion") {
  auto res = run_cli("cases --x 2 --t 2 --y 0 --z 1 --eps 1/2 --budget 9000");
  CHECK(res.exit_code == 4);
  json r = json::parse(res.out);
  CHECK(r.at("status") == "budget-exhausted");

  auto ok = run_cli("cases --x 1 --t 2 --y 5 --z 9 --eps 1/1000000");
  REQUIRE(ok.exit_code == 0);
  json k = json::parse(ok.out);
  quilt::Rational lo = quilt::parse_rational(k.at("interval").at("lo"));
  quilt::Rational hi = quilt::parse_rational(k.at("interval").at("hi"));
  CHECK(lo < 5);
  CHECK(5 < hi);
}

TEST_CASE("schema errors exit with code 2") {
  CHECK(run_cli("check-sep /nonexistent.json").exit_code == 2);
  CHECK(run_cli("check-sep " + sample("evens-odds.json")).exit_code == 2);
  CHECK(run_cli("glue-eval " + sample("evens-odds.json") +
                " --x 1 --x 2 --budget 8")
            .exit_code == 2);
}

TEST_CASE("reports are byte-deterministic") {
  auto a = run_cli("check-theorem " + sample("indiscrete-sierpinski.json"));
  auto b = run_cli("check-theorem " + sample("indiscrete-sierpinski.json"));
  CHECK(a.out == b.out);
  auto c = run_cli("arctan --x -5 --eps 1/100000");
  auto d = run_cli("arctan --x -5 --eps 1/100000");
  CHECK(c.out == d.out);
}
