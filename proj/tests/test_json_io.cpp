#include <catch2/catch_amalgamated.hpp>

#include "quilt/json_io.hpp"

using namespace quilt;

TEST_CASE("topology instances parse with validation") {
  Json j = Json::parse(R"({
    "kind": "topology",
    "space": {"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]},
    "value_space": {"points": ["0"], "opens": [[], ["0"]]},
    "collection": [{"name": "A", "set": ["a"]}]
  })");
  auto inst = std::get<TopologyInstance>(parse_instance(j));
  CHECK(inst.points == std::vector<std::string>{"a", "b"});
  CHECK(inst.space.opens.size() == 3);
  CHECK(inst.collection.members[0].set == BitSet64{1});

  j["space"]["opens"] = Json::array({Json::array()});
  CHECK_THROWS_AS(parse_instance(j), SchemaError);

  Json bad = Json::parse(R"({"kind": "nope"})");
  CHECK_THROWS_AS(parse_instance(bad), SchemaError);
}

TEST_CASE("non-topologies and unknown points are schema errors") {
  Json j = Json::parse(R"({
    "kind": "topology",
    "space": {"points": ["a", "b"], "opens": [[], ["a"], ["b"], ["a", "b"]]},
    "value_space": {"points": ["0"], "opens": [[], ["0"]]},
    "collection": [{"name": "A", "set": ["zzz"]}]
  })");
  CHECK_THROWS_AS(parse_instance(j), SchemaError);

  Json nontopo = j;
  nontopo["collection"] = Json::parse(R"([{"name":"A","set":["a"]}])");
  nontopo["space"]["opens"] = Json::parse(R"([[], ["a"], ["b"]])");
  CHECK_THROWS_AS(parse_instance(nontopo), SchemaError);
}

TEST_CASE("uv instances demand members inside the ground set") {
  Json j = Json::parse(R"({
    "kind": "uv_desk",
    "points": ["p", "q"],
    "u_members": [["p"]],
    "v_members": [["p"], ["q"]],
    "collection": [{"name": "A", "set": ["q"]}]
  })");
  CHECK_THROWS_AS(parse_instance(j), SchemaError);
  j["collection"][0]["set"] = Json::array({"p"});
  auto inst = std::get<UvDeskInstance>(parse_instance(j));
  CHECK(inst.u.size() == 1);
  CHECK(inst.v.size() == 2);
}

TEST_CASE("prf instances build working glue instances") {
  Json j = Json::parse(R"({
    "kind": "prf",
    "arity": 1,
    "pieces": [
      {"name": "low", "member": {"type": "list", "tuples": [[0], [1]]},
       "phi": {"type": "table", "entries": [{"x": [0], "y": 7},
                                            {"x": [1], "y": 8, "halt": 3}]}},
      {"name": "high", "member": {"type": "progression",
                                  "start": 2, "stride": 1, "count": 3},
       "phi": {"type": "projection", "index": 0}}
    ]
  })");
  auto inst = std::get<PrfInstance>(parse_instance(j));
  auto g = inst.to_glue();
  CHECK(glue_eval(g, {0}, 20) == std::optional<std::uint64_t>{7});
  CHECK(glue_eval(g, {1}, 20) == std::optional<std::uint64_t>{8});
  CHECK(glue_eval(g, {3}, 20) == std::optional<std::uint64_t>{3});
  CHECK_FALSE(glue_eval(g, {9}, 50).has_value());

  Json bad = j;
  bad["pieces"][0]["phi"] = Json::parse(R"({"type": "mystery"})");
  CHECK_THROWS_AS(parse_instance(bad), SchemaError);

  Json badarity = j;
  badarity["pieces"][0]["member"]["tuples"] = Json::parse(R"([[0, 1]])");
  CHECK_THROWS_AS(parse_instance(badarity), SchemaError);
}

TEST_CASE("real instances parse rational cut points") {
  Json j = Json::parse(R"({"kind": "real", "cut_points": ["-1/2", "3/2"]})");
  auto inst = std::get<RealInstance>(parse_instance(j));
  CHECK(inst.cut_points[0] == Rational(-1, 2));
  CHECK(inst.cut_points[1] == Rational(3, 2));

  Json bad = Json::parse(R"({"kind": "real", "cut_points": ["1", "1"]})");
  CHECK_THROWS_AS(parse_instance(bad), SchemaError);
  Json badrat = Json::parse(R"({"kind": "real", "cut_points": ["x"]})");
  CHECK_THROWS_AS(parse_instance(badrat), SchemaError);
}

TEST_CASE("sample instance files load") {
  for (const char* name :
       {"footnote1.json", "indiscrete-sierpinski.json", "evens-odds.json",
        "parity-complements.json", "uv-split.json", "uv-lumped.json",
        "partition.json"}) {
    CHECK_NOTHROW(load_instance(std::string(QUILT_SAMPLES_DIR) + "/" + name));
  }
  CHECK_THROWS_AS(load_instance("/nonexistent.json"), SchemaError);
}
