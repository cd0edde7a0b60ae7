#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "orbicoh/loader.hpp"
#include "orbicoh/presentations.hpp"
#include "orbicoh/ring.hpp"

using namespace orbicoh;

namespace {

std::string data_path(const std::string& name) {
    return std::string(ORBICOH_DATA_DIR) + "/" + name;
}

std::string write_tmp(const std::string& name, const std::string& body) {
    const auto p = std::filesystem::temp_directory_path() / ("orbicoh_loader_" + name);
    std::ofstream out(p);
    out << body;
    out.close();
    return p.string();
}

// minimal raw atlas document, valid as written; tests perturb copies of it
const char* kRawSkeleton = R"({
  "schema": 1,
  "kind": "raw_atlas",
  "ambient_dim": 1,
  "sectors": [
    {"label": "0", "model": {"kind": "circle"}, "iota": 0, "weight": 1}
  ],
  "multisectors": [
    {"labels": ["0", "0", "0"], "model": {"kind": "circle"}, "weight": 1}
  ]
})";

} // namespace

TEST_CASE("shipped sphere quotient document") {
    const InputDocument doc = load_input(data_path("s3_mod_z3.yaml"));
    CHECK(doc.kind == "sphere_quotient");
    CHECK(doc.name == "s3-mod-z3");
    CHECK(doc.oracle.empty());

    SphereQuotientPresentation p;
    p.complex_coords = 2;
    p.group = GroupSpec{{3}};
    p.weights = {{1, 0}};
    CHECK(doc.atlas == sphere_quotient_atlas(p));
}

TEST_CASE("shipped weighted projective document") {
    const InputDocument doc = load_input(data_path("wps_1_2_2_3_3_3.yaml"));
    CHECK(doc.kind == "wps_circle");
    CHECK(doc.atlas == wps_circle_atlas(WpsCirclePresentation{{1, 2, 2, 3, 3, 3}}));
}

TEST_CASE("raw atlas document round-trips the generated one") {
    const InputDocument raw = load_input(data_path("s3_mod_z3_raw.json"));
    const InputDocument gen = load_input(data_path("s3_mod_z3.yaml"));
    CHECK(raw.kind == "raw_atlas");
    CHECK(raw.atlas == gen.atlas);
}

TEST_CASE("trivial group document") {
    const InputDocument doc = load_input(data_path("trivial_s3.yaml"));
    CHECK(doc.atlas.sectors.size() == 1);
    CHECK(doc.atlas.multisectors.size() == 1);
    CHECK(doc.atlas.untwisted().weight == Rational(1));
}

TEST_CASE("standalone oracle document") {
    const EulerOracle o = load_oracle(data_path("wps_euler_oracle.yaml"));
    REQUIRE(o.table.size() == 2);
    CHECK(o.lookup(OracleKey{{"1/3", "1/3", "1/3"}, "1⊗s"}) == Rational(1, 9));
    CHECK(o.lookup(OracleKey{{"2/3", "2/3", "2/3"}, "h⊗s"}) == Rational(1, 3));
    CHECK(o.on_missing == MissingPolicy::report);
    CHECK(o.normalization.has_value());
    // the shipped oracle completes the shipped example
    const InputDocument doc = load_input(data_path("wps_1_2_2_3_3_3.yaml"));
    const RingSystem sys(doc.atlas, o);
    CHECK(sys.structure_constants().complete());
}

TEST_CASE("kind mix-ups are rejected") {
    CHECK_THROWS_MATCHES(load_input(data_path("wps_euler_oracle.yaml")), validation_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "this document is an oracle")));
    CHECK_THROWS_MATCHES(load_oracle(data_path("s3_mod_z3.yaml")), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("expected 'euler_oracle'")));
}

TEST_CASE("file level errors") {
    CHECK_THROWS_MATCHES(
        load_input("/nonexistent/path.yaml"), validation_error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("cannot open file")));
    const std::string bad_json = write_tmp("bad.json", "{ not json");
    CHECK_THROWS_MATCHES(
        load_input(bad_json), validation_error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("invalid JSON")));
    const std::string bad_yaml = write_tmp("bad.yaml", "a: [1, 2\nb: }");
    CHECK_THROWS_MATCHES(
        load_input(bad_yaml), validation_error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("invalid YAML")));
}

TEST_CASE("schema and key validation") {
    const std::string no_schema =
        write_tmp("noschema.yaml", "kind: wps_circle\nweights: [1, 1]\n");
    CHECK_THROWS_MATCHES(load_input(no_schema), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("missing key 'schema'")));
    const std::string wrong_schema =
        write_tmp("schema2.yaml", "schema: 2\nkind: wps_circle\nweights: [1, 1]\n");
    CHECK_THROWS_MATCHES(load_input(wrong_schema), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("unsupported schema version")));
    const std::string unknown_kind =
        write_tmp("kind.yaml", "schema: 1\nkind: hexagon\nweights: [1, 1]\n");
    CHECK_THROWS_MATCHES(load_input(unknown_kind), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("unknown document kind")));
    const std::string extra_key = write_tmp(
        "extra.yaml", "schema: 1\nkind: wps_circle\nweights: [1, 1]\ncolour: green\n");
    CHECK_THROWS_MATCHES(load_input(extra_key), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("unknown key 'colour'")));
    const std::string bad_weights =
        write_tmp("weights.yaml", "schema: 1\nkind: wps_circle\nweights: [1, x]\n");
    CHECK_THROWS_MATCHES(load_input(bad_weights), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("$.weights")));
}

TEST_CASE("error locations point into the document") {
    Json j = Json::parse(kRawSkeleton);
    j["sectors"][0]["iota"] = "1/0";
    const std::string path = write_tmp("loc.json", j.dump());
    try {
        load_input(path);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("$.sectors[0].iota") != std::string::npos);
        CHECK(msg.find(path) != std::string::npos);
    }
}

TEST_CASE("raw atlas label checks") {
    {
        Json j = Json::parse(kRawSkeleton);
        j["group"] = Json::array({3});
        j["sectors"][0]["label"] = Json::array({5}); // out of range mod 3
        CHECK_THROWS_AS(load_input(write_tmp("label_range.json", j.dump())), validation_error);
    }
    {
        Json j = Json::parse(kRawSkeleton);
        j["sectors"][0]["label"] = "7/5"; // rational labels live in [0, 1)
        CHECK_THROWS_AS(load_input(write_tmp("label_frac.json", j.dump())), validation_error);
    }
    {
        Json j = Json::parse(kRawSkeleton);
        j["sectors"][0]["label"] = "0.5";
        CHECK_THROWS_AS(load_input(write_tmp("label_junk.json", j.dump())), validation_error);
    }
}

TEST_CASE("raw atlas multisector weight defaults to the first sector's weight") {
    Json j = Json::parse(R"({
      "schema": 1,
      "kind": "raw_atlas",
      "ambient_dim": 1,
      "sectors": [
        {"label": "0", "model": {"kind": "circle"}, "iota": 0, "weight": "1/4"}
      ],
      "multisectors": [
        {"labels": ["0", "0", "0"], "model": {"kind": "circle"}}
      ]
    })");
    const InputDocument doc = load_input(write_tmp("defweight.json", j.dump()));
    REQUIRE(doc.atlas.multisectors.size() == 1);
    CHECK(doc.atlas.multisectors[0].weight == Rational(1, 4));
}

TEST_CASE("raw atlas rejects inconsistent geometry") {
    // the validator runs on loaded atlases: a twisted sector with zero shift
    Json j = Json::parse(R"({
      "schema": 1,
      "kind": "raw_atlas",
      "ambient_dim": 3,
      "sectors": [
        {"label": "0", "model": {"kind": "odd_sphere", "dim": 3}, "iota": 0, "weight": 1},
        {"label": "1/2", "model": {"kind": "circle"}, "iota": 0, "weight": "1/2"}
      ]
    })");
    CHECK_THROWS_AS(load_input(write_tmp("twisted_zero.json", j.dump())), validation_error);
}

TEST_CASE("custom model with an explicit ring table") {
    Json j = Json::parse(kRawSkeleton);
    j["ambient_dim"] = 3;
    j["sectors"][0]["model"] = Json::parse(R"({
      "kind": "custom",
      "name": "pretzel",
      "dim": 3,
      "ring": {
        "gens": [
          {"label": "e", "degree": 0},
          {"label": "a", "degree": 1},
          {"label": "b", "degree": 2},
          {"label": "w", "degree": 3}
        ],
        "top_integral": "1/6",
        "products": [
          {"left": "a", "right": "b", "value": {"w": 1}},
          {"left": "a", "right": "a", "value": {}},
          {"left": "b", "right": "b", "value": {}},
          {"left": "a", "right": "w", "value": {}},
          {"left": "b", "right": "w", "value": {}},
          {"left": "w", "right": "w", "value": {}}
        ]
      }
    })");
    j["multisectors"][0]["model"] = j["sectors"][0]["model"];
    const InputDocument doc = load_input(write_tmp("custom_ring.json", j.dump()));
    const RingTable t = ring_table(doc.atlas.sectors[0].model);
    REQUIRE(t.gens.size() == 4);
    CHECK(t.top_integral == Rational(1, 6));
    // the omitted mirror entry was filled in with the Koszul sign
    const int a = t.gen_index("a");
    const int b = t.gen_index("b");
    const int w = t.gen_index("w");
    CHECK(t.prod.at({a, b}) == ModelClass{{w, Rational(1)}});
    CHECK(t.prod.at({b, a}) == ModelClass{{w, Rational(1)}}); // even times odd: no sign
    // unit rows were filled in too
    CHECK(t.prod.at({0, w}) == ModelClass{{w, Rational(1)}});
    CHECK(t.prod.at({w, 0}) == ModelClass{{w, Rational(1)}});
}

TEST_CASE("custom model rejections") {
    const auto with_model = [](const std::string& model) {
        Json j = Json::parse(kRawSkeleton);
        j["ambient_dim"] = 3;
        j["sectors"][0]["model"] = Json::parse(model);
        j["multisectors"][0]["model"] = j["sectors"][0]["model"];
        return j;
    };
    // neither betti nor ring
    Json bare = with_model(R"({"kind": "custom", "dim": 3})");
    CHECK_THROWS_MATCHES(load_input(write_tmp("custom_bare.json", bare.dump())), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("needs 'betti' or 'ring'")));
    // betti contradicting the ring table
    Json clash = with_model(R"({
      "kind": "custom", "dim": 3,
      "betti": {"0": 1, "1": 2, "3": 1},
      "ring": {
        "gens": [
          {"label": "e", "degree": 0},
          {"label": "a", "degree": 1},
          {"label": "w", "degree": 3}
        ],
        "top_integral": 1,
        "products": [
          {"left": "a", "right": "a", "value": {}},
          {"left": "a", "right": "w", "value": {}},
          {"left": "w", "right": "w", "value": {}}
        ]
      }
    })");
    CHECK_THROWS_MATCHES(load_input(write_tmp("custom_clash.json", clash.dump())),
                         validation_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "betti data disagrees with the ring table")));
    // no unit class
    Json unitless = with_model(R"({"kind": "custom", "dim": 3, "betti": {"0": 2, "3": 2}})");
    CHECK_THROWS_MATCHES(
        load_input(write_tmp("custom_unitless.json", unitless.dump())), validation_error,
        Catch::Matchers::MessageMatches(
            Catch::Matchers::ContainsSubstring("single class in degree 0")));
    // two generators claiming the top degree
    Json twotop = with_model(R"({
      "kind": "custom", "dim": 3,
      "ring": {
        "gens": [
          {"label": "e", "degree": 0},
          {"label": "w", "degree": 3},
          {"label": "w2", "degree": 3}
        ],
        "top_integral": 1
      }
    })");
    CHECK_THROWS_MATCHES(load_input(write_tmp("custom_twotop.json", twotop.dump())),
                         validation_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "more than one generator of top degree")));
    // duplicate product entries
    Json dup = with_model(R"({
      "kind": "custom", "dim": 3,
      "ring": {
        "gens": [
          {"label": "e", "degree": 0},
          {"label": "w", "degree": 3}
        ],
        "top_integral": 1,
        "products": [
          {"left": "w", "right": "w", "value": {}},
          {"left": "w", "right": "w", "value": {}}
        ]
      }
    })");
    CHECK_THROWS_MATCHES(load_input(write_tmp("custom_dup.json", dup.dump())), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("duplicate product entry")));
}

TEST_CASE("inline oracle entries") {
    const std::string body = R"(schema: 1
kind: wps_circle
weights: [1, 2, 2, 3, 3, 3]
euler_oracle:
  on_missing: error
  entries:
    - labels: ["1/3", "1/3", "1/3"]
      monomial: "1⊗s"
      value: "1/9"
)";
    const InputDocument doc = load_input(write_tmp("inline_oracle.yaml", body));
    CHECK(doc.oracle.table.size() == 1);
    CHECK(doc.oracle.on_missing == MissingPolicy::error);
    CHECK(doc.oracle.lookup(OracleKey{{"1/3", "1/3", "1/3"}, "1⊗s"}) == Rational(1, 9));
}

TEST_CASE("oracle body rejections") {
    const auto oracle_doc = [](const std::string& entries) {
        return "schema: 1\nkind: euler_oracle\n" + entries;
    };
    // conflicting duplicate entries
    const std::string dup = oracle_doc(R"(entries:
  - labels: ["1/3", "1/3", "1/3"]
    monomial: "1⊗s"
    value: "1/9"
  - labels: ["1/3", "1/3", "1/3"]
    monomial: "1⊗s"
    value: "1/7"
)");
    CHECK_THROWS_AS(load_oracle(write_tmp("oracle_dup.yaml", dup)), oracle_error);
    // agreeing duplicates are tolerated
    const std::string same = oracle_doc(R"(entries:
  - labels: ["1/3", "1/3", "1/3"]
    monomial: "1⊗s"
    value: "1/9"
  - labels: ["1/3", "1/3", "1/3"]
    monomial: "1⊗s"
    value: "1/9"
)");
    CHECK(load_oracle(write_tmp("oracle_same.yaml", same)).table.size() == 1);
    // bad policy string
    const std::string policy = oracle_doc("on_missing: explode\nentries: []\n");
    CHECK_THROWS_MATCHES(load_oracle(write_tmp("oracle_policy.yaml", policy)), validation_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "expected 'report' or 'error'")));
    // labels must come in threes
    const std::string pair = oracle_doc(R"(entries:
  - labels: ["1/3", "1/3"]
    monomial: "1⊗s"
    value: 1
)");
    CHECK_THROWS_MATCHES(load_oracle(write_tmp("oracle_pair.yaml", pair)), validation_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("list of three labels")));
}

TEST_CASE("yaml scalars keep exact integer and fraction values") {
    const std::string body = R"(schema: 1
kind: raw_atlas
ambient_dim: 1
sectors:
  - label: "0"
    model: {kind: circle}
    iota: 0
    weight: "1/3"
multisectors:
  - labels: ["0", "0", "0"]
    model: {kind: circle}
    weight: "1/3"
)";
    const InputDocument doc = load_input(write_tmp("scalars.yaml", body));
    CHECK(doc.atlas.sectors[0].weight == Rational(1, 3));
    // huge integers overflow int64 scalars and must be rejected, not mangled
    const std::string huge = R"(schema: 1
kind: wps_circle
weights: [1, 99999999999999999999999999]
)";
    CHECK_THROWS_AS(load_input(write_tmp("huge.yaml", huge)), validation_error);
}
