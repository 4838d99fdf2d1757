#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "support/minischema.hpp"

using nlohmann::json;

namespace {

json load_schema(const std::string& name) {
    std::filesystem::path p = std::filesystem::path(CORRLAB_SCHEMA_DIR) / name;
    std::ifstream in(p);
    REQUIRE(in.good());
    return json::parse(in);
}

}  // namespace

TEST_CASE("the checker accepts matching documents and names each violation") {
    json schema = json::parse(R"({
        "type": "object",
        "required": ["a", "b"],
        "additionalProperties": false,
        "properties": {
            "a": {"type": "integer"},
            "b": {"type": ["string", "null"]},
            "c": {"enum": ["x", "y"]},
            "d": {"type": "array", "items": {"type": "number"}}
        }
    })");

    CHECK(!minischema::violation(schema, json::parse(R"({"a": 3, "b": null})")));
    CHECK(!minischema::violation(schema, json::parse(R"({"a": 3, "b": "s", "c": "y", "d": [1, 2.5]})")));

    // each kind of mismatch is reported
    CHECK(minischema::violation(schema, json::parse(R"({"a": 3.5, "b": "s"})")));
    CHECK(minischema::violation(schema, json::parse(R"({"a": 3})")));
    CHECK(minischema::violation(schema, json::parse(R"({"a": 3, "b": "s", "extra": 1})")));
    CHECK(minischema::violation(schema, json::parse(R"({"a": 3, "b": "s", "c": "z"})")));
    CHECK(minischema::violation(schema, json::parse(R"({"a": 3, "b": "s", "d": [1, "oops"]})")));
    CHECK(minischema::violation(schema, json::parse(R"([1, 2])")));

    // integers pass where a number is expected, not vice versa
    CHECK(!minischema::violation(json::parse(R"({"type": "number"})"), json(3)));
    CHECK(minischema::violation(json::parse(R"({"type": "integer"})"), json(3.5)));
}

TEST_CASE("every shipped schema parses as an object schema") {
    const std::vector<std::string> names = {
        "decompose.json", "density.json",     "forms-average.json",
        "gauge.json",     "gowers.json",      "prcheck.json",
        "recurrence2.json", "recurrence3.json", "spectral.json",
    };
    for (const auto& name : names) {
        CAPTURE(name);
        json schema = load_schema(name);
        CHECK(schema.is_object());
        CHECK(schema["type"] == "object");
        CHECK(schema.contains("required"));
        CHECK(schema.contains("properties"));
    }
}

TEST_CASE("canned outputs validate against their schemas") {
    json pr = json::parse(R"({"admissible": true, "discriminants": [4, 4, 16]})");
    auto err = minischema::violation(load_schema("prcheck.json"), pr);
    CAPTURE(err ? *err : std::string());
    CHECK(!err);

    json gauge = json::parse(
        R"({"sign_value": 2.0, "hilbert_value": 2.828, "ratio": 1.414, "infinite": false})");
    err = minischema::violation(load_schema("gauge.json"), gauge);
    CAPTURE(err ? *err : std::string());
    CHECK(!err);

    json gowers = json::parse(
        R"({"N": 50, "chi": "liouville", "method": "fourier", "modulus": 2003,
            "norm_u2": 0.25, "norm_u3": 0.5})");
    err = minischema::violation(load_schema("gowers.json"), gowers);
    CAPTURE(err ? *err : std::string());
    CHECK(!err);

    // and a wrong document is rejected
    json bad = json::parse(R"({"admissible": "yes", "discriminants": [4, 4, 16]})");
    CHECK(minischema::violation(load_schema("prcheck.json"), bad));
}
