#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "rumkit/framework_io.hpp"

using namespace rumkit;

TEST_CASE("serialize / parse is the identity on the built-in generators") {
    for (const auto& name : generator_names()) {
        const CrystalFramework fw = make_generator(name);
        const std::string text = serialize_framework(fw);
        const CrystalFramework back = parse_framework(text);
        CHECK(back.dim() == fw.dim());
        CHECK(back.rank() == fw.rank());
        CHECK(back.motif().vertices == fw.motif().vertices);
        CHECK(back.motif().edges == fw.motif().edges);
        CHECK(back.translations().periods() == fw.translations().periods());
        // serialization is stable byte for byte
        CHECK(serialize_framework(back) == text);
    }
}

TEST_CASE("file format details") {
    const CrystalFramework kag = make_generator("kagome");
    const auto j = nlohmann::json::parse(serialize_framework(kag));
    CHECK(j["dimension"] == 2);
    CHECK(j["radicand"] == 3);
    CHECK(j["vertices"].size() == 3);
    CHECK(j["vertices"][2][1] == "0+1/2*sqrt(3)");
    CHECK(j["edges"][0]["kappa"] == 1);  // 1-based in the file
    CHECK(j["periods"].size() == 2);

    const auto s = nlohmann::json::parse(serialize_framework(make_generator("strip")));
    CHECK(s["periods"].size() == 1);  // lattice rank below the dimension
    CHECK(s["edges"][3]["delta"] == nlohmann::json::array({1}));
}

namespace {
const char* kGrid =
    R"json({"dimension":2,"periods":[["1","0"],["0","1"]],
        "vertices":[["0","0"]],
        "edges":[{"kappa":1,"tau":1,"delta":[1,0]},{"kappa":1,"tau":1,"delta":[0,1]}]})json";
}

TEST_CASE("parsing a hand-written file") {
    const CrystalFramework fw = parse_framework(kGrid);
    CHECK(fw.vertex_count() == 1);
    CHECK(fw.edge_count() == 2);
    CHECK(fw.motif().edges[0].kappa == 0);  // converted to 0-based
    CHECK(fw.framework_radicand() == 0);
    CHECK(fw.maxwell_equilibrium());
}

TEST_CASE("structured parse errors") {
    SUBCASE("invalid JSON") {
        CHECK_THROWS_WITH_AS((void)parse_framework("{oops"), doctest::Contains("invalid JSON"),
                             ParseError);
    }
    SUBCASE("dimension mismatch in a vertex") {
        const char* text =
            R"json({"dimension":2,"periods":[["1","0"],["0","1"]],
                "vertices":[["0","0","0"]],
                "edges":[{"kappa":1,"tau":1,"delta":[1,0]}]})json";
        CHECK_THROWS_WITH_AS((void)parse_framework(text),
                             doctest::Contains("vertex 1: expected 2 coordinates, got 3"),
                             ParseError);
    }
    SUBCASE("radicand mismatch") {
        const char* text =
            R"json({"dimension":1,"radicand":2,"periods":[["1"]],
                "vertices":[["0"],["0+1/4*sqrt(3)"]],
                "edges":[{"kappa":1,"tau":2,"delta":[0]},{"kappa":1,"tau":1,"delta":[1]}]})json";
        CHECK_THROWS_WITH_AS((void)parse_framework(text), doctest::Contains("sqrt(3)"),
                             ParseError);
    }
    SUBCASE("bad scalar literal") {
        const char* text =
            R"json({"dimension":1,"periods":[["1"]],"vertices":[["1.5"]],
                "edges":[{"kappa":1,"tau":1,"delta":[1]}]})json";
        CHECK_THROWS_WITH_AS((void)parse_framework(text), doctest::Contains("vertex 1"),
                             ParseError);
    }
    SUBCASE("vertex index out of range becomes a parse error") {
        const char* text =
            R"json({"dimension":1,"periods":[["1"]],"vertices":[["0"]],
                "edges":[{"kappa":1,"tau":4,"delta":[1]}]})json";
        CHECK_THROWS_WITH_AS((void)parse_framework(text), doctest::Contains("invalid framework"),
                             ParseError);
    }
    SUBCASE("delta length must match the period count") {
        const char* text =
            R"json({"dimension":2,"periods":[["1","0"]],"vertices":[["0","0"]],
                "edges":[{"kappa":1,"tau":1,"delta":[1,0]}]})json";
        CHECK_THROWS_WITH_AS((void)parse_framework(text), doctest::Contains("delta"), ParseError);
    }
    SUBCASE("missing fields") {
        CHECK_THROWS_AS((void)parse_framework(R"json({"dimension":2})json"), ParseError);
        CHECK_THROWS_AS((void)parse_framework(R"json([1,2,3])json"), ParseError);
    }
    SUBCASE("literal with declared radicand parses") {
        const char* text =
            R"json({"dimension":1,"radicand":3,"periods":[["1"]],
                "vertices":[["1/2+0*sqrt(3)"]],
                "edges":[{"kappa":1,"tau":1,"delta":[1]}]})json";
        const CrystalFramework fw = parse_framework(text);
        CHECK(fw.motif().vertices[0][0].rational_part() == Rational(1, 2));
        CHECK(fw.motif().vertices[0][0].radicand() == 3);
    }
}
