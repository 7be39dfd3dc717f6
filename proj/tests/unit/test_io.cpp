/**
 * @file test_io.cpp
 * @brief Document round trips, schema errors and the shipped fixture files.
 */
#include "ecc/errors.hpp"
#include "ecc/fixtures.hpp"
#include "ecc/io.hpp"
#include "ecc/sampling.hpp"

#include <doctest.h>

using namespace ecc;
using io::Json;

namespace {

std::string fixture_path(const std::string& name) { return std::string(ECC_SOURCE_DIR) + "/fixtures/" + name; }

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("shipped fixture files equal the built-in fixtures") {
    for (const auto& fx : cone_fixtures()) {
        std::string file = fx.name;
        for (auto& c : file) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        CAPTURE(file);
        const ConeSpec loaded = io::cone_from_json(io::load(fixture_path(file + ".cone")));
        CHECK(ConePresentation(loaded).spec() == ConePresentation(fx.spec).spec());
        CHECK(loaded.description == fx.spec.description);
    }
    const BratteliDiagram car = io::diagram_from_json(io::load(fixture_path("car.bd")));
    CHECK(car.matrices == fixture_car().matrices);
    CHECK(car.levels == fixture_car().levels);
    const BratteliDiagram two = io::diagram_from_json(io::load(fixture_path("two_component.bd")));
    CHECK(two.matrices == fixture_two_component().matrices);
}

TEST_CASE("cone documents round trip") {
    for (const auto& fx : cone_fixtures()) {
        const ConePresentation p(fx.spec);
        const Json j = io::cone_to_json(p.spec());
        const Json again = io::parse_text(io::dump(j), "mem");
        CHECK(again == j);
        CHECK(ConePresentation(io::cone_from_json(again)).spec() == p.spec());
    }
}

TEST_CASE("value documents round trip") {
    for (const auto& fx : cone_fixtures()) {
        const ConePresentation p(fx.spec);
        Rng rng(77);
        for (int i = 0; i < 100; ++i) {
            const ConeElement y = random_element(p, rng);
            REQUIRE(io::element_from_json(p, io::parse_text(io::dump(io::element_to_json(p, y)), "m")) == y);
            const LscFn f = random_lsc(p, rng);
            REQUIRE(io::function_from_json(p, io::parse_text(io::dump(io::function_to_json(p, f)), "m")) == f);
            const RieszVector v = random_vector(p, rng);
            REQUIRE(io::riesz_from_json(p, io::riesz_to_json(p, v)) == v);
            const RawSum r = random_raw_sum(p, rng);
            const RawSum back = io::raw_from_json(p, io::raw_to_json(p, r));
            REQUIRE(back.base == r.base);
            REQUIRE(back.terms == r.terms);
        }
        const CuMorphism phi{{random_affine(p, rng), random_affine(p, rng)}};
        CHECK(io::morphism_from_json(p, io::morphism_to_json(p, phi)) == phi);
    }
    const std::vector<ExtVector> vs{{1, ExtScalar::infinity()}, {Rational(1, 3), 0}};
    CHECK(io::vectors_from_json(io::vectors_to_json(vs)) == vs);
}

TEST_CASE("element document from the text") {
    const ConePresentation lex(fixture_elex());
    const ConeElement y = io::element_from_json(lex, Json::parse(R"({"support":"w","coeffs":{"x2":"3/2"}})"));
    CHECK(y == canonicalize(lex, lex.idem("w"), {{lex.gen("x2"), Rational(3, 2)}}));
}

TEST_CASE("schema violations name the field") {
    const ConePresentation lex(fixture_elex());
    CHECK(error_of([&] { io::element_from_json(lex, Json::parse(R"({"support":"w","coeffs":{"x2":"0"}})")); })
              .find("'coeffs.x2'") != std::string::npos);
    CHECK(error_of([&] { io::element_from_json(lex, Json::parse(R"({"support":"w","coeffs":{},"extra":1})")); })
              .find("'extra': unknown field") != std::string::npos);
    CHECK(error_of([&] { io::function_from_json(lex, Json::parse(R"({"support":"w"})")); })
              .find("'values': missing field") != std::string::npos);
    CHECK(error_of([&] { io::element_from_json(lex, Json::parse(R"({"support":"nowhere","coeffs":{}})")); })
              .find("'support'") != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
    const std::string text = "{\n  \"a\": [1, 2,,]\n}";
    const std::string msg = error_of([&] { io::parse_text(text, "doc.elt"); });
    CHECK(msg.rfind("doc.elt:2:", 0) == 0);
    CHECK(msg.find("syntax error") != std::string::npos);
    CHECK_THROWS_AS(io::read_file("/nonexistent/file.cone"), PreconditionError);
}

TEST_CASE("systems and diagrams round trip") {
    const BratteliImport imp = bratteli_import(fixture_car(), 4);
    CHECK(io::system_from_json(io::system_to_json(imp.cones)) == imp.cones);
    CHECK(io::system_from_json(io::system_to_json(imp.groups)) == imp.groups);
    const BratteliDiagram d = fixture_two_component();
    const BratteliDiagram back = io::diagram_from_json(io::diagram_to_json(d));
    CHECK(back.levels == d.levels);
    CHECK(back.matrices == d.matrices);
}

TEST_CASE("factorization documents round trip") {
    const ConePresentation e1(fixture_e1());
    LscFn id;
    id.support = e1.bot();
    id.values[e1.gen("u")] = 1;
    const CuMorphism phi{{id, id}};
    const Factorization f = triangle(e1, phi, {{1, 0}, {0, 2}});
    const Factorization g = io::factorization_from_json(e1, io::factorization_to_json(e1, f));
    CHECK(g.Q == f.Q);
    CHECK(g.psi == f.psi);
    CHECK(g.segments == f.segments);
    CHECK(descent_log(g) == descent_log(f));
}
