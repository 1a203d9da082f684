#include <doctest.h>

#include <cmath>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error_code.hpp"
#include "instances.hpp"
#include "io.hpp"
#include "star.hpp"
#include "tutte.hpp"

using namespace starembed;
using namespace starembed::testing;
using json = nlohmann::json;

namespace {

std::string square_document() {
    return R"({"version": "1", "vertices": 6,
      "faces": [[0,1,4],[1,2,4],[2,5,4],[2,3,5],[3,0,5],[0,4,5]],
      "boundary": [{"v":0,"x":-1,"y":-1},{"v":1,"x":1,"y":-1},{"v":2,"x":1,"y":1},{"v":3,"x":-1,"y":1}]})";
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("minimal document: diagonal-split square") {
    const auto p = parse_problem(R"({"version":"1","vertices":4,"faces":[[0,1,2],[0,2,3]],
        "boundary":[{"v":0,"x":0,"y":0},{"v":1,"x":1,"y":0},{"v":2,"x":1,"y":1},{"v":3,"x":0,"y":1}]})");
    CHECK(p.mesh->vertex_count() == 4);
    CHECK(p.mesh->faces().size() == 2);
    CHECK(find_dividing_edges(*p.mesh).size() == 1);
}

TEST_CASE("square document parses to the canonical instance and round-trips") {
    const auto p = parse_problem(square_document());
    const auto ref = square_two_interior();
    CHECK(p.mesh->boundary_cycle() == ref.mesh->boundary_cycle());
    CHECK(p.mesh->edges().size() == ref.mesh->edges().size());
    CHECK(p.polygon.points() == ref.polygon.points());
    const std::string text = write_problem(p);
    const auto again = parse_problem(text);
    CHECK(write_problem(again) == text);
}

TEST_CASE("clockwise input is reoriented") {
    const auto p = parse_problem(R"({"version":"1","vertices":3,"faces":[[0,2,1]],
        "boundary":[{"v":0,"x":0,"y":0},{"v":1,"x":1,"y":0},{"v":2,"x":0,"y":1}]})");
    CHECK(signed_area(p.polygon.points()) > 0);
}

TEST_CASE("errors") {
    CHECK(code_of([] { parse_problem("{\"version\": \"1\", "); }) == ErrorCode::parse_error);
    CHECK(code_of([] { parse_problem("[]"); }) == ErrorCode::schema_error);
    CHECK(code_of([] { parse_problem(R"({"version":"2","vertices":3,"faces":[[0,1,2]],"boundary":[]})"); }) ==
          ErrorCode::schema_error);
    CHECK(code_of([] { parse_problem(R"({"vertices":3,"faces":[[0,1,2]],"boundary":[]})"); }) ==
          ErrorCode::schema_error);
    auto doc = json::parse(square_document());
    doc["extra"] = 1;
    CHECK(code_of([&] { parse_problem(doc.dump()); }) == ErrorCode::schema_error);
    CHECK(code_of([&] { parse_problem(doc.dump(), false); }) == ErrorCode::ok);
    doc.erase("extra");
    doc["faces"][2] = {2, 9, 4};
    try {
        parse_problem(doc.dump());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::domain_error);
        CHECK(std::string(e.what()).find("face 2") != std::string::npos);
    }
    doc = json::parse(square_document());
    doc["boundary"].erase(3);
    CHECK(code_of([&] { parse_problem(doc.dump()); }) == ErrorCode::domain_error);
}

TEST_CASE("weight specs") {
    auto doc = json::parse(square_document());
    doc["weights"] = {{"scheme", "random"}, {"seed", 9}};
    auto p = parse_problem(doc.dump());
    REQUIRE(p.options.weights.has_value());
    CHECK(make_weights(*p.mesh, *p.options.weights).raw == random_weights(*p.mesh, 9).raw);

    json c = json::array();
    for (Index v : p.mesh->interior_vertices()) {
        for (Index u : p.mesh->neighbors(v)) c.push_back({v, u, 2.0});
    }
    doc["weights"] = {{"scheme", "explicit"}, {"c", c}};
    p = parse_problem(doc.dump());
    const auto w = make_weights(*p.mesh, *p.options.weights);
    CHECK(w.normalized == uniform_weights(*p.mesh).normalized);
    c.erase(0);
    doc["weights"]["c"] = c;
    p = parse_problem(doc.dump());
    CHECK(code_of([&] { make_weights(*p.mesh, *p.options.weights); }) == ErrorCode::schema_error);
    doc["weights"] = {{"scheme", "magic"}};
    CHECK(code_of([&] { parse_problem(doc.dump()); }) == ErrorCode::schema_error);
}

TEST_CASE("embedding documents") {
    SUBCASE("round trip keeps coordinates bit for bit") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto in = random_star_instance(seed);
            const auto r = star_embed(in.mesh, in.polygon);
            const std::string text = write_embedding(r.embedding, in.polygon, r.report);
            const auto back = parse_embedding(text);
            CHECK(back.embedding.coordinates == r.embedding.coordinates);
            CHECK(back.polygon.points() == in.polygon.points());
            CHECK(back.embedding.metadata.epsilon == r.embedding.metadata.epsilon);
            CHECK(write_embedding(back.embedding, back.polygon, r.report) == text);
        }
    }
    SUBCASE("inverted face is listed") {
        const auto in = square_two_interior();
        auto e = tutte_embed(in.mesh, in.polygon, uniform_weights(*in.mesh)).embedding;
        e.coordinates[4].y = -2.0 - e.coordinates[4].y;
        const auto report = validate(e, in.polygon);
        const auto doc = json::parse(write_embedding(e, in.polygon, report));
        CHECK_FALSE(doc["report"]["valid"].get<bool>());
        bool inverted = false;
        for (const auto& f : doc["report"]["face_issues"]) {
            if (f["kind"] == "inverted") {
                inverted = true;
                CHECK(f["face"].get<std::size_t>() < in.mesh->faces().size());
            }
        }
        CHECK(inverted);
    }
    SUBCASE("no interior vertices") {
        const auto p = parse_problem(R"({"version":"1","vertices":4,"faces":[[0,1,2],[0,2,3]],
            "boundary":[{"v":0,"x":0,"y":0},{"v":1,"x":1,"y":0},{"v":2,"x":1,"y":1},{"v":3,"x":0,"y":1}]})");
        const Embedding e = make_embedding(p.mesh, p.polygon, {}, {"boundary", 0.0, {}, {}, {}});
        const auto report = validate(e, p.polygon);
        CHECK(report.valid);
        const auto doc = json::parse(write_embedding(e, p.polygon, report));
        CHECK(doc["coordinates"].size() == 4);
        CHECK(doc["report"]["valid"].get<bool>());
    }
}

TEST_CASE("svg") {
    SUBCASE("single triangle") {
        const auto t = std::make_shared<const Triangulation>(Triangulation::build(3, {{0, 1, 2}}));
        const Embedding e{t, {{0, 0}, {1, 0}, {0, 1}}, {}};
        const std::string svg = render_svg(e);
        CHECK(count(svg, "<line ") == 3);
        CHECK(count(svg, "<circle ") == 3);
        CHECK(svg.rfind("<?xml", 0) == 0);
    }
    SUBCASE("kernel overlay on the L-shape") {
        const auto in = l_shape();
        const auto r = star_embed(in.mesh, in.polygon);
        SvgOptions o;
        o.kernel = compute_kernel(in.polygon);
        const std::string svg = render_svg(r.embedding, o);
        // Domain [0,2]^2 with a 5% margin on an 800 canvas: x = 400/1.1 * (u + 0.1).
        std::smatch m;
        REQUIRE(std::regex_search(svg, m, std::regex("class=\"kernel\" points=\"([^\"]*)\"")));
        std::istringstream pts(m[1].str());
        std::string pair;
        std::set<std::string> corners;
        while (pts >> pair) corners.insert(pair);
        CHECK(corners == std::set<std::string>{"36.364,763.636", "400.000,763.636", "400.000,400.000", "36.364,400.000"});
    }
    SUBCASE("fixed viewport gives identical framing") {
        const auto in = square_two_interior();
        const auto e = tutte_embed(in.mesh, in.polygon, uniform_weights(*in.mesh)).embedding;
        SvgOptions o;
        o.viewport = Viewport{{-2, -2}, {2, 2}};
        Embedding moved = e;
        moved.coordinates[4] = moved.coordinates[4] + Vec2{0.1, 0};
        const std::string a = render_svg(e, o), b = render_svg(moved, o);
        // Boundary circles are drawn at the same pixels.
        CHECK(a.substr(0, a.find("<line")) == b.substr(0, b.find("<line")));
        CHECK(render_svg(e, o) == a);
    }
}

}  // TEST_SUITE
