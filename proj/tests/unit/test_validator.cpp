#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "instances.hpp"
#include "oracles.hpp"
#include "star.hpp"
#include "tutte.hpp"
#include "validator.hpp"

using namespace starembed;
using namespace starembed::testing;

namespace {

Embedding square_embedding(const Instance& in) {
    return tutte_embed(in.mesh, in.polygon, uniform_weights(*in.mesh)).embedding;
}

std::size_t face_with(const Triangulation& t, Index a, Index b) {
    for (std::size_t k = 0; k < t.faces().size(); ++k) {
        const Face& f = t.faces()[k];
        if (std::count(f.begin(), f.end(), a) && std::count(f.begin(), f.end(), b)) return k;
    }
    return no_index;
}

}  // namespace

TEST_SUITE("validator") {

TEST_CASE("orientation") {
    SUBCASE("equilateral triangle: all areas positive") {
        const auto in = equilateral_one_interior();
        const auto e = tutte_embed(in.mesh, in.polygon, uniform_weights(*in.mesh)).embedding;
        const auto c = check_orientations(e);
        CHECK(c.issues.empty());
        for (double a : c.face_areas) CHECK(a > 0);
    }
    SUBCASE("collapsing u1 onto u2 degenerates their faces") {
        const auto in = square_two_interior();
        Embedding e = square_embedding(in);
        e.coordinates[4] = e.coordinates[5];
        const auto report = validate(e, in.polygon);
        CHECK_FALSE(report.valid);
        std::set<std::size_t> flagged;
        for (const FaceIssue& f : report.face_issues) {
            CHECK(f.defect == FaceDefect::degenerate);
            flagged.insert(f.face);
        }
        // Exactly the two faces on edge (u1, u2).
        CHECK(flagged.size() == 2);
        for (std::size_t k = 0; k < in.mesh->faces().size(); ++k) {
            const Face& f = in.mesh->faces()[k];
            const bool on_edge = std::count(f.begin(), f.end(), 4) && std::count(f.begin(), f.end(), 5);
            CHECK(static_cast<bool>(flagged.count(k)) == on_edge);
        }
    }
    SUBCASE("reflecting an interior vertex across a neighboring edge inverts a face") {
        const auto in = square_two_interior();
        Embedding e = square_embedding(in);
        // Reflect u1 across the boundary edge b1-b2 (y = -1).
        e.coordinates[4].y = -2.0 - e.coordinates[4].y;
        const auto c = check_orientations(e);
        const std::size_t f = face_with(*in.mesh, 0, 1);
        bool found = false;
        for (const FaceIssue& i : c.issues) {
            if (i.face == f) {
                found = true;
                CHECK(i.defect == FaceDefect::inverted);
                CHECK(i.area < 0);
            }
        }
        CHECK(found);
    }
    SUBCASE("NaN coordinates never pass") {
        const auto in = square_two_interior();
        Embedding e = square_embedding(in);
        e.coordinates[4].x = NAN;
        CHECK_FALSE(validate(e, in.polygon).valid);
    }
}

TEST_CASE("crossings") {
    SUBCASE("valid output has none") {
        const auto in = square_two_interior();
        CHECK(check_crossings(square_embedding(in)).empty());
    }
    SUBCASE("synthetic crossing pair") {
        const auto t = std::make_shared<const Triangulation>(Triangulation::build(4, {{0, 1, 2}, {0, 2, 3}}));
        Embedding e{t, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}};
        CHECK(check_crossings(e).empty());
        // Edge 0-1 becomes (0,0)-(1,1) and edge 2-3 becomes (0,1)-(1,0).
        e.coordinates = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
        const auto c = check_crossings(e);
        REQUIRE(c.size() == 1);
        CHECK(c[0].first.a == 0);
        CHECK(c[0].first.b == 1);
        CHECK(c[0].second.a == 2);
        CHECK(c[0].second.b == 3);
        CHECK(brute_force_crossings(e) == 1);
    }
    SUBCASE("segments sharing an endpoint are never reported") {
        const auto t = std::make_shared<const Triangulation>(Triangulation::build(3, {{0, 1, 2}}));
        // Collinear overlap along a shared vertex still only involves adjacent edges.
        Embedding e{t, {{0, 0}, {1, 0}, {2, 0}}, {}};
        CHECK(check_crossings(e).empty());
    }
    SUBCASE("agreement with the brute-force oracle on perturbed embeddings") {
        std::mt19937_64 rng(5);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto in = random_convex_instance(seed, 8, 15);
            Embedding e = tutte_embed(in.mesh, in.polygon, uniform_weights(*in.mesh)).embedding;
            std::normal_distribution<double> noise(0.0, 0.2);
            for (Index v : in.mesh->interior_vertices()) e.coordinates[v] = e.coordinates[v] + Vec2{noise(rng), noise(rng)};
            CHECK(check_crossings(e, 0.0).size() == brute_force_crossings(e));
        }
    }
}

TEST_CASE("reflex hull") {
    SUBCASE("convex boundary passes vacuously") {
        const auto in = square_two_interior();
        CHECK(check_reflex_hull(square_embedding(in), in.polygon).empty());
    }
    SUBCASE("L-shape star output passes") {
        const auto in = l_shape();
        const auto r = star_embed(in.mesh, in.polygon);
        const auto v = check_reflex_hull(r.embedding, in.polygon);
        REQUIRE(v.size() == 1);
        CHECK(v[0].pass);
        CHECK(v[0].max_gap < std::numbers::pi);
    }
    SUBCASE("neighbors confined to a half-plane fail") {
        const auto in = l_shape();
        Embedding e = star_embed(in.mesh, in.polygon).embedding;
        const auto v = check_reflex_hull(e, in.polygon);
        REQUIRE(v.size() == 1);
        const Index r = v[0].vertex;
        // Push every interior neighbor of the reflex vertex to the side beyond (x > 1).
        for (Index u : in.mesh->neighbors(r)) {
            if (!in.mesh->is_boundary(u)) e.coordinates[u] = {1.5, 0.5};
        }
        const auto after = check_reflex_hull(e, in.polygon);
        CHECK_FALSE(after[0].pass);
        CHECK_FALSE(validate(e, in.polygon).valid);
    }
}

TEST_CASE("overall validity") {
    SUBCASE("Tutte output on convex polygons") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto in = random_convex_instance(seed);
            CHECK(validate(tutte_embed(in.mesh, in.polygon, random_weights(*in.mesh, seed)).embedding, in.polygon).valid);
        }
    }
    SUBCASE("boundary mismatch") {
        const auto in = square_two_interior();
        Embedding e = square_embedding(in);
        e.coordinates[0].x += 1e-3;
        const auto r = validate(e, in.polygon);
        CHECK_FALSE(r.valid);
        CHECK(r.boundary_mismatch == std::vector<Index>{0});
    }
}

}  // TEST_SUITE
