#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "error_code.hpp"
#include "instances.hpp"
#include "oracles.hpp"
#include "tutte.hpp"

using namespace starembed;
using namespace starembed::testing;

namespace {

double entry(const LinearSystem& s, std::size_t r, std::size_t c) {
    return s.matrix.coeff(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

}  // namespace

TEST_SUITE("tutte") {

TEST_CASE("normalization") {
    const auto in = square_two_interior();
    const Triangulation& t = *in.mesh;
    SUBCASE("uniform weights on a degree-4 vertex") {
        const auto w = uniform_weights(t);
        const auto& row = w.normalized[t.interior_slot(4)];
        REQUIRE(row.size() == 4);
        for (double x : row) CHECK(x == 0.25);
    }
    SUBCASE("c = 1, 2, 3, 4") {
        const auto& fan = t.neighbors(4);
        const auto w = normalize_weights(t, [&](Index from, Index to) {
            if (from != 4) return 1.0;
            return static_cast<double>(std::find(fan.begin(), fan.end(), to) - fan.begin() + 1);
        });
        const auto& row = w.normalized[t.interior_slot(4)];
        CHECK(row[0] == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(row[1] == doctest::Approx(0.2).epsilon(1e-15));
        CHECK(row[2] == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(row[3] == doctest::Approx(0.4).epsilon(1e-15));
    }
    SUBCASE("non-positive weights") {
        CHECK(code_of([&] { normalize_weights(t, [](Index, Index to) { return to == 0 ? 0.0 : 1.0; }); }) ==
              ErrorCode::non_positive_weight);
        CHECK(code_of([&] { normalize_weights(t, [](Index, Index) { return -1.0; }); }) ==
              ErrorCode::non_positive_weight);
        CHECK(code_of([&] { normalize_weights(t, [](Index, Index) { return NAN; }); }) ==
              ErrorCode::non_positive_weight);
    }
    SUBCASE("random weights are reproducible and in range") {
        const auto a = random_weights(t, 42);
        const auto b = random_weights(t, 42);
        CHECK(a.raw == b.raw);
        for (const auto& row : a.raw) {
            for (double c : row) {
                CHECK(c >= 0.1);
                CHECK(c <= 10.0);
            }
        }
        CHECK(random_weights(t, 43).raw != a.raw);
    }
}

TEST_CASE("system rows") {
    SUBCASE("single interior vertex in a triangle") {
        const auto in = equilateral_one_interior();
        const auto s = assemble_tutte_system(*in.mesh, in.polygon, uniform_weights(*in.mesh));
        REQUIRE(s.size() == 4);
        CHECK(entry(s, 0, 0) == 1.0);
        for (std::size_t c = 1; c < 4; ++c) CHECK(entry(s, 0, c) == doctest::Approx(-1.0 / 3).epsilon(1e-15));
        CHECK(s.bx[0] == 0.0);
        CHECK(s.by[0] == 0.0);
    }
    SUBCASE("square with two interior vertices") {
        const auto in = square_two_interior();
        const Triangulation& t = *in.mesh;
        const auto s = assemble_tutte_system(t, in.polygon, uniform_weights(t));
        const std::size_t u1 = t.interior_slot(4);
        auto col = [&](Index v) { return t.is_boundary(v) ? 2 + t.boundary_slot(v) : t.interior_slot(v); };
        CHECK(entry(s, u1, u1) == 1.0);
        for (Index v : {0, 1, 2, 5}) CHECK(entry(s, u1, col(v)) == -0.25);
        CHECK(entry(s, u1, col(3)) == 0.0);
        // Boundary row for b1.
        const std::size_t r = col(0);
        CHECK(entry(s, r, r) == 1.0);
        CHECK(s.bx[static_cast<Eigen::Index>(r)] == -1.0);
        CHECK(s.by[static_cast<Eigen::Index>(r)] == -1.0);
        for (std::size_t c = 0; c < s.size(); ++c) {
            if (c != r) CHECK(entry(s, r, c) == 0.0);
        }
    }
}

TEST_CASE("solve") {
    SUBCASE("equilateral triangle: interior at the average") {
        const auto in = equilateral_one_interior();
        const auto e = tutte_embed(in.mesh, in.polygon, uniform_weights(*in.mesh));
        CHECK(e.report.valid);
        CHECK(e.embedding.coordinates[3].x == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(e.embedding.coordinates[3].y == doctest::Approx(std::sqrt(3.0) / 6).epsilon(1e-14));
    }
    SUBCASE("square with two interior vertices against the dense oracle") {
        const auto in = square_two_interior();
        const auto w = uniform_weights(*in.mesh);
        const auto e = tutte_embed(in.mesh, in.polygon, w);
        CHECK(e.report.valid);
        CHECK(max_coordinate_gap(e.embedding.coordinates, dense_tutte(*in.mesh, in.polygon, w)) < 1e-9);
        // The mirror across y = x swaps b2 with b4 and u1 with u2.
        const Vec2 a = e.embedding.coordinates[4], b = e.embedding.coordinates[5];
        CHECK(std::abs(a.x - b.y) < 1e-12);
        CHECK(std::abs(a.y - b.x) < 1e-12);
    }
    SUBCASE("zero right-hand side gives zero") {
        const auto in = square_two_interior();
        LinearSystem s = assemble_tutte_system(*in.mesh, in.polygon, uniform_weights(*in.mesh));
        s.bx.setZero();
        s.by.setZero();
        const auto sol = solve(s);
        for (const Vec2& p : sol.interior) {
            CHECK(p.x == 0.0);
            CHECK(p.y == 0.0);
        }
    }
    SUBCASE("dimension mismatch") {
        const auto in = square_two_interior();
        LinearSystem s = assemble_tutte_system(*in.mesh, in.polygon, uniform_weights(*in.mesh));
        s.bx.resize(3);
        CHECK(code_of([&] { solve(s); }) == ErrorCode::dimension_mismatch);
        const auto tri = equilateral_one_interior();
        CHECK(code_of([&] { assemble_tutte_system(*in.mesh, tri.polygon, uniform_weights(*in.mesh)); }) ==
              ErrorCode::dimension_mismatch);
    }
}

TEST_CASE("non-convex boundary is refused") {
    const auto in = l_shape();
    CHECK(code_of([&] { tutte_embed(in.mesh, in.polygon, uniform_weights(*in.mesh)); }) ==
          ErrorCode::boundary_not_convex);
}

TEST_CASE("random convex instances embed validly and match the oracle") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const auto in = random_convex_instance(seed);
        const auto w = random_weights(*in.mesh, seed);
        const auto e = tutte_embed(in.mesh, in.polygon, w);
        INFO("seed " << seed);
        CHECK(e.report.valid);
        CHECK(brute_force_crossings(e.embedding) == 0);
        const double scale = in.polygon.diameter();
        CHECK(max_coordinate_gap(e.embedding.coordinates, dense_tutte(*in.mesh, in.polygon, w)) < 1e-9 * scale);
        CHECK(e.embedding.metadata.method == "tutte");
    }
}

TEST_CASE("scaling the weights by a power of two leaves the embedding unchanged") {
    const auto in = random_convex_instance(7);
    const auto w = random_weights(*in.mesh, 7);
    WeightScheme scaled = normalize_weights(*in.mesh, [&](Index from, Index to) {
        const auto s = in.mesh->interior_slot(from);
        const auto& n = w.neighbors[s];
        return 4.0 * w.raw[s][std::find(n.begin(), n.end(), to) - n.begin()];
    });
    const auto a = tutte_embed(in.mesh, in.polygon, w);
    const auto b = tutte_embed(in.mesh, in.polygon, scaled);
    CHECK(a.embedding.coordinates == b.embedding.coordinates);
}

}  // TEST_SUITE
