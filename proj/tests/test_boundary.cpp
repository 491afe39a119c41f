#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fvweno/boundary.hpp"

using namespace fvweno;

namespace {

ConservedField scalar_field(const Grid3& g) { return ConservedField(g, 1); }

}  // namespace

TEST_CASE("periodic fill wraps a line") {
    const auto g = make_grid({0, 0, 0}, {3, 4, 5}, {3, 4, 5}, 2);
    auto f = scalar_field(g);
    const double a = 1, b = 2, c = 3;
    for (int k = 0; k < 5; ++k)
        for (int j = 0; j < 4; ++j) {
            f.at(0, 0, j, k) = a;
            f.at(0, 1, j, k) = b;
            f.at(0, 2, j, k) = c;
        }
    Burgers3 sys;
    fill_ghosts(f, BoundarySpec::all_periodic(), sys);
    // ghosts along x: (b, c | a, b, c | a, b)
    CHECK(f.at(0, -2, 1, 1) == b);
    CHECK(f.at(0, -1, 1, 1) == c);
    CHECK(f.at(0, 3, 1, 1) == a);
    CHECK(f.at(0, 4, 1, 1) == b);
}

TEST_CASE("periodic corner ghosts equal the wrapped interior") {
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {4, 4, 4}, 2);
    auto f = scalar_field(g);
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) f.at(0, i, j, k) = dist(rng);
    Burgers3 sys;
    fill_ghosts(f, BoundarySpec::all_periodic(), sys);
    CHECK(f.at(0, -1, -1, -1) == f.at(0, 3, 3, 3));
    CHECK(f.at(0, -2, 5, -1) == f.at(0, 2, 1, 3));
    CHECK(f.at(0, 4, -2, 5) == f.at(0, 0, 2, 1));
}

TEST_CASE("periodic fill is idempotent") {
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {4, 3, 5}, 2);
    auto f = scalar_field(g);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (int k = 0; k < g.n[2]; ++k)
        for (int j = 0; j < g.n[1]; ++j)
            for (int i = 0; i < g.n[0]; ++i) f.at(0, i, j, k) = dist(rng);
    Burgers3 sys;
    fill_ghosts(f, BoundarySpec::all_periodic(), sys);
    auto twice = f;
    fill_ghosts(twice, BoundarySpec::all_periodic(), sys);
    CHECK(twice.data == f.data);
}

TEST_CASE("reflective wall mirrors and negates the normal momentum") {
    Euler3 sys;
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {4, 4, 4}, 2);
    ConservedField f(g, 5);
    const auto u = sys.from_primitive(1.2, {0.3, -0.1, 1.0}, 2.0);
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i)
                for (int c = 0; c < 5; ++c) f.at(c, i, j, k) = u[c];

    BoundarySpec spec = BoundarySpec::all_periodic();
    spec.at(2, 0) = BcKind::reflective_wall;
    spec.at(2, 1) = BcKind::reflective_wall;
    fill_ghosts(f, spec, sys);

    // first ghost layer below z=0 mirrors the first interior layer with w -> -w
    CHECK(f.at(0, 1, 1, -1) == u[0]);
    CHECK(f.at(1, 1, 1, -1) == u[1]);
    CHECK(f.at(2, 1, 1, -1) == u[2]);
    CHECK(f.at(3, 1, 1, -1) == -u[3]);
    CHECK(f.at(4, 1, 1, -1) == u[4]);
    CHECK(f.at(3, 1, 1, -2) == -u[3]);  // second layer mirrors cell 1
    CHECK(f.at(3, 1, 1, 4) == -u[3]);
}

TEST_CASE("mirror fills preserve positivity") {
    Euler3 sys;
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {4, 4, 4}, 2);
    ConservedField f(g, 5);
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> dp(0.1, 3.0), dv(-2, 2);
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) {
                const auto u = sys.from_primitive(dp(rng), {dv(rng), dv(rng), dv(rng)}, dp(rng));
                for (int c = 0; c < 5; ++c) f.at(c, i, j, k) = u[c];
            }
    BoundarySpec spec;
    for (int d = 0; d < 3; ++d) {
        spec.at(d, 0) = BcKind::symmetry;
        spec.at(d, 1) = BcKind::reflective_wall;
    }
    fill_ghosts(f, spec, sys);
    for (int k = -2; k < 6; ++k)
        for (int j = -2; j < 6; ++j)
            for (int i = -2; i < 6; ++i) {
                Euler3::State u;
                for (int c = 0; c < 5; ++c) u[c] = f.at(c, i, j, k);
                REQUIRE(sys.validity(u) == nullptr);
            }
}

TEST_CASE("outflow copies the nearest interior layer") {
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {3, 3, 3}, 2);
    auto f = scalar_field(g);
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) f.at(0, i, j, k) = 10 * i + j + 0.5 * k;
    BoundarySpec spec = BoundarySpec::all_periodic();
    spec.at(0, 0) = BcKind::outflow;
    spec.at(0, 1) = BcKind::outflow;
    Burgers3 sys;
    fill_ghosts(f, spec, sys);
    for (int layer = 1; layer <= 2; ++layer) {
        CHECK(f.at(0, -layer, 1, 2) == f.at(0, 0, 1, 2));
        CHECK(f.at(0, 2 + layer, 1, 2) == f.at(0, 2, 1, 2));
    }
}

TEST_CASE("a constant field stays constant under every boundary kind") {
    Euler3 sys;
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {4, 4, 4}, 2);
    ConservedField f(g, 5);
    const auto u = sys.from_primitive(1, {0, 0, 0}, 1);  // at rest: mirror-invariant
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i)
                for (int c = 0; c < 5; ++c) f.at(c, i, j, k) = u[c];

    BoundarySpec spec;
    spec.at(0, 0) = BcKind::symmetry;
    spec.at(0, 1) = BcKind::outflow;
    spec.at(1, 0) = BcKind::periodic;
    spec.at(1, 1) = BcKind::periodic;
    spec.at(2, 0) = BcKind::reflective_wall;
    spec.at(2, 1) = BcKind::reflective_wall;
    fill_ghosts(f, spec, sys);
    for (int k = -2; k < 6; ++k)
        for (int j = -2; j < 6; ++j)
            for (int i = -2; i < 6; ++i)
                for (int c = 0; c < 5; ++c) REQUIRE(f.at(c, i, j, k) == u[c]);
}

TEST_CASE("boundary validation") {
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {4, 4, 4}, 2);
    auto f = scalar_field(g);
    Burgers3 sys;
    BoundarySpec incomplete;
    incomplete.at(0, 0) = BcKind::periodic;
    CHECK_THROWS_WITH(fill_ghosts(f, incomplete, sys),
                      Catch::Matchers::ContainsSubstring("unspecified"));

    BoundarySpec oneside = BoundarySpec::all_periodic();
    oneside.at(1, 1) = BcKind::outflow;
    CHECK_THROWS_WITH(fill_ghosts(f, oneside, sys),
                      Catch::Matchers::ContainsSubstring("periodic"));
}
