#include <catch2/catch_amalgamated.hpp>

#include "fvweno/grid.hpp"

using namespace fvweno;

namespace {

// analytic 1D average of t^a over [c - h/2, c + h/2]
double monomial_average(double c, double h, int a) {
    const double hi = c + h / 2, lo = c - h / 2;
    return (std::pow(hi, a + 1) - std::pow(lo, a + 1)) / ((a + 1) * h);
}

}  // namespace

TEST_CASE("make_grid computes spacings") {
    const auto g = make_grid({-2, -2, -2}, {2, 2, 2}, {10, 10, 10}, 5);
    CHECK(g.dx[0] == Catch::Approx(0.4).epsilon(1e-15));
    CHECK(g.dx[1] == Catch::Approx(0.4).epsilon(1e-15));
    CHECK(g.dx[2] == Catch::Approx(0.4).epsilon(1e-15));

    const auto unit = make_grid({0, 0, 0}, {1, 1, 1}, {1, 1, 1}, 0);
    CHECK(unit.dx == Vec3{1, 1, 1});
    CHECK(unit.cell_center(0, 0) == 0.5);
    CHECK(unit.cell_center(1, 0) == 0.5);
    CHECK(unit.cell_center(2, 0) == 0.5);

    const auto s = make_grid({0, 0, 0}, {1.5, 1.5, 1}, {150, 150, 100}, 6);
    CHECK(s.dx[0] == Catch::Approx(0.01).epsilon(1e-14));
    CHECK(s.dx[1] == Catch::Approx(0.01).epsilon(1e-14));
    CHECK(s.dx[2] == Catch::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("make_grid rejects bad boxes") {
    CHECK_THROWS_AS(make_grid({0, 0, 0}, {0, 1, 1}, {4, 4, 4}, 1), error);
    CHECK_THROWS_AS(make_grid({0, 0, 0}, {-1, 1, 1}, {4, 4, 4}, 1), error);
    CHECK_THROWS_AS(make_grid({0, 0, 0}, {1, 1, 1}, {0, 4, 4}, 1), error);
    CHECK_THROWS_AS(make_grid({0, 0, 0}, {1, 1, 1}, {4, 4, 4}, -1), error);
}

TEST_CASE("grid index round-trips through cell centers") {
    const auto g = make_grid({-1.5, 0.25, -3}, {2.5, 1.25, 9}, {7, 5, 11}, 3);
    for (int k = 0; k < g.n[2]; ++k)
        for (int j = 0; j < g.n[1]; ++j)
            for (int i = 0; i < g.n[0]; ++i) {
                const auto idx = g.cell_from_point(g.cell_center(0, i), g.cell_center(1, j),
                                                   g.cell_center(2, k));
                CHECK(idx == Int3{i, j, k});
            }
}

TEST_CASE("gauss9 averaging of a constant") {
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {3, 3, 3}, 0);
    const auto f = fill_from_function(g, 1, Averaging::gauss9,
                                      [](real, real, real, std::span<real> out) { out[0] = 2.5; });
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i)
                CHECK(f.at(0, i, j, k) == Catch::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("gauss9 cell average of x^2 on a centered cell is h^2/12") {
    const double h = 0.37;
    const auto g = make_grid({-h / 2, 0, 0}, {h / 2, 1, 1}, {1, 1, 1}, 0);
    const auto f = fill_from_function(
        g, 1, Averaging::gauss9, [](real x, real, real, std::span<real> out) { out[0] = x * x; });
    CHECK(f.at(0, 0, 0, 0) == Catch::Approx(h * h / 12).epsilon(1e-14));
}

TEST_CASE("gauss9 cell average of x^9 on [0,h] is h^9/10") {
    const double h = 0.6;
    const auto g = make_grid({0, 0, 0}, {h, 1, 1}, {1, 1, 1}, 0);
    const auto f = fill_from_function(
        g, 1, Averaging::gauss9,
        [](real x, real, real, std::span<real> out) { out[0] = std::pow(x, 9); });
    CHECK(f.at(0, 0, 0, 0) ==
          Catch::Approx(std::pow(h, 9) / 10).epsilon(1e-13));
}

TEST_CASE("gauss9 matches analytic averages for all monomials up to degree 9") {
    const auto g = make_grid({0.1, 0.2, 0.3}, {1.3, 1.1, 1.5}, {3, 2, 2}, 0);
    for (int a = 0; a <= 9; ++a)
        for (int b = 0; b <= 9; ++b)
            for (int c = 0; c <= 9; ++c) {
                const auto f = fill_from_function(
                    g, 1, Averaging::gauss9, [&](real x, real y, real z, std::span<real> out) {
                        out[0] = std::pow(x, a) * std::pow(y, b) * std::pow(z, c);
                    });
                for (int k = 0; k < g.n[2]; ++k)
                    for (int j = 0; j < g.n[1]; ++j)
                        for (int i = 0; i < g.n[0]; ++i) {
                            const double exact = monomial_average(g.cell_center(0, i), g.dx[0], a) *
                                                 monomial_average(g.cell_center(1, j), g.dx[1], b) *
                                                 monomial_average(g.cell_center(2, k), g.dx[2], c);
                            REQUIRE(std::abs(f.at(0, i, j, k) - exact) <= 1e-13 * std::abs(exact));
                        }
            }
}

TEST_CASE("point sampling stores the cell-center value") {
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {4, 4, 4}, 2);
    const auto f = fill_from_function(
        g, 1, Averaging::point_sample,
        [](real x, real y, real z, std::span<real> out) { out[0] = x + 10 * y + 100 * z; });
    CHECK(f.at(0, 1, 2, 3) ==
          Catch::Approx(g.cell_center(0, 1) + 10 * g.cell_center(1, 2) + 100 * g.cell_center(2, 3))
              .epsilon(1e-15));
}

TEST_CASE("fill_from_function reports the offending cell for non-finite values") {
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {2, 2, 2}, 0);
    CHECK_THROWS_WITH(
        fill_from_function(g, 1, Averaging::point_sample,
                           [](real x, real, real, std::span<real> out) {
                               out[0] = x > 0.5 ? std::numeric_limits<real>::quiet_NaN() : 0;
                           }),
        Catch::Matchers::ContainsSubstring("non-finite"));
}

TEST_CASE("conserved field layout is dense and addressable") {
    const auto g = make_grid({0, 0, 0}, {1, 1, 1}, {3, 4, 5}, 2);
    ConservedField f(g, 2);
    CHECK(f.data.size() == std::size_t(2) * 7 * 8 * 9);
    f.at(1, -2, -2, -2) = 1;
    f.at(1, 2, 3, 4) = 2;
    CHECK(f.data[f.index(1, -2, -2, -2)] == 1);
    CHECK(f.data[f.index(1, 2, 3, 4)] == 2);
    CHECK(f.index(0, -2, -2, -2) == 0);
    CHECK(f.index(0, -1, -2, -2) == 1);  // x runs fastest
    CHECK(f.interior_finite());
    f.at(0, 1, 1, 1) = std::numeric_limits<real>::infinity();
    CHECK(!f.interior_finite());
}
