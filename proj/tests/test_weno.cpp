#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fvweno/physics.hpp"
#include "fvweno/weno.hpp"

using namespace fvweno;

namespace {

double mono_avg(double c, double h, int a) {
    return (std::pow(c + h / 2, a + 1) - std::pow(c - h / 2, a + 1)) / ((a + 1) * h);
}

double sin_avg(double c, double h) { return (std::cos(c - h / 2) - std::cos(c + h / 2)) / h; }

}  // namespace

TEST_CASE("constant windows reproduce the constant") {
    const std::vector<double> w5(5, 3.25), w7(7, -1.5);
    auto t5 = reconstruct_traces(w5, 5);
    CHECK(t5.at_left == 3.25);
    CHECK(t5.at_right == 3.25);
    auto t7 = reconstruct_traces(w7, 7);
    CHECK(t7.at_left == -1.5);
    CHECK(t7.at_right == -1.5);
}

TEST_CASE("linear data on unit cells gives exact interface values") {
    // cell averages of q(x) = x equal the center values
    const std::vector<double> w5 = {0, 1, 2, 3, 4};
    const auto t5 = reconstruct_traces(w5, 5);
    CHECK(t5.at_right == Catch::Approx(2.5).margin(1e-12));
    CHECK(t5.at_left == Catch::Approx(1.5).margin(1e-12));

    const std::vector<double> w7 = {0, 1, 2, 3, 4, 5, 6};
    const auto t7 = reconstruct_traces(w7, 7);
    CHECK(t7.at_right == Catch::Approx(3.5).margin(1e-12));
    CHECK(t7.at_left == Catch::Approx(2.5).margin(1e-12));
}

TEST_CASE("polynomial reproduction up to degree order-1") {
    // away from critical points with h small the Z-weights sit on the ideal
    // weights to high accuracy
    const int n = 64;
    const double lo = 1.0, h = 1.0 / n;
    for (int order : {5, 7}) {
        const int maxdeg = order - 1;
        const int r = (order + 1) / 2;
        for (int deg = 0; deg <= maxdeg; ++deg) {
            std::vector<double> avg(n);
            for (int i = 0; i < n; ++i) avg[i] = mono_avg(lo + (i + 0.5) * h, h, deg);
            // normalize to unit scale: values of x^deg on [1,2] are <= 2^deg
            const double scale = std::pow(2.0, deg);
            double worst = 0;
            for (int i = r - 1; i < n - r + 1; ++i) {
                const auto t = reconstruct_traces(std::span(avg).subspan(i - r + 1, order), order);
                const double xl = lo + i * h, xr = lo + (i + 1) * h;
                worst = std::max(worst, std::abs(t.at_left - std::pow(xl, deg)) / scale);
                worst = std::max(worst, std::abs(t.at_right - std::pow(xr, deg)) / scale);
            }
            INFO("order " << order << " degree " << deg);
            CHECK(worst <= 1e-11);
        }
    }
}

TEST_CASE("step window: the smooth substencil dominates") {
    const std::vector<double> w = {0, 0, 0, 1, 1};
    const auto t = reconstruct_traces(w, 5);
    CHECK(t.at_right >= -1e-6);
    CHECK(t.at_right <= 1e-2);

    // independent evaluation of the published Z5 weight formulas
    const double b0 = 0.0;
    const double b1 = 13.0 / 12.0 + 0.25;                   // window (0,0,1)
    const double b2 = 13.0 / 12.0 * 1.0 + 0.25 * 9.0;       // window (0,1,1)
    const double tau = std::abs(b0 - b2);
    const double eps = 1e-14;
    auto zw = [&](double d, double b) { return d * (1 + std::pow(tau / (b + eps), 2)); };
    const double a0 = zw(0.1, b0), a1 = zw(0.6, b1), a2 = zw(0.3, b2);
    const double p0 = 0, p1 = 2.0 / 6.0, p2 = 4.0 / 6.0;
    const double expected = (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2);
    CHECK(t.at_right == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("nonlinear weights are positive and sum to one") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> mag(-8, 8);
    for (int order : {5, 7}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> w(order);
            for (auto& v : w) v = std::copysign(std::pow(10.0, mag(rng)), mag(rng));
            const auto ws = weno_weights(w, order);
            double sl = 0, sr = 0;
            for (int s = 0; s < ws.count; ++s) {
                CHECK(ws.left[s] > 0);
                CHECK(ws.right[s] > 0);
                sl += ws.left[s];
                sr += ws.right[s];
            }
            CHECK(std::abs(sl - 1) <= 1e-14);
            CHECK(std::abs(sr - 1) <= 1e-14);
        }
    }
}

TEST_CASE("traces scale with the data to fixed-epsilon accuracy") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (int order : {5, 7}) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> w(order), ws(order);
            for (int i = 0; i < order; ++i) w[i] = dist(rng);
            const double s = 37.5;
            for (int i = 0; i < order; ++i) ws[i] = s * w[i];
            const auto t1 = reconstruct_traces(w, order);
            const auto t2 = reconstruct_traces(ws, order);
            CHECK(std::abs(t2.at_left - s * t1.at_left) <= 1e-10 * s);
            CHECK(std::abs(t2.at_right - s * t1.at_right) <= 1e-10 * s);
        }
    }
}

TEST_CASE("window validation") {
    CHECK_THROWS_AS(reconstruct_traces(std::vector<double>(6, 0.0), 5), error);
    CHECK_THROWS_AS(reconstruct_traces(std::vector<double>(5, 0.0), 6), error);
    std::vector<double> w(7, 1.0);
    w[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(reconstruct_traces(w, 7), error);
}

TEST_CASE("characteristic reconstruction of a uniform Euler line") {
    Euler3 sys;
    const auto u = sys.from_primitive(1.3, {0.2, -0.4, 0.7}, 2.0);
    const int n = 6, g = 4;
    std::vector<Euler3::State> cells(n + 2 * g, u), minus(n + 1), plus(n + 1);
    for (int order : {5, 7}) {
        reconstruct_line_characteristic(sys, std::span<const Euler3::State>(cells), g, 0, order,
                                        std::span(minus), std::span(plus));
        for (int f = 0; f <= n; ++f)
            for (int c = 0; c < 5; ++c) {
                CHECK(minus[f][c] == Catch::Approx(u[c]).margin(1e-13));
                CHECK(plus[f][c] == Catch::Approx(u[c]).margin(1e-13));
            }
    }
}

TEST_CASE("scalar systems reduce to componentwise reconstruction") {
    Burgers3 sys;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(-1, 1);
    const int n = 8, g = 4;
    std::vector<Burgers3::State> cells(n + 2 * g), minus(n + 1), plus(n + 1);
    std::vector<double> line(n + 2 * g);
    for (int i = 0; i < n + 2 * g; ++i) {
        line[i] = dist(rng);
        cells[i] = {line[i]};
    }
    reconstruct_line_characteristic(sys, std::span<const Burgers3::State>(cells), g, 0, 5,
                                    std::span(minus), std::span(plus));
    std::vector<double> lm(n + 1), lp(n + 1);
    reconstruct_pencil_scalar<3>(line.data() + g, n, lm.data(), lp.data());
    for (int f = 0; f <= n; ++f) {
        CHECK(minus[f][0] == lm[f]);
        CHECK(plus[f][0] == lp[f]);
    }
}

TEST_CASE("characteristic traces of the Euler density wave converge at high order") {
    Euler3 sys;
    const double pi = std::acos(-1.0);
    const double k = pi / 3;
    double prev = 0;
    for (int level = 0; level < 2; ++level) {
        const int n = 16 << level;
        const int g = 4;
        const double h = 6.0 / n;
        std::vector<Euler3::State> cells(n + 2 * g), minus(n + 1), plus(n + 1);
        for (int i = -g; i < n + g; ++i) {
            // exact cell averages: conserved state is affine in rho
            const double x = -3 + (i + 0.5) * h;
            const double rho_avg = 1 + 0.2 * sin_avg(k * x, k * h);
            auto& u = cells[i + g];
            u[0] = rho_avg;
            u[1] = u[2] = u[3] = rho_avg;
            u[4] = 1.0 / 0.4 + 1.5 * rho_avg;
        }
        reconstruct_line_characteristic(sys, std::span<const Euler3::State>(cells), g, 0, 5,
                                        std::span(minus), std::span(plus));
        double err = 0;
        for (int f = 0; f <= n; ++f) {
            const double x = -3 + f * h;
            const double rho = 1 + 0.2 * std::sin(k * x);
            err = std::max(err, std::abs(minus[f][0] - rho));
            err = std::max(err, std::abs(plus[f][0] - rho));
        }
        if (level > 0) CHECK(std::log2(prev / err) >= 4.7);
        prev = err;
    }
}

TEST_CASE("characteristic line rejects bad halo and failing states") {
    Euler3 sys;
    const int n = 4, g = 2;  // halo too small for order 5
    std::vector<Euler3::State> cells(n + 2 * g, sys.from_primitive(1, {0, 0, 0}, 1));
    std::vector<Euler3::State> minus(n + 1), plus(n + 1);
    CHECK_THROWS_AS(reconstruct_line_characteristic(sys, std::span<const Euler3::State>(cells), g,
                                                    0, 5, std::span(minus), std::span(plus)),
                    error);

    const int g2 = 4;
    std::vector<Euler3::State> bad(n + 2 * g2, sys.from_primitive(1, {0, 0, 0}, 1));
    bad[g2 + 2][4] = -5;  // negative energy => negative pressure at two interfaces
    std::vector<Euler3::State> m2(n + 1), p2(n + 1);
    CHECK_THROWS_WITH(reconstruct_line_characteristic(sys, std::span<const Euler3::State>(bad), g2,
                                                      0, 5, std::span(m2), std::span(p2)),
                      Catch::Matchers::ContainsSubstring("eigensystem failure"));
}
