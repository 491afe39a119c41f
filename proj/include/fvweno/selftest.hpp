#pragma once

#include <random>

#include "fvweno/conversion.hpp"
#include "fvweno/physics.hpp"
#include "fvweno/timeint.hpp"
#include "fvweno/weno.hpp"

namespace fvweno {

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Fast invariant checks over the numerical tables and kernels; used by the
// `selftest` subcommand and callable from tests.
inline std::vector<SelftestResult> run_selftests() {
    std::vector<SelftestResult> results;
    auto record = [&](const std::string& name, bool ok, const std::string& detail = "") {
        results.push_back({name, ok, detail});
    };

    // conversion coefficient tables against the derivation fractions
    {
        const auto a2p = conversion_stencil(6, ConversionSense::average_to_point);
        const auto p2a = conversion_stencil(6, ConversionSense::point_to_average);
        bool ok = a2p.cross_coeff() == real(1) / 576 && p2a.cross_coeff() == real(1) / 576;
        const int u6[5] = {-9, 116, -214, 116, -9};
        const int f6[5] = {-17, 308, -582, 308, -17};
        long sa = 0, sp = 0;
        for (int s = 0; s < 5; ++s) {
            ok = ok && a2p.axial_coeffs()[s] == -real(u6[s]) / 1920;
            ok = ok && p2a.axial_coeffs()[s] == real(f6[s]) / 5760;
            sa += a2p.axial_num[s];
            sp += p2a.axial_num[s];
        }
        ok = ok && sa == 0 && sp == 0;
        const auto a4 = conversion_stencil(4, ConversionSense::average_to_point);
        ok = ok && a4.axial_coeffs()[1] == -real(1) / 24 && a4.cross_coeff() == 0;
        record("conversion coefficient tables", ok);
    }

    // conversion polynomial exactness on a sample plane
    {
        FaceLayout lin;
        lin.dir = 0;
        lin.m = 1;
        lin.nf_lo = lin.nf_hi = 0;
        const int n = 6;
        lin.a_lo = -2;
        lin.a_hi = n + 1;
        lin.b_lo = -2;
        lin.b_hi = n + 1;
        FaceLayout lout = lin;
        lout.a_lo = lout.b_lo = 0;
        lout.a_hi = lout.b_hi = n - 1;
        const real dy = real(0.22), dz = real(0.31);
        FaceTraces in(lin), out(lout);
        for (int b = -2; b <= n + 1; ++b)
            for (int a = -2; a <= n + 1; ++a) {
                const real y = (a + real(0.5)) * dy, z = (b + real(0.5)) * dz;
                const real avg = (y * y + dy * dy / 12) * (z * z + dz * dz / 12);
                in.minus_at(0, 0, a, b) = avg;
                in.plus_at(0, 0, a, b) = avg;
            }
        average_to_point(in, 6, out);
        real worst = 0;
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const real y = (a + real(0.5)) * dy, z = (b + real(0.5)) * dz;
                worst = std::max(worst, std::abs(out.minus_at(0, 0, a, b) - y * y * z * z));
            }
        record("average_to_point exact on y^2 z^2", worst <= 1e-13,
               "max error " + std::to_string(worst));
    }

    // WENO weight normalization and constant reproduction
    {
        std::mt19937 rng(101);
        std::uniform_real_distribution<real> dist(-5, 5);
        bool ok = true;
        for (int order : {5, 7}) {
            for (int trial = 0; trial < 50; ++trial) {
                std::vector<real> w(order);
                for (auto& v : w) v = dist(rng);
                const auto ws = weno_weights(w, order);
                real sl = 0, sr = 0;
                for (int s = 0; s < ws.count; ++s) {
                    sl += ws.left[s];
                    sr += ws.right[s];
                }
                ok = ok && std::abs(sl - 1) <= 1e-14 && std::abs(sr - 1) <= 1e-14;
            }
            const std::vector<real> c(order, real(2.5));
            const auto t = reconstruct_traces(c, order);
            ok = ok && t.at_left == real(2.5) && t.at_right == real(2.5);
        }
        record("WENO-Z weights normalized", ok);
    }

    // Runge-Kutta tableaus
    {
        bool ok = true;
        std::string detail;
        try {
            for (int order : {5, 7}) {
                const auto& tab = rk_scheme(order);
                ok = ok && row_sum_residual(tab) <= 1e-14;
                ok = ok && order_condition_residual(tab, order) <= 1e-12;
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        record("Runge-Kutta order conditions", ok, detail);
    }

    // Euler eigensystem and fluxes
    {
        Euler3 sys;
        std::mt19937 rng(202);
        std::uniform_real_distribution<real> dpos(0.2, 3.0), dv(-2, 2);
        bool ok = true;
        for (int trial = 0; trial < 40 && ok; ++trial) {
            const auto u =
                sys.from_primitive(dpos(rng), {dv(rng), dv(rng), dv(rng)}, dpos(rng));
            for (int d = 0; d < 3; ++d) {
                real lam[5], L[5][5], R[5][5];
                ok = ok && sys.eigensystem(u, d, lam, L, R);
                for (int i = 0; i < 5 && ok; ++i)
                    for (int j = 0; j < 5; ++j) {
                        real acc = 0;
                        for (int k = 0; k < 5; ++k) acc += L[i][k] * R[k][j];
                        if (std::abs(acc - (i == j ? 1 : 0)) > 1e-12) {
                            ok = false;
                            break;
                        }
                    }
                const auto fh = hllc_flux(sys, u, u, d);
                const auto fp = sys.flux(u, d);
                for (int c = 0; c < 5; ++c) ok = ok && std::abs(fh[c] - fp[c]) <= 1e-12;
                ok = ok && std::abs(sys.pressure(u) - (sys.gamma - 1) *
                                                          (u[4] - sys.kinetic(u))) <= 1e-13;
            }
        }
        record("Euler eigensystem and HLLC consistency", ok);
    }

    // scalar flux consistency
    {
        Burgers3 burgers;
        LinearAdvection3 adv;
        bool ok = true;
        for (real v : {-1.3, 0.0, 0.8}) {
            ok = ok && std::abs(lax_friedrichs_flux(burgers, {v}, {v}, 0, 2)[0] -
                                real(0.5) * v * v) <= 1e-15;
            ok = ok && lax_friedrichs_flux(adv, {v}, {v}, 1, 1)[0] == v;
        }
        record("Lax-Friedrichs consistency", ok);
    }

    return results;
}

}  // namespace fvweno
