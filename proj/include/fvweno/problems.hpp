#pragma once

#include <functional>
#include <variant>

#include "fvweno/boundary.hpp"
#include "fvweno/physics.hpp"
#include "fvweno/solver.hpp"

namespace fvweno {

// Solution of u = 0.5 + sin(pi/3 (x+y+z - 3ut)) by Newton iteration,
// valid while the profile is single-valued.
inline real exact_burgers(real x, real y, real z, real t) {
    const real s = (x + y) + z;
    const real k = std::acos(real(-1)) / 3;
    real u = real(0.5) + std::sin(k * s);
    for (int it = 0; it < 100; ++it) {
        const real arg = k * (s - 3 * u * t);
        const real r = u - real(0.5) - std::sin(arg);
        if (std::abs(r) <= 1e-13) return u;
        const real dr = 1 + 3 * k * t * std::cos(arg);
        u -= r / dr;
    }
    std::ostringstream os;
    os << "exact_burgers: Newton did not converge at s = " << s << ", t = " << t
       << " (solution may be multivalued)";
    throw error(os.str());
}

using SystemVariant = std::variant<LinearAdvection3, Burgers3, Euler3>;

struct Problem {
    std::string name;
    Vec3 lo{}, hi{};
    int ncomp = 1;
    BoundarySpec bcs;
    FluxKind default_flux = FluxKind::lax_friedrichs;
    real default_tfinal = 1;
    Averaging init_averaging = Averaging::gauss9;
    SystemVariant system;
    std::function<void(real, real, real, std::span<real>)> initial;
    // null when the problem has no closed-form solution
    std::function<void(real, real, real, real, std::span<real>)> exact;

    bool has_exact() const { return bool(exact); }
};

inline Problem make_problem(const std::string& name) {
    const real pi = std::acos(real(-1));
    Problem p;
    p.name = name;
    if (name == "advect3d") {
        p.lo = {-2, -2, -2};
        p.hi = {2, 2, 2};
        p.ncomp = 1;
        p.bcs = BoundarySpec::all_periodic();
        p.default_flux = FluxKind::lax_friedrichs;
        p.default_tfinal = 1;
        p.system = LinearAdvection3{};
        p.exact = [pi](real x, real y, real z, real t, std::span<real> out) {
            out[0] = std::sin(pi / 2 * ((x + y) + z - 3 * t));
        };
        p.initial = [e = p.exact](real x, real y, real z, std::span<real> out) {
            e(x, y, z, 0, out);
        };
    } else if (name == "burgers3d") {
        p.lo = {-3, -3, -3};
        p.hi = {3, 3, 3};
        p.ncomp = 1;
        p.bcs = BoundarySpec::all_periodic();
        p.default_flux = FluxKind::lax_friedrichs;
        p.default_tfinal = real(0.1);
        p.system = Burgers3{};
        p.initial = [pi](real x, real y, real z, std::span<real> out) {
            out[0] = real(0.5) + std::sin(pi / 3 * ((x + y) + z));
        };
        p.exact = [](real x, real y, real z, real t, std::span<real> out) {
            out[0] = exact_burgers(x, y, z, t);
        };
    } else if (name == "euler_wave") {
        p.lo = {-3, -3, -3};
        p.hi = {3, 3, 3};
        p.ncomp = 5;
        p.bcs = BoundarySpec::all_periodic();
        p.default_flux = FluxKind::hllc;
        p.default_tfinal = 1;
        Euler3 sys;
        p.system = sys;
        p.exact = [pi, sys](real x, real y, real z, real t, std::span<real> out) {
            const real rho = 1 + real(0.2) * std::sin(pi / 3 * ((x + y) + z - 3 * t));
            const auto u = sys.from_primitive(rho, {1, 1, 1}, 1);
            for (int c = 0; c < 5; ++c) out[c] = u[c];
        };
        p.initial = [e = p.exact](real x, real y, real z, std::span<real> out) {
            e(x, y, z, 0, out);
        };
    } else if (name == "spherical_riemann") {
        p.lo = {0, 0, 0};
        p.hi = {real(1.5), real(1.5), 1};
        p.ncomp = 5;
        p.bcs.at(0, 0) = BcKind::symmetry;
        p.bcs.at(0, 1) = BcKind::outflow;
        p.bcs.at(1, 0) = BcKind::symmetry;
        p.bcs.at(1, 1) = BcKind::outflow;
        p.bcs.at(2, 0) = BcKind::reflective_wall;
        p.bcs.at(2, 1) = BcKind::reflective_wall;
        p.default_flux = FluxKind::hllc;
        p.default_tfinal = real(0.7);
        p.init_averaging = Averaging::point_sample;
        Euler3 sys;
        p.system = sys;
        p.initial = [sys](real x, real y, real z, std::span<real> out) {
            const real dz = z - real(0.4);
            const real r2 = (x * x + y * y) + dz * dz;
            const real pr = r2 <= real(0.04) ? 5 : 1;
            const auto u = sys.from_primitive(1, {0, 0, 0}, pr);
            for (int c = 0; c < 5; ++c) out[c] = u[c];
        };
    } else {
        throw error("make_problem: unknown problem '" + name + "'");
    }
    return p;
}

inline ConservedField initialize(const Problem& p, const Int3& n, int ghost) {
    const Grid3 grid = make_grid(p.lo, p.hi, n, ghost);
    return fill_from_function(grid, p.ncomp, p.init_averaging, p.initial);
}

inline ConservedField exact_field(const Problem& p, const Grid3& grid, real t) {
    if (!p.has_exact()) throw error("exact_field: problem has no exact solution");
    return fill_from_function(grid, p.ncomp, Averaging::gauss9,
                              [&](real x, real y, real z, std::span<real> out) {
                                  p.exact(x, y, z, t, out);
                              });
}

}  // namespace fvweno
