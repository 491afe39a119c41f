#pragma once

#include <algorithm>
#include <sstream>

#include "fvweno/core.hpp"

namespace fvweno {

// A conservation-law system provides the physical flux per direction, a
// directional wave-speed bound, a state-validity check, the mirror rule for
// wall/symmetry boundaries and (for systems reconstructed in characteristic
// space) the eigensystem of the directional flux Jacobian.
template <class S>
concept ConservationLaw = requires(const S sys, const typename S::State u, int dir) {
    { S::ncomp } -> std::convertible_to<int>;
    { sys.flux(u, dir) } -> std::same_as<typename S::State>;
    { sys.max_wavespeed(u, dir) } -> std::convertible_to<real>;
    { sys.validity(u) } -> std::convertible_to<const char*>;
    { sys.reflect(u, dir) } -> std::same_as<typename S::State>;
};

// u_t + u_x + u_y + u_z = 0
struct LinearAdvection3 {
    static constexpr int ncomp = 1;
    static constexpr bool has_eigensystem = false;
    using State = std::array<real, 1>;

    State flux(const State& u, int) const { return {u[0]}; }
    real max_wavespeed(const State&, int) const { return 1; }
    const char* validity(const State&) const { return nullptr; }
    State reflect(const State& u, int) const { return u; }
    static const char* component_name(int) { return "u"; }
};

// u_t + (u^2/2)_x + (u^2/2)_y + (u^2/2)_z = 0
struct Burgers3 {
    static constexpr int ncomp = 1;
    static constexpr bool has_eigensystem = false;
    using State = std::array<real, 1>;

    State flux(const State& u, int) const { return {real(0.5) * u[0] * u[0]}; }
    real max_wavespeed(const State& u, int) const { return std::abs(u[0]); }
    const char* validity(const State&) const { return nullptr; }
    State reflect(const State& u, int) const { return u; }
    static const char* component_name(int) { return "u"; }
};

// Compressible Euler equations with the ideal-gas equation of state,
// conserved state (rho, mom_x, mom_y, mom_z, E).
struct Euler3 {
    static constexpr int ncomp = 5;
    static constexpr bool has_eigensystem = true;
    using State = std::array<real, 5>;

    real gamma = real(1.4);

    // Kinetic-energy sums are grouped (x^2 + y^2) + z^2 throughout so that
    // x<->y transposed states produce bitwise-transposed results.
    real kinetic(const State& u) const {
        return real(0.5) * ((u[1] * u[1] + u[2] * u[2]) + u[3] * u[3]) / u[0];
    }
    real pressure(const State& u) const { return (gamma - 1) * (u[4] - kinetic(u)); }
    real sound_speed(const State& u) const { return std::sqrt(gamma * pressure(u) / u[0]); }
    real velocity(const State& u, int d) const { return u[1 + d] / u[0]; }

    const char* validity(const State& u) const {
        if (!(u[0] > 0)) return "non-positive density";
        if (!(pressure(u) > 0)) return "non-positive pressure";
        return nullptr;
    }

    State flux(const State& u, int d) const {
        const real un = u[1 + d] / u[0];
        const real p = pressure(u);
        State f;
        f[0] = u[1 + d];
        for (int i = 0; i < 3; ++i) f[1 + i] = u[1 + i] * un + (i == d ? p : real(0));
        f[4] = (u[4] + p) * un;
        return f;
    }

    real max_wavespeed(const State& u, int d) const {
        return std::abs(velocity(u, d)) + sound_speed(u);
    }

    State reflect(const State& u, int d) const {
        State r = u;
        r[1 + d] = -r[1 + d];
        return r;
    }

    // Eigendecomposition of the directional flux Jacobian at `u`:
    // A_d = R diag(lam) L with L R = I. Returns false for inadmissible
    // states. Row/column order: (u_n - c, u_n, u_n, u_n, u_n + c) with the
    // two shear fields ordered by ascending tangential axis.
    bool eigensystem(const State& u, int d, real* lam, real L[5][5], real R[5][5]) const {
        const real rho = u[0];
        const real p = pressure(u);
        if (!(rho > 0) || !(p > 0) || !finite(p)) return false;
        const real vx = u[1] / rho, vy = u[2] / rho, vz = u[3] / rho;
        const real q2 = (vx * vx + vy * vy) + vz * vz;
        const real c = std::sqrt(gamma * p / rho);
        const real H = (u[4] + p) / rho;
        const real b1 = (gamma - 1) / (c * c);
        const real b2 = real(0.5) * b1 * q2;

        const auto tan = tangential_axes(d);
        const int cn = 1 + d, ct1 = 1 + tan[0], ct2 = 1 + tan[1];
        const real un = u[cn] / rho, ut1 = u[ct1] / rho, ut2 = u[ct2] / rho;

        lam[0] = un - c;
        lam[1] = lam[2] = lam[3] = un;
        lam[4] = un + c;

        const int gmap[5] = {0, cn, ct1, ct2, 4};

        const real Rl[5][5] = {{1, 1, 0, 0, 1},
                               {un - c, un, 0, 0, un + c},
                               {ut1, ut1, 1, 0, ut1},
                               {ut2, ut2, 0, 1, ut2},
                               {H - un * c, real(0.5) * q2, ut1, ut2, H + un * c}};
        const real Ll[5][5] = {
            {real(0.5) * (b2 + un / c), real(-0.5) * (b1 * un + 1 / c), real(-0.5) * b1 * ut1,
             real(-0.5) * b1 * ut2, real(0.5) * b1},
            {1 - b2, b1 * un, b1 * ut1, b1 * ut2, -b1},
            {-ut1, 0, 1, 0, 0},
            {-ut2, 0, 0, 1, 0},
            {real(0.5) * (b2 - un / c), real(-0.5) * (b1 * un - 1 / c), real(-0.5) * b1 * ut1,
             real(-0.5) * b1 * ut2, real(0.5) * b1}};

        for (int f = 0; f < 5; ++f)
            for (int cl = 0; cl < 5; ++cl) {
                L[f][gmap[cl]] = Ll[f][cl];
                R[gmap[cl]][f] = Rl[cl][f];
            }
        return true;
    }

    static const char* component_name(int c) {
        static const char* names[5] = {"rho", "mom_x", "mom_y", "mom_z", "energy"};
        return names[c];
    }

    State from_primitive(real rho, const Vec3& v, real p) const {
        State u;
        u[0] = rho;
        u[1] = rho * v[0];
        u[2] = rho * v[1];
        u[3] = rho * v[2];
        u[4] = p / (gamma - 1) + real(0.5) * rho * ((v[0] * v[0] + v[1] * v[1]) + v[2] * v[2]);
        return u;
    }
};

// Primitive view of an Euler state.
struct EulerPrim {
    real rho;
    Vec3 v;
    real p;
};

inline EulerPrim to_primitive(const Euler3& sys, const Euler3::State& u) {
    return {u[0], {u[1] / u[0], u[2] / u[0], u[3] / u[0]}, sys.pressure(u)};
}

// --- numerical fluxes ---

template <ConservationLaw Sys>
inline typename Sys::State lax_friedrichs_flux(const Sys& sys, const typename Sys::State& um,
                                               const typename Sys::State& up, int dir,
                                               real alpha) {
    if (!(alpha >= 0)) throw error("lax_friedrichs_flux: alpha must be >= 0");
    const auto fm = sys.flux(um, dir);
    const auto fp = sys.flux(up, dir);
    typename Sys::State out;
    for (int c = 0; c < Sys::ncomp; ++c)
        out[c] = real(0.5) * (fm[c] + fp[c]) - real(0.5) * alpha * (up[c] - um[c]);
    return out;
}

// Three-wave HLLC flux for the Euler equations with Davis wave-speed bounds.
// Returns false if either input state is inadmissible or the estimated wave
// speeds are not ordered S_L <= S_* <= S_R.
inline bool hllc_flux_checked(const Euler3& sys, const Euler3::State& ul,
                              const Euler3::State& ur, int dir, Euler3::State& out) {
    if (sys.validity(ul) || sys.validity(ur)) return false;
    const real rl = ul[0], rr = ur[0];
    const real pl = sys.pressure(ul), pr = sys.pressure(ur);
    const real cl = std::sqrt(sys.gamma * pl / rl), cr = std::sqrt(sys.gamma * pr / rr);
    const int cn = 1 + dir;
    const real vl = ul[cn] / rl, vr = ur[cn] / rr;

    const real sl = std::min(vl - cl, vr - cr);
    const real sr = std::max(vl + cl, vr + cr);
    const real num = (pr - pl) + (rl * vl * (sl - vl) - rr * vr * (sr - vr));
    const real den = rl * (sl - vl) - rr * (sr - vr);
    if (den == 0 || !finite(num / den)) return false;
    const real sm = num / den;
    if (!(sl <= sm && sm <= sr)) return false;

    if (sl >= 0) {
        out = sys.flux(ul, dir);
        return true;
    }
    if (sr <= 0) {
        out = sys.flux(ur, dir);
        return true;
    }

    const auto star = [&](const Euler3::State& u, real s, real v, real p) {
        const real rho = u[0];
        const real factor = rho * (s - v) / (s - sm);
        Euler3::State w;
        w[0] = factor;
        for (int i = 0; i < 3; ++i)
            w[1 + i] = factor * (i == dir ? sm : u[1 + i] / rho);
        w[4] = factor * (u[4] / rho + (sm - v) * (sm + p / (rho * (s - v))));
        return w;
    };

    if (sm >= 0) {
        const auto f = sys.flux(ul, dir);
        const auto w = star(ul, sl, vl, pl);
        for (int c = 0; c < 5; ++c) out[c] = f[c] + sl * (w[c] - ul[c]);
    } else {
        const auto f = sys.flux(ur, dir);
        const auto w = star(ur, sr, vr, pr);
        for (int c = 0; c < 5; ++c) out[c] = f[c] + sr * (w[c] - ur[c]);
    }
    return true;
}

inline Euler3::State hllc_flux(const Euler3& sys, const Euler3::State& ul,
                               const Euler3::State& ur, int dir) {
    if (const char* why = sys.validity(ul)) {
        std::ostringstream os;
        os << "hllc_flux: invalid left state (" << why << ")";
        throw error(os.str());
    }
    if (const char* why = sys.validity(ur)) {
        std::ostringstream os;
        os << "hllc_flux: invalid right state (" << why << ")";
        throw error(os.str());
    }
    Euler3::State out;
    if (!hllc_flux_checked(sys, ul, ur, dir, out))
        throw error("hllc_flux: degenerate wave-speed ordering");
    return out;
}

// Generic physical flux entry point with validity diagnosis.
template <ConservationLaw Sys>
inline typename Sys::State physical_flux(const Sys& sys, const typename Sys::State& u, int dir) {
    if (const char* why = sys.validity(u)) {
        std::ostringstream os;
        os << "physical_flux: invalid state (" << why << ")";
        throw error(os.str());
    }
    return sys.flux(u, dir);
}

}  // namespace fvweno
