#pragma once

#include <chrono>
#include <string>
#include <type_traits>

#include "fvweno/boundary.hpp"
#include "fvweno/conversion.hpp"
#include "fvweno/faces.hpp"
#include "fvweno/physics.hpp"
#include "fvweno/timeint.hpp"
#include "fvweno/weno.hpp"

namespace fvweno {

// classical: reconstruct face-averaged traces, one numerical flux per face,
//            fed directly with the face-averaged values.
// modified:  convert reconstructed face averages to face-center point values,
//            evaluate point fluxes (including two tangential ghost layers),
//            convert the point fluxes back to face averages.
enum class Method { classical, modified };
enum class FluxKind { lax_friedrichs, hllc };

struct SolverOptions {
    Method method = Method::modified;
    int weno_order = 5;
    FluxKind flux = FluxKind::lax_friedrichs;
    int conversion_order = 6;

    // far-stencil reach of the reconstruction
    int recon_reach() const { return (weno_order + 1) / 2; }
    // required ghost width: tangential conversion stencils of the two chained
    // conversions reach +-4 cells beyond the interior face set
    int required_ghost() const { return recon_reach() + 2; }
};

struct RhsStats {
    long long conversion_fallbacks = 0;
};

// The number of tangential ghost layers each face array carries. Point
// values and point fluxes extend 2 layers (the reach of the face-average
// conversion); face-averaged traces extend 4 (the point conversion below
// them reads a further +-2).
inline constexpr int point_tangential_ext = 2;
inline constexpr int trace_tangential_ext = point_tangential_ext + 2;

struct SolverWorkspace {
    std::array<FaceTraces, 3> traces;      // U+- face averages
    std::array<FaceTraces, 3> points;      // u+- face-center values (modified)
    std::array<FaceField, 3> point_flux;   // f-hat at face centers (modified)
    std::array<FaceField, 3> avg_flux;     // F-hat face averages
    Int3 shape{-1, -1, -1};
    int m = 0;
    Method prepared_for = Method::classical;

    void prepare(const Grid3& grid, int m_, Method method) {
        if (shape == grid.n && m == m_ && prepared_for == method) return;
        shape = grid.n;
        m = m_;
        prepared_for = method;
        const int tex = method == Method::modified ? trace_tangential_ext : point_tangential_ext;
        for (int d = 0; d < 3; ++d) {
            traces[d] = FaceTraces(FaceLayout::make(grid, d, m_, 2, tex));
            avg_flux[d] = FaceField(FaceLayout::make(grid, d, m_, 2, point_tangential_ext));
            if (method == Method::modified) {
                points[d] = FaceTraces(FaceLayout::make(grid, d, m_, 2, point_tangential_ext));
                point_flux[d] = FaceField(FaceLayout::make(grid, d, m_, 2, point_tangential_ext));
            }
        }
    }
};

namespace detail {

// First error found by a parallel loop; exceptions must not unwind out of
// an OpenMP region, so workers record and the caller throws.
struct ErrorFlag {
    bool failed = false;
    std::string message;

    void set(const std::string& msg) {
#ifdef _OPENMP
#pragma omp critical(fvweno_solver_error)
#endif
        if (!failed) {
            failed = true;
            message = msg;
        }
    }
    void rethrow() const {
        if (failed) throw error(message);
    }
};

template <class Sys>
inline void gather_state(const ConservedField& u, int i, int j, int k,
                         typename Sys::State& out) {
    for (int c = 0; c < Sys::ncomp; ++c) out[c] = u.at(c, i, j, k);
}

// Reconstruct face-averaged traces in direction `dir` on interior normal
// faces for all tangential cells within `tang_ext` layers of the interior.
template <class Sys, int NSub>
inline void reconstruct_direction(const ConservedField& u, const Sys& sys, int dir, int tang_ext,
                                  FaceTraces& out, ErrorFlag& err) {
    using State = typename Sys::State;
    const Grid3& grid = u.grid;
    const auto tan = tangential_axes(dir);
    const int nd = grid.n[dir];
    const int g = grid.ghost;
    const int a_lo = -tang_ext, a_hi = grid.n[tan[0]] - 1 + tang_ext;
    const int b_lo = -tang_ext, b_hi = grid.n[tan[1]] - 1 + tang_ext;

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<State> cells(nd + 2 * g);
        std::vector<State> minus(nd + 1), plus(nd + 1);
        std::vector<real> line(nd + 2 * g), lm(nd + 1), lp(nd + 1);
#ifdef _OPENMP
#pragma omp for collapse(2) schedule(static)
#endif
        for (int b = b_lo; b <= b_hi; ++b) {
            for (int a = a_lo; a <= a_hi; ++a) {
                Int3 idx{};
                idx[tan[0]] = a;
                idx[tan[1]] = b;
                if constexpr (Sys::has_eigensystem) {
                    for (int t = -g; t < nd + g; ++t) {
                        idx[dir] = t;
                        gather_state<Sys>(u, idx[0], idx[1], idx[2], cells[t + g]);
                    }
                    const int bad = reconstruct_pencil_characteristic<Sys, NSub>(
                        sys, dir, cells.data() + g, nd, minus.data(), plus.data());
                    if (bad >= 0) {
                        std::ostringstream os;
                        os << "rhs: eigensystem failure at " << axis_name(dir) << "-face " << bad
                           << ", tangential cell (" << a << "," << b << ")";
                        err.set(os.str());
                        continue;
                    }
                    for (int c = 0; c < Sys::ncomp; ++c)
                        for (int f = 0; f <= nd; ++f) {
                            out.minus_at(c, f, a, b) = minus[f][c];
                            out.plus_at(c, f, a, b) = plus[f][c];
                        }
                } else {
                    for (int c = 0; c < Sys::ncomp; ++c) {
                        for (int t = -g; t < nd + g; ++t) {
                            idx[dir] = t;
                            line[t + g] = u.at(c, idx[0], idx[1], idx[2]);
                        }
                        reconstruct_pencil_scalar<NSub>(line.data() + g, nd, lm.data(), lp.data());
                        for (int f = 0; f <= nd; ++f) {
                            out.minus_at(c, f, a, b) = lm[f];
                            out.plus_at(c, f, a, b) = lp[f];
                        }
                    }
                }
            }
        }
    }
    err.rethrow();
}

// Replace converted point values that left the admissible set by the
// face-averaged trace at that face, counting occurrences.
template <class Sys>
inline long long fix_inadmissible_points(const FaceTraces& traces, FaceTraces& points,
                                         const Sys& sys, int dir, const Grid3& grid) {
    if constexpr (!Sys::has_eigensystem) {
        (void)traces;
        (void)points;
        (void)sys;
        (void)dir;
        (void)grid;
        return 0;
    } else {
        using State = typename Sys::State;
        const auto tan = tangential_axes(dir);
        const int nd = grid.n[dir];
        const int a_lo = -point_tangential_ext, a_hi = grid.n[tan[0]] - 1 + point_tangential_ext;
        const int b_lo = -point_tangential_ext, b_hi = grid.n[tan[1]] - 1 + point_tangential_ext;
        long long count = 0;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) reduction(+ : count)
#endif
        for (int b = b_lo; b <= b_hi; ++b) {
            for (int a = a_lo; a <= a_hi; ++a) {
                for (int f = 0; f <= nd; ++f) {
                    State um, up;
                    for (int c = 0; c < Sys::ncomp; ++c) {
                        um[c] = points.minus_at(c, f, a, b);
                        up[c] = points.plus_at(c, f, a, b);
                    }
                    if (sys.validity(um)) {
                        for (int c = 0; c < Sys::ncomp; ++c)
                            points.minus_at(c, f, a, b) = traces.minus_at(c, f, a, b);
                        ++count;
                    }
                    if (sys.validity(up)) {
                        for (int c = 0; c < Sys::ncomp; ++c)
                            points.plus_at(c, f, a, b) = traces.plus_at(c, f, a, b);
                        ++count;
                    }
                }
            }
        }
        return count;
    }
}

// Evaluate the numerical flux on every face of the given tangential range.
template <class Sys>
inline void flux_on_faces(const FaceTraces& in, const Sys& sys, int dir, FluxKind flux,
                          const real* alpha, int tang_ext, const Grid3& grid, FaceField& out,
                          ErrorFlag& err) {
    using State = typename Sys::State;
    const auto tan = tangential_axes(dir);
    const int nd = grid.n[dir];
    const int a_lo = -tang_ext, a_hi = grid.n[tan[0]] - 1 + tang_ext;
    const int b_lo = -tang_ext, b_hi = grid.n[tan[1]] - 1 + tang_ext;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
#endif
    for (int b = b_lo; b <= b_hi; ++b) {
        for (int a = a_lo; a <= a_hi; ++a) {
            for (int f = 0; f <= nd; ++f) {
                State um, up, fx;
                for (int c = 0; c < Sys::ncomp; ++c) {
                    um[c] = in.minus_at(c, f, a, b);
                    up[c] = in.plus_at(c, f, a, b);
                }
                if (flux == FluxKind::lax_friedrichs) {
                    const auto fm = sys.flux(um, dir);
                    const auto fp = sys.flux(up, dir);
                    for (int c = 0; c < Sys::ncomp; ++c)
                        fx[c] = real(0.5) * (fm[c] + fp[c]) -
                                real(0.5) * alpha[dir] * (up[c] - um[c]);
                } else {
                    if constexpr (std::is_same_v<Sys, Euler3>) {
                        if (!hllc_flux_checked(sys, um, up, dir, fx)) {
                            std::ostringstream os;
                            os << "rhs: HLLC failure at " << axis_name(dir) << "-face " << f
                               << ", tangential cell (" << a << "," << b << ")";
                            err.set(os.str());
                            continue;
                        }
                    } else {
                        err.set("rhs: HLLC flux requires the Euler system");
                        continue;
                    }
                }
                for (int c = 0; c < Sys::ncomp; ++c) out.at(c, f, a, b) = fx[c];
            }
        }
    }
    err.rethrow();
}

template <class Sys>
inline void global_alphas(const ConservedField& u, const Sys& sys, real* alpha) {
    const Grid3& grid = u.grid;
    for (int d = 0; d < 3; ++d) {
        real m = 0;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) reduction(max : m)
#endif
        for (int k = 0; k < grid.n[2]; ++k)
            for (int j = 0; j < grid.n[1]; ++j)
                for (int i = 0; i < grid.n[0]; ++i) {
                    typename Sys::State s;
                    gather_state<Sys>(u, i, j, k, s);
                    m = std::max(m, sys.max_wavespeed(s, d));
                }
        alpha[d] = m;
    }
}

// tendency = -(1/dx)(F_{i+1/2}-F_{i-1/2}) - (1/dy)(...) - (1/dz)(...)
inline void difference_fluxes(const std::array<FaceField, 3>& flux, const Grid3& grid, int m,
                              ConservedField& tendency) {
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
#endif
    for (int k = 0; k < grid.n[2]; ++k)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int i = 0; i < grid.n[0]; ++i)
                for (int c = 0; c < m; ++c) {
                    real acc = -(flux[0].at(c, i + 1, j, k) - flux[0].at(c, i, j, k)) / grid.dx[0];
                    acc -= (flux[1].at(c, j + 1, i, k) - flux[1].at(c, j, i, k)) / grid.dx[1];
                    acc -= (flux[2].at(c, k + 1, i, j) - flux[2].at(c, k, i, j)) / grid.dx[2];
                    tendency.at(c, i, j, k) = acc;
                }
}

}  // namespace detail

// Semi-discrete right-hand side for either method. Ghost cells of `u` are
// refilled; the returned field holds the tendency on interior cells.
template <class Sys>
inline ConservedField compute_rhs(ConservedField& u, const Sys& sys, const BoundarySpec& bcs,
                                  const SolverOptions& opts, SolverWorkspace& ws,
                                  RhsStats* stats = nullptr) {
    const Grid3& grid = u.grid;
    if (opts.weno_order != 5 && opts.weno_order != 7)
        throw error("rhs: weno order must be 5 or 7");
    if (grid.ghost < opts.required_ghost()) {
        std::ostringstream os;
        os << "rhs: ghost width " << grid.ghost << " too small, need " << opts.required_ghost();
        throw error(os.str());
    }
    ws.prepare(grid, Sys::ncomp, opts.method);
    fill_ghosts(u, bcs, sys);

    real alpha[3] = {0, 0, 0};
    if (opts.flux == FluxKind::lax_friedrichs) detail::global_alphas(u, sys, alpha);

    detail::ErrorFlag err;
    const int tex = opts.method == Method::modified ? trace_tangential_ext : 0;
    for (int d = 0; d < 3; ++d) {
        if (opts.weno_order == 5)
            detail::reconstruct_direction<Sys, 3>(u, sys, d, tex, ws.traces[d], err);
        else
            detail::reconstruct_direction<Sys, 4>(u, sys, d, tex, ws.traces[d], err);

        if (opts.method == Method::classical) {
            detail::flux_on_faces(ws.traces[d], sys, d, opts.flux, alpha, 0, grid, ws.avg_flux[d],
                                  err);
        } else {
            FaceRegion rg;
            rg.nf_lo = 0;
            rg.nf_hi = grid.n[d];
            const auto tan = tangential_axes(d);
            rg.a_lo = -point_tangential_ext;
            rg.a_hi = grid.n[tan[0]] - 1 + point_tangential_ext;
            rg.b_lo = -point_tangential_ext;
            rg.b_hi = grid.n[tan[1]] - 1 + point_tangential_ext;
            average_to_point(ws.traces[d], opts.conversion_order, ws.points[d], rg);
            const long long fb = detail::fix_inadmissible_points(ws.traces[d], ws.points[d], sys,
                                                                 d, grid);
            if (stats) stats->conversion_fallbacks += fb;
            detail::flux_on_faces(ws.points[d], sys, d, opts.flux, alpha, point_tangential_ext,
                                  grid, ws.point_flux[d], err);
            FaceRegion ri = rg;
            ri.a_lo = 0;
            ri.a_hi = grid.n[tan[0]] - 1;
            ri.b_lo = 0;
            ri.b_hi = grid.n[tan[1]] - 1;
            point_to_average(ws.point_flux[d], opts.conversion_order, ws.avg_flux[d], ri);
        }
    }

    ConservedField tendency(grid, Sys::ncomp);
    detail::difference_fluxes(ws.avg_flux, grid, Sys::ncomp, tendency);
    return tendency;
}

// Spec-level wrappers.
template <class Sys>
inline ConservedField rhs_classical(ConservedField& u, const Sys& sys, const BoundarySpec& bcs,
                                    int weno_order, FluxKind flux) {
    SolverOptions opts;
    opts.method = Method::classical;
    opts.weno_order = weno_order;
    opts.flux = flux;
    SolverWorkspace ws;
    return compute_rhs(u, sys, bcs, opts, ws);
}

template <class Sys>
inline ConservedField rhs_modified(ConservedField& u, const Sys& sys, const BoundarySpec& bcs,
                                   int weno_order, FluxKind flux, int conversion_order = 6,
                                   RhsStats* stats = nullptr) {
    SolverOptions opts;
    opts.method = Method::modified;
    opts.weno_order = weno_order;
    opts.flux = flux;
    opts.conversion_order = conversion_order;
    SolverWorkspace ws;
    return compute_rhs(u, sys, bcs, opts, ws, stats);
}

// --- time loop ---

struct AdvanceResult {
    ConservedField field;
    long steps = 0;
    double seconds_per_step = 0;  // mean over steps after the first (warm-up)
    double total_seconds = 0;
    long long conversion_fallbacks = 0;
    real min_density = std::numeric_limits<real>::infinity();
    real min_pressure = std::numeric_limits<real>::infinity();
};

template <class Sys>
inline void track_positivity(const ConservedField& u, const Sys& sys, AdvanceResult& res) {
    if constexpr (std::is_same_v<Sys, Euler3>) {
        const Grid3& grid = u.grid;
        real mr = std::numeric_limits<real>::infinity();
        real mp = std::numeric_limits<real>::infinity();
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) reduction(min : mr, mp)
#endif
        for (int k = 0; k < grid.n[2]; ++k)
            for (int j = 0; j < grid.n[1]; ++j)
                for (int i = 0; i < grid.n[0]; ++i) {
                    typename Sys::State s;
                    detail::gather_state<Sys>(u, i, j, k, s);
                    mr = std::min(mr, s[0]);
                    mp = std::min(mp, sys.pressure(s));
                }
        res.min_density = std::min(res.min_density, mr);
        res.min_pressure = std::min(res.min_pressure, mp);
    } else {
        (void)u;
        (void)sys;
        (void)res;
    }
}

// Advance from t=0 to t=tfinal with CFL-selected steps, collecting per-step
// wall-clock statistics. `stop_after_steps`, when positive, ends the run
// early (used by the timing harness to pin identical step counts).
template <class Sys>
inline AdvanceResult advance_to_time(const ConservedField& initial, const Sys& sys,
                                     const BoundarySpec& bcs, const SolverOptions& opts,
                                     real tfinal, real cfl, long max_steps = 5000000,
                                     long stop_after_steps = -1) {
    AdvanceResult res;
    res.field = initial;
    if (tfinal <= 0) return res;
    const ButcherTableau& tab = rk_scheme(opts.weno_order == 7 ? 7 : 5);
    return advance_to_time(initial, sys, bcs, opts, tfinal, cfl, tab, max_steps,
                           stop_after_steps);
}

template <class Sys>
inline AdvanceResult advance_to_time(const ConservedField& initial, const Sys& sys,
                                     const BoundarySpec& bcs, const SolverOptions& opts,
                                     real tfinal, real cfl, const ButcherTableau& tab,
                                     long max_steps = 5000000, long stop_after_steps = -1) {
    AdvanceResult res;
    res.field = initial;
    SolverWorkspace ws;
    RKWorkspace rkws;
    RhsStats stats;
    track_positivity(res.field, sys, res);

    auto rhs = [&](ConservedField& u) { return compute_rhs(u, sys, bcs, opts, ws, &stats); };

    real t = 0;
    double measured = 0;
    const real tiny = tfinal * 1e-14;
    while (t < tfinal - tiny) {
        if (res.steps >= max_steps) {
            std::ostringstream os;
            os << "advance_to_time: exceeded " << max_steps << " steps at t = " << t;
            throw error(os.str());
        }
        const real dt = compute_dt(res.field, sys, cfl, tfinal - t);
        const auto t0 = std::chrono::steady_clock::now();
        res.field = step(res.field, rhs, dt, tab, rkws);
        const auto t1 = std::chrono::steady_clock::now();
        const double sec = std::chrono::duration<double>(t1 - t0).count();
        res.total_seconds += sec;
        if (res.steps > 0) measured += sec;  // first step is warm-up
        t += dt;
        ++res.steps;
        if (!res.field.interior_finite()) {
            std::ostringstream os;
            os << "advance_to_time: non-finite state after step " << res.steps << " (t = " << t
               << ")";
            throw error(os.str());
        }
        track_positivity(res.field, sys, res);
        if (stop_after_steps > 0 && res.steps >= stop_after_steps) break;
    }
    res.seconds_per_step =
        res.steps > 1 ? measured / double(res.steps - 1) : res.total_seconds;
    res.conversion_fallbacks = stats.conversion_fallbacks;
    return res;
}

}  // namespace fvweno
