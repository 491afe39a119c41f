#pragma once

#include <span>
#include <sstream>
#include <vector>

#include "fvweno/core.hpp"

namespace fvweno {

// WENO-Z parameters shared by both orders.
inline constexpr real weno_epsilon = 1e-14;
inline constexpr int weno_q_power = 2;

namespace detail {

inline real sq(real x) { return x * x; }

inline real zpow(real x) { return sq(x); }  // q = 2

}  // namespace detail

// One-dimensional WENO-Z kernels. NSub is the number of substencils:
// NSub = 3 gives the fifth-order scheme on a 5-cell window, NSub = 4 the
// seventh-order scheme on a 7-cell window. The window is centered on the
// target cell; traces() returns the reconstruction evaluated at the cell's
// left and right interfaces.
template <int NSub>
struct WenoZ;

template <>
struct WenoZ<3> {
    static constexpr int order = 5;
    static constexpr int window = 5;

    // Jiang-Shu smoothness indicators.
    static void betas(const real* w, real* b) {
        using detail::sq;
        b[0] = real(13) / 12 * sq(w[0] - 2 * w[1] + w[2]) + real(0.25) * sq(w[0] - 4 * w[1] + 3 * w[2]);
        b[1] = real(13) / 12 * sq(w[1] - 2 * w[2] + w[3]) + real(0.25) * sq(w[1] - w[3]);
        b[2] = real(13) / 12 * sq(w[2] - 2 * w[3] + w[4]) + real(0.25) * sq(w[2] - 4 * w[3] + 3 * w[4]);
    }

    static real tau(const real* b) { return std::abs(b[0] - b[2]); }

    static real combine(const real* q, const real* b, real t) {
        constexpr real d0 = real(1) / 10, d1 = real(6) / 10, d2 = real(3) / 10;
        const real a0 = d0 * (1 + detail::zpow(t / (b[0] + weno_epsilon)));
        const real a1 = d1 * (1 + detail::zpow(t / (b[1] + weno_epsilon)));
        const real a2 = d2 * (1 + detail::zpow(t / (b[2] + weno_epsilon)));
        return (a0 * q[0] + a1 * q[1] + a2 * q[2]) / (a0 + a1 + a2);
    }

    static real right_from(const real* w, const real* b, real t) {
        const real q[3] = {(2 * w[0] - 7 * w[1] + 11 * w[2]) / 6,
                           (-w[1] + 5 * w[2] + 2 * w[3]) / 6,
                           (2 * w[2] + 5 * w[3] - w[4]) / 6};
        return combine(q, b, t);
    }

    static real left_from(const real* w, const real* b, real t) {
        // mirror image: candidates on the reversed window, betas reversed
        const real q[3] = {(2 * w[4] - 7 * w[3] + 11 * w[2]) / 6,
                           (-w[3] + 5 * w[2] + 2 * w[1]) / 6,
                           (2 * w[2] + 5 * w[1] - w[0]) / 6};
        const real br[3] = {b[2], b[1], b[0]};
        return combine(q, br, t);
    }

    static void traces(const real* w, real& at_left, real& at_right) {
        real b[3];
        betas(w, b);
        const real t = tau(b);
        at_right = right_from(w, b, t);
        at_left = left_from(w, b, t);
    }
};

template <>
struct WenoZ<4> {
    static constexpr int order = 7;
    static constexpr int window = 7;

    // Balsara-Shu smoothness indicators for the four 4-cell substencils.
    static void betas(const real* w, real* b) {
        b[0] = w[0] * (547 * w[0] - 3882 * w[1] + 4642 * w[2] - 1854 * w[3]) +
               w[1] * (7043 * w[1] - 17246 * w[2] + 7042 * w[3]) +
               w[2] * (11003 * w[2] - 9402 * w[3]) + 2107 * w[3] * w[3];
        b[1] = w[1] * (267 * w[1] - 1642 * w[2] + 1602 * w[3] - 494 * w[4]) +
               w[2] * (2843 * w[2] - 5966 * w[3] + 1922 * w[4]) +
               w[3] * (3443 * w[3] - 2522 * w[4]) + 547 * w[4] * w[4];
        b[2] = w[2] * (547 * w[2] - 2522 * w[3] + 1922 * w[4] - 494 * w[5]) +
               w[3] * (3443 * w[3] - 5966 * w[4] + 1602 * w[5]) +
               w[4] * (2843 * w[4] - 1642 * w[5]) + 267 * w[5] * w[5];
        b[3] = w[3] * (2107 * w[3] - 9402 * w[4] + 7042 * w[5] - 1854 * w[6]) +
               w[4] * (11003 * w[4] - 17246 * w[5] + 4642 * w[6]) +
               w[5] * (7043 * w[5] - 3882 * w[6]) + 547 * w[6] * w[6];
    }

    static real tau(const real* b) { return std::abs(b[0] + 3 * b[1] - 3 * b[2] - b[3]); }

    static real combine(const real* q, const real* b, real t) {
        constexpr real d0 = real(1) / 35, d1 = real(12) / 35, d2 = real(18) / 35,
                       d3 = real(4) / 35;
        const real a0 = d0 * (1 + detail::zpow(t / (b[0] + weno_epsilon)));
        const real a1 = d1 * (1 + detail::zpow(t / (b[1] + weno_epsilon)));
        const real a2 = d2 * (1 + detail::zpow(t / (b[2] + weno_epsilon)));
        const real a3 = d3 * (1 + detail::zpow(t / (b[3] + weno_epsilon)));
        return (a0 * q[0] + a1 * q[1] + a2 * q[2] + a3 * q[3]) / (a0 + a1 + a2 + a3);
    }

    static real right_from(const real* w, const real* b, real t) {
        const real q[4] = {(-3 * w[0] + 13 * w[1] - 23 * w[2] + 25 * w[3]) / 12,
                           (w[1] - 5 * w[2] + 13 * w[3] + 3 * w[4]) / 12,
                           (-w[2] + 7 * w[3] + 7 * w[4] - w[5]) / 12,
                           (3 * w[3] + 13 * w[4] - 5 * w[5] + w[6]) / 12};
        return combine(q, b, t);
    }

    static real left_from(const real* w, const real* b, real t) {
        const real q[4] = {(-3 * w[6] + 13 * w[5] - 23 * w[4] + 25 * w[3]) / 12,
                           (w[5] - 5 * w[4] + 13 * w[3] + 3 * w[2]) / 12,
                           (-w[4] + 7 * w[3] + 7 * w[2] - w[1]) / 12,
                           (3 * w[3] + 13 * w[2] - 5 * w[1] + w[0]) / 12};
        const real br[4] = {b[3], b[2], b[1], b[0]};
        return combine(q, br, t);
    }

    static void traces(const real* w, real& at_left, real& at_right) {
        real b[4];
        betas(w, b);
        const real t = tau(b);
        at_right = right_from(w, b, t);
        at_left = left_from(w, b, t);
    }
};

struct TracePair {
    real at_left;   // q(x_{i-1/2}) from this cell's reconstruction
    real at_right;  // q(x_{i+1/2})
};

// Reconstruct both interface values of the window's center cell from a
// window of `order` cell averages.
inline TracePair reconstruct_traces(std::span<const real> window, int order) {
    if (order != 5 && order != 7) throw error("reconstruct_traces: order must be 5 or 7");
    if (int(window.size()) != order) {
        std::ostringstream os;
        os << "reconstruct_traces: window length " << window.size() << " does not match order "
           << order;
        throw error(os.str());
    }
    for (real v : window)
        if (!finite(v)) throw error("reconstruct_traces: non-finite input");
    TracePair tp{};
    if (order == 5)
        WenoZ<3>::traces(window.data(), tp.at_left, tp.at_right);
    else
        WenoZ<4>::traces(window.data(), tp.at_left, tp.at_right);
    return tp;
}

// Normalized nonlinear weights for both traces, exposed for testing.
struct WenoWeights {
    int count = 0;
    std::array<real, 4> left{}, right{};
};

template <int NSub>
inline WenoWeights weno_weights_impl(const real* w) {
    using K = WenoZ<NSub>;
    real b[NSub];
    K::betas(w, b);
    const real t = K::tau(b);
    constexpr real d5[3] = {real(1) / 10, real(6) / 10, real(3) / 10};
    constexpr real d7[4] = {real(1) / 35, real(12) / 35, real(18) / 35, real(4) / 35};
    WenoWeights out;
    out.count = NSub;
    real sr = 0, sl = 0;
    for (int s = 0; s < NSub; ++s) {
        const real d = (NSub == 3) ? d5[s] : d7[s];
        out.right[s] = d * (1 + detail::zpow(t / (b[s] + weno_epsilon)));
        out.left[s] = d * (1 + detail::zpow(t / (b[NSub - 1 - s] + weno_epsilon)));
        sr += out.right[s];
        sl += out.left[s];
    }
    for (int s = 0; s < NSub; ++s) {
        out.right[s] /= sr;
        out.left[s] /= sl;
    }
    return out;
}

inline WenoWeights weno_weights(std::span<const real> window, int order) {
    if ((order != 5 && order != 7) || int(window.size()) != order)
        throw error("weno_weights: bad window");
    return order == 5 ? weno_weights_impl<3>(window.data()) : weno_weights_impl<4>(window.data());
}

// --- pencil reconstructions ---
//
// A pencil holds cell averages along one grid line at normal indices
// -g..n-1+g (the pointer passed below addresses cell 0; ghost cells sit at
// negative offsets). Faces 0..n receive the minus trace (from the cell on
// the left) and the plus trace (from the cell on the right).

template <int NSub>
inline void reconstruct_pencil_scalar(const real* cell0, int n, real* minus0, real* plus0) {
    constexpr int H = NSub - 1;  // window half-width
    for (int c = -1; c <= n; ++c) {
        real at_left, at_right;
        WenoZ<NSub>::traces(cell0 + c - H, at_left, at_right);
        if (c >= 0) plus0[c] = at_left;
        if (c + 1 <= n) minus0[c + 1] = at_right;
    }
}

namespace detail {

// Dot products grouped so that swapping momentum components 1<->2 of the
// inputs (an x<->y transposition) swaps the results bitwise.
inline real proj_dot(const real* lrow, const real* u) {
    return (lrow[0] * u[0] + (lrow[1] * u[1] + lrow[2] * u[2])) +
           (lrow[3] * u[3] + lrow[4] * u[4]);
}

}  // namespace detail

// Characteristic-space reconstruction along a pencil of m-component states.
// For each face the stencil cell averages are projected onto the eigenvector
// basis of the directional flux Jacobian at the arithmetic interface mean,
// reconstructed per characteristic field and projected back. Returns -1 on
// success or the index of the first face whose averaging state admits no
// eigensystem.
template <class Sys, int NSub>
inline int reconstruct_pencil_characteristic(const Sys& sys, int dir,
                                             const typename Sys::State* cell0, int n,
                                             typename Sys::State* minus0,
                                             typename Sys::State* plus0) {
    constexpr int M = Sys::ncomp;
    static_assert(M == 5, "characteristic reconstruction is for 5-component systems");
    using State = typename Sys::State;
    for (int f = 0; f <= n; ++f) {
        State avg;
        for (int c = 0; c < M; ++c)
            avg[c] = real(0.5) * (cell0[f - 1][c] + cell0[f][c]);
        real lam[M], L[M][M], R[M][M];
        if (!sys.eigensystem(avg, dir, lam, L, R)) return f;

        // project the 2*NSub stencil states, then reconstruct per field
        real cw[M][2 * NSub];
        for (int s = 0; s < 2 * NSub; ++s) {
            const real* u = cell0[f - NSub + s].data();
            for (int c = 0; c < M; ++c) cw[c][s] = detail::proj_dot(L[c], u);
        }
        real qm[M], qp[M];
        for (int c = 0; c < M; ++c) {
            real bm[NSub], bp[NSub];
            WenoZ<NSub>::betas(cw[c], bm);
            WenoZ<NSub>::betas(cw[c] + 1, bp);
            qm[c] = WenoZ<NSub>::right_from(cw[c], bm, WenoZ<NSub>::tau(bm));
            qp[c] = WenoZ<NSub>::left_from(cw[c] + 1, bp, WenoZ<NSub>::tau(bp));
        }
        // back-projection groups the shear pair (fields 2,3) symmetrically
        for (int c = 0; c < M; ++c) {
            minus0[f][c] = (R[c][0] * qm[0] + R[c][1] * qm[1]) + (R[c][2] * qm[2] + R[c][3] * qm[3]) +
                           R[c][4] * qm[4];
            plus0[f][c] = (R[c][0] * qp[0] + R[c][1] * qp[1]) + (R[c][2] * qp[2] + R[c][3] * qp[3]) +
                          R[c][4] * qp[4];
        }
    }
    return -1;
}

// Spec-level wrapper: reconstruct one line with halo, throwing on
// eigensystem failure. cells spans normal indices -g..n-1+g.
template <class Sys>
inline void reconstruct_line_characteristic(const Sys& sys,
                                            std::span<const typename Sys::State> cells, int halo,
                                            int dir, int order,
                                            std::span<typename Sys::State> minus,
                                            std::span<typename Sys::State> plus) {
    const int r = (order + 1) / 2;
    const int n = int(cells.size()) - 2 * halo;
    if (order != 5 && order != 7) throw error("reconstruct_line_characteristic: bad order");
    if (halo < r) throw error("reconstruct_line_characteristic: halo must be >= (order+1)/2");
    if (int(minus.size()) != n + 1 || int(plus.size()) != n + 1)
        throw error("reconstruct_line_characteristic: trace spans must hold n+1 faces");
    int bad = -1;
    if constexpr (Sys::ncomp == 1) {
        std::vector<real> line(cells.size()), mm(n + 1), pp(n + 1);
        for (std::size_t i = 0; i < cells.size(); ++i) line[i] = cells[i][0];
        if (order == 5)
            reconstruct_pencil_scalar<3>(line.data() + halo, n, mm.data(), pp.data());
        else
            reconstruct_pencil_scalar<4>(line.data() + halo, n, mm.data(), pp.data());
        for (int f = 0; f <= n; ++f) {
            minus[f][0] = mm[f];
            plus[f][0] = pp[f];
        }
    } else {
        if (order == 5)
            bad = reconstruct_pencil_characteristic<Sys, 3>(sys, dir, cells.data() + halo, n,
                                                            minus.data(), plus.data());
        else
            bad = reconstruct_pencil_characteristic<Sys, 4>(sys, dir, cells.data() + halo, n,
                                                            minus.data(), plus.data());
    }
    if (bad >= 0) {
        std::ostringstream os;
        os << "reconstruct_line_characteristic: eigensystem failure at face " << bad
           << " (direction " << axis_name(dir) << ")";
        throw error(os.str());
    }
}

}  // namespace fvweno
