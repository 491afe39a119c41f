#pragma once

#include <limits>
#include <vector>

#include "fvweno/grid.hpp"

namespace fvweno {

struct ButcherTableau {
    int order = 0;
    int stages = 0;
    std::vector<real> c;                // nodes
    std::vector<std::vector<real>> a;   // strictly lower-triangular stage matrix
    std::vector<real> b;                // weights
};

namespace detail {

// Rooted trees up to a given order, used to evaluate the classical RK order
// conditions b^T psi(t) = 1/gamma(t).
struct TreeSet {
    struct Tree {
        int order = 1;
        std::vector<int> kids;  // indices of subtrees
    };
    std::vector<Tree> trees;

    explicit TreeSet(int max_order) {
        trees.push_back(Tree{});  // the single node
        for (int n = 2; n <= max_order; ++n) {
            std::vector<int> kids;
            gather(n - 1, 0, kids, n);
        }
    }

  private:
    // enumerate multisets of subtrees (non-decreasing indices) of total order `remaining`
    void gather(int remaining, int min_idx, std::vector<int>& kids, int n) {
        if (remaining == 0) {
            trees.push_back(Tree{n, kids});
            return;
        }
        const int limit = int(trees.size());
        for (int idx = min_idx; idx < limit; ++idx) {
            if (trees[idx].order > remaining) continue;
            kids.push_back(idx);
            gather(remaining - trees[idx].order, idx, kids, n);
            kids.pop_back();
        }
    }
};

}  // namespace detail

// Maximum residual of the order conditions up to `order` for the tableau.
inline real order_condition_residual(const ButcherTableau& tab, int order) {
    const detail::TreeSet set(order);
    const int s = tab.stages;
    std::vector<std::vector<real>> psi;   // per tree: stage vector
    std::vector<real> gamma;
    psi.reserve(set.trees.size());
    real worst = 0;
    for (const auto& tree : set.trees) {
        std::vector<real> v(s, real(1));
        real g = tree.order;
        for (int kid : tree.kids) {
            g *= gamma[kid];
            // v_i *= (A psi_kid)_i
            for (int i = 0; i < s; ++i) {
                real acc = 0;
                for (int j = 0; j < i; ++j) acc += tab.a[i][j] * psi[kid][j];
                v[i] *= acc;
            }
        }
        real phi = 0;
        for (int i = 0; i < s; ++i) phi += tab.b[i] * v[i];
        worst = std::max(worst, std::abs(phi - 1 / g));
        psi.push_back(std::move(v));
        gamma.push_back(g);
    }
    return worst;
}

inline real row_sum_residual(const ButcherTableau& tab) {
    real worst = 0;
    for (int i = 0; i < tab.stages; ++i) {
        real acc = 0;
        for (int j = 0; j < i; ++j) acc += tab.a[i][j];
        worst = std::max(worst, std::abs(acc - tab.c[i]));
    }
    return worst;
}

namespace detail {

// Butcher's classical six-stage fifth-order method.
inline ButcherTableau make_rk5() {
    ButcherTableau t;
    t.order = 5;
    t.stages = 6;
    t.c = {0, real(1) / 4, real(1) / 4, real(1) / 2, real(3) / 4, 1};
    t.a = {{},
           {real(1) / 4},
           {real(1) / 8, real(1) / 8},
           {0, real(-1) / 2, 1},
           {real(3) / 16, 0, 0, real(9) / 16},
           {real(-3) / 7, real(2) / 7, real(12) / 7, real(-12) / 7, real(8) / 7}};
    t.b = {real(7) / 90, 0, real(32) / 90, real(12) / 90, real(32) / 90, real(7) / 90};
    return t;
}

// Seventh-order part of the Fehlberg 7(8) pair; the two stages with zero
// weight that only feed the eighth-order error estimate are dropped.
inline ButcherTableau make_rk7() {
    ButcherTableau t;
    t.order = 7;
    t.stages = 11;
    t.c = {0,
           real(2) / 27,
           real(1) / 9,
           real(1) / 6,
           real(5) / 12,
           real(1) / 2,
           real(5) / 6,
           real(1) / 6,
           real(2) / 3,
           real(1) / 3,
           1};
    t.a = {
        {},
        {real(2) / 27},
        {real(1) / 36, real(1) / 12},
        {real(1) / 24, 0, real(1) / 8},
        {real(5) / 12, 0, real(-25) / 16, real(25) / 16},
        {real(1) / 20, 0, 0, real(1) / 4, real(1) / 5},
        {real(-25) / 108, 0, 0, real(125) / 108, real(-65) / 27, real(125) / 54},
        {real(31) / 300, 0, 0, 0, real(61) / 225, real(-2) / 9, real(13) / 900},
        {2, 0, 0, real(-53) / 6, real(704) / 45, real(-107) / 9, real(67) / 90, 3},
        {real(-91) / 108, 0, 0, real(23) / 108, real(-976) / 135, real(311) / 54, real(-19) / 60,
         real(17) / 6, real(-1) / 12},
        {real(2383) / 4100, 0, 0, real(-341) / 164, real(4496) / 1025, real(-301) / 82,
         real(2133) / 4100, real(45) / 82, real(45) / 164, real(18) / 41},
    };
    t.b = {real(41) / 840,
           0,
           0,
           0,
           0,
           real(34) / 105,
           real(9) / 35,
           real(9) / 35,
           real(9) / 280,
           real(9) / 280,
           real(41) / 840};
    return t;
}

inline const ButcherTableau& verified(const ButcherTableau& t) {
    const real rs = row_sum_residual(t);
    if (rs > 1e-14) throw error("rk_scheme: tableau row sums inconsistent with nodes");
    const real oc = order_condition_residual(t, t.order);
    if (oc > 1e-12) {
        std::ostringstream os;
        os << "rk_scheme: order conditions violated, residual " << oc;
        throw error(os.str());
    }
    return t;
}

}  // namespace detail

// The two schemes used by the solver, order-verified on first use.
inline const ButcherTableau& rk_scheme(int order) {
    if (order == 5) {
        static const ButcherTableau t = detail::verified(detail::make_rk5());
        return t;
    }
    if (order == 7) {
        static const ButcherTableau t = detail::verified(detail::make_rk7());
        return t;
    }
    throw error("rk_scheme: order must be 5 or 7");
}

// --- explicit RK step over ConservedField states ---

struct RKWorkspace {
    std::vector<ConservedField> k;
    ConservedField stage;
};

namespace detail {

inline void axpy(ConservedField& y, real a, const ConservedField& x) {
    const std::size_t n = y.data.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t i = 0; i < n; ++i) y.data[i] += a * x.data[i];
}

}  // namespace detail

// One explicit Runge-Kutta step; rhs(field) may mutate its argument's ghost
// cells (it refills them) and returns the tendency.
template <class Rhs>
inline ConservedField step(const ConservedField& u0, Rhs&& rhs, real dt,
                           const ButcherTableau& tab, RKWorkspace& ws) {
    if (!(dt > 0)) throw error("step: dt must be positive");
    if (int(ws.k.size()) != tab.stages) ws.k.assign(tab.stages, ConservedField());
    for (int s = 0; s < tab.stages; ++s) {
        ws.stage = u0;
        for (int l = 0; l < s; ++l)
            if (tab.a[s][l] != 0) detail::axpy(ws.stage, dt * tab.a[s][l], ws.k[l]);
        ws.k[s] = rhs(ws.stage);
        if (!ws.k[s].interior_finite()) {
            std::ostringstream os;
            os << "step: non-finite tendency in stage " << s;
            throw error(os.str());
        }
    }
    ConservedField out = u0;
    for (int s = 0; s < tab.stages; ++s)
        if (tab.b[s] != 0) detail::axpy(out, dt * tab.b[s], ws.k[s]);
    return out;
}

template <class Rhs>
inline ConservedField step(const ConservedField& u0, Rhs&& rhs, real dt,
                           const ButcherTableau& tab) {
    RKWorkspace ws;
    return step(u0, std::forward<Rhs>(rhs), dt, tab, ws);
}

// CFL time step: dt = cfl / (lam_x/dx + lam_y/dy + lam_z/dz) with the
// directional wave speeds maximized over interior cells, clipped so the
// final step lands exactly on the target time.
template <class Sys>
inline real compute_dt(const ConservedField& field, const Sys& sys, real cfl,
                       real remaining = std::numeric_limits<real>::infinity()) {
    if (!(cfl > 0)) throw error("compute_dt: cfl must be positive");
    const Grid3& grid = field.grid;
    real lam[3] = {0, 0, 0};
    for (int d = 0; d < 3; ++d) {
        real m = 0;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) reduction(max : m)
#endif
        for (int k = 0; k < grid.n[2]; ++k)
            for (int j = 0; j < grid.n[1]; ++j)
                for (int i = 0; i < grid.n[0]; ++i) {
                    typename Sys::State u;
                    for (int c = 0; c < Sys::ncomp; ++c) u[c] = field.at(c, i, j, k);
                    m = std::max(m, sys.max_wavespeed(u, d));
                }
        lam[d] = m;
    }
    const real denom = (lam[0] / grid.dx[0] + lam[1] / grid.dx[1]) + lam[2] / grid.dx[2];
    if (!(denom > 0)) throw error("compute_dt: all wave speeds are zero (no dynamics)");
    real dt = cfl / denom;
    if (dt > remaining) dt = remaining;
    return dt;
}

}  // namespace fvweno
