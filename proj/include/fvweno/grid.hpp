#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "fvweno/core.hpp"

namespace fvweno {

// Uniform Cartesian box with a ghost-cell pad of equal width on every side.
// Interior cells are indexed 0..n[d]-1 per direction; ghost cells carry
// negative indices and indices >= n[d].
struct Grid3 {
    Vec3 lo{};
    Vec3 hi{};
    Int3 n{};
    int ghost = 0;
    Vec3 dx{};

    int ext(int d) const { return n[d] + 2 * ghost; }
    std::size_t cells_with_ghosts() const {
        return std::size_t(ext(0)) * ext(1) * ext(2);
    }
    std::size_t interior_cells() const {
        return std::size_t(n[0]) * n[1] * n[2];
    }
    real cell_volume() const { return dx[0] * dx[1] * dx[2]; }

    // Center of cell i along direction d (i may be a ghost index).
    real cell_center(int d, int i) const { return lo[d] + (i + real(0.5)) * dx[d]; }
    // Coordinate of face i along direction d; face i sits between cells i-1 and i.
    real face_coord(int d, int i) const { return lo[d] + i * dx[d]; }

    // Interior cell containing a point (round-trip partner of cell_center).
    Int3 cell_from_point(real x, real y, real z) const {
        Vec3 p{x, y, z};
        Int3 idx{};
        for (int d = 0; d < 3; ++d)
            idx[d] = int(std::floor((p[d] - lo[d]) / dx[d]));
        return idx;
    }
};

inline Grid3 make_grid(const Vec3& lo, const Vec3& hi, const Int3& n, int ghost) {
    if (ghost < 0) throw error("make_grid: ghost width must be >= 0");
    Grid3 g;
    g.lo = lo;
    g.hi = hi;
    g.n = n;
    g.ghost = ghost;
    for (int d = 0; d < 3; ++d) {
        if (n[d] < 1) {
            std::ostringstream os;
            os << "make_grid: cell count n[" << axis_name(d) << "] = " << n[d] << " must be >= 1";
            throw error(os.str());
        }
        if (!(hi[d] > lo[d])) {
            std::ostringstream os;
            os << "make_grid: non-positive extent in " << axis_name(d) << ": [" << lo[d] << ", "
               << hi[d] << "]";
            throw error(os.str());
        }
        g.dx[d] = (hi[d] - lo[d]) / n[d];
    }
    return g;
}

// Cell-averaged conserved variables over interior plus ghost cells.
// Layout: data[((c*ez + (k+g))*ey + (j+g))*ex + (i+g)] with ex/ey/ez the
// ghost-padded extents, so the x index runs fastest within a component.
struct ConservedField {
    Grid3 grid;
    int m = 0;
    std::vector<real> data;

    ConservedField() = default;
    ConservedField(const Grid3& g, int ncomp)
        : grid(g), m(ncomp), data(std::size_t(ncomp) * g.cells_with_ghosts(), real(0)) {}

    std::size_t index(int c, int i, int j, int k) const {
        const int g = grid.ghost;
        return ((std::size_t(c) * grid.ext(2) + (k + g)) * grid.ext(1) + (j + g)) * grid.ext(0) +
               (i + g);
    }
    real& at(int c, int i, int j, int k) { return data[index(c, i, j, k)]; }
    real at(int c, int i, int j, int k) const { return data[index(c, i, j, k)]; }

    bool same_shape(const ConservedField& other) const {
        return m == other.m && grid.n == other.grid.n && grid.ghost == other.grid.ghost;
    }

    // True if every interior entry is finite.
    bool interior_finite() const {
        for (int c = 0; c < m; ++c)
            for (int k = 0; k < grid.n[2]; ++k)
                for (int j = 0; j < grid.n[1]; ++j)
                    for (int i = 0; i < grid.n[0]; ++i)
                        if (!finite(at(c, i, j, k))) return false;
        return true;
    }
};

enum class Averaging { point_sample, gauss9 };

namespace detail {

// 5-point Gauss-Legendre rule on [-1,1], exact through degree 9.
struct Gauss5 {
    std::array<real, 5> node;
    std::array<real, 5> weight;
    Gauss5() {
        const real a = std::sqrt(real(5) - 2 * std::sqrt(real(10) / 7)) / 3;
        const real b = std::sqrt(real(5) + 2 * std::sqrt(real(10) / 7)) / 3;
        const real wa = (322 + 13 * std::sqrt(real(70))) / 900;
        const real wb = (322 - 13 * std::sqrt(real(70))) / 900;
        node = {-b, -a, 0, a, b};
        weight = {wb, wa, real(128) / 225, wa, wb};
    }
};

inline const Gauss5& gauss5() {
    static const Gauss5 rule;
    return rule;
}

}  // namespace detail

// Fill interior cells from a pointwise state function, either sampling at
// cell centers or forming tensor-product Gauss cell averages (exact for
// polynomials of degree <= 9 per direction). Ghost cells are left as-is.
inline ConservedField fill_from_function(
    const Grid3& grid, int m, Averaging averaging,
    const std::function<void(real, real, real, std::span<real>)>& f) {
    ConservedField field(grid, m);
    const auto& rule = detail::gauss5();
    std::vector<real> state(m), accum(m);
    Int3 bad_cell{0, 0, 0};
    int bad_comp = -1;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) firstprivate(state, accum)
#endif
    for (int k = 0; k < grid.n[2]; ++k) {
        for (int j = 0; j < grid.n[1]; ++j) {
            for (int i = 0; i < grid.n[0]; ++i) {
                const real xc = grid.cell_center(0, i);
                const real yc = grid.cell_center(1, j);
                const real zc = grid.cell_center(2, k);
                if (averaging == Averaging::point_sample) {
                    f(xc, yc, zc, state);
                    for (int c = 0; c < m; ++c) accum[c] = state[c];
                } else {
                    for (int c = 0; c < m; ++c) accum[c] = 0;
                    for (int a = 0; a < 5; ++a)
                        for (int b = 0; b < 5; ++b)
                            for (int cq = 0; cq < 5; ++cq) {
                                const real w =
                                    rule.weight[a] * rule.weight[b] * rule.weight[cq] / 8;
                                f(xc + real(0.5) * grid.dx[0] * rule.node[a],
                                  yc + real(0.5) * grid.dx[1] * rule.node[b],
                                  zc + real(0.5) * grid.dx[2] * rule.node[cq], state);
                                for (int c = 0; c < m; ++c) accum[c] += w * state[c];
                            }
                }
                for (int c = 0; c < m; ++c) {
                    if (!finite(accum[c])) {
#ifdef _OPENMP
#pragma omp critical(fvweno_fill_error)
#endif
                        if (bad_comp < 0) {
                            bad_comp = c;
                            bad_cell = {i, j, k};
                        }
                    }
                    field.at(c, i, j, k) = accum[c];
                }
            }
        }
    }
    if (bad_comp >= 0) {
        std::ostringstream os;
        os << "fill_from_function: non-finite value in component " << bad_comp << " at cell ("
           << bad_cell[0] << "," << bad_cell[1] << "," << bad_cell[2] << ")";
        throw error(os.str());
    }
    return field;
}

}  // namespace fvweno
