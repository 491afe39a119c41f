#pragma once

#include <sstream>
#include <vector>

#include "fvweno/grid.hpp"

namespace fvweno {

// Index space of one face family. Faces normal to `dir` are addressed by a
// normal face index fi (face fi sits between cells fi-1 and fi; interior
// faces are 0..n) and the cell indices (a,b) along the two tangential axes
// in ascending axis order. Extensions cover ghost faces on every side.
struct FaceLayout {
    int dir = 0;
    int m = 0;
    int nf_lo = 0, nf_hi = 0;  // normal face index range, inclusive
    int a_lo = 0, a_hi = 0;    // first tangential cell range, inclusive
    int b_lo = 0, b_hi = 0;    // second tangential cell range, inclusive

    static FaceLayout make(const Grid3& grid, int dir, int m, int normal_ext,
                           int tangential_ext) {
        const auto tan = tangential_axes(dir);
        FaceLayout l;
        l.dir = dir;
        l.m = m;
        l.nf_lo = -normal_ext;
        l.nf_hi = grid.n[dir] + normal_ext;
        l.a_lo = -tangential_ext;
        l.a_hi = grid.n[tan[0]] - 1 + tangential_ext;
        l.b_lo = -tangential_ext;
        l.b_hi = grid.n[tan[1]] - 1 + tangential_ext;
        return l;
    }

    int nf_count() const { return nf_hi - nf_lo + 1; }
    int a_count() const { return a_hi - a_lo + 1; }
    int b_count() const { return b_hi - b_lo + 1; }
    std::size_t faces_per_component() const {
        return std::size_t(nf_count()) * a_count() * b_count();
    }
    std::size_t size() const { return faces_per_component() * m; }

    bool contains(int fi, int a, int b) const {
        return fi >= nf_lo && fi <= nf_hi && a >= a_lo && a <= a_hi && b >= b_lo && b <= b_hi;
    }

    // Normal index runs fastest so 1D reconstructions write contiguously.
    std::size_t index(int c, int fi, int a, int b) const {
        return ((std::size_t(c) * b_count() + (b - b_lo)) * a_count() + (a - a_lo)) * nf_count() +
               (fi - nf_lo);
    }
};

// Left/right interface traces of an m-component quantity on one face family.
// Reused for face-averaged conserved values, face-point conserved values, and
// by the single-valued FaceField below for fluxes.
struct FaceTraces {
    FaceLayout layout;
    std::vector<real> minus, plus;

    FaceTraces() = default;
    explicit FaceTraces(const FaceLayout& l)
        : layout(l), minus(l.size(), real(0)), plus(l.size(), real(0)) {}

    real& minus_at(int c, int fi, int a, int b) { return minus[layout.index(c, fi, a, b)]; }
    real& plus_at(int c, int fi, int a, int b) { return plus[layout.index(c, fi, a, b)]; }
    real minus_at(int c, int fi, int a, int b) const { return minus[layout.index(c, fi, a, b)]; }
    real plus_at(int c, int fi, int a, int b) const { return plus[layout.index(c, fi, a, b)]; }
};

// One value per face (numerical fluxes).
struct FaceField {
    FaceLayout layout;
    std::vector<real> values;

    FaceField() = default;
    explicit FaceField(const FaceLayout& l) : layout(l), values(l.size(), real(0)) {}

    real& at(int c, int fi, int a, int b) { return values[layout.index(c, fi, a, b)]; }
    real at(int c, int fi, int a, int b) const { return values[layout.index(c, fi, a, b)]; }
};

}  // namespace fvweno
