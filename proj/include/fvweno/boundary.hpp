#pragma once

#include "fvweno/grid.hpp"
#include "fvweno/physics.hpp"

namespace fvweno {

enum class BcKind { unset, periodic, reflective_wall, symmetry, outflow };

// Boundary condition per grid face, indexed by (direction, side) with
// side 0 = low and side 1 = high.
struct BoundarySpec {
    std::array<BcKind, 6> face{BcKind::unset, BcKind::unset, BcKind::unset,
                               BcKind::unset, BcKind::unset, BcKind::unset};

    BcKind& at(int d, int side) { return face[2 * d + side]; }
    BcKind at(int d, int side) const { return face[2 * d + side]; }

    static BoundarySpec all_periodic() {
        BoundarySpec s;
        s.face.fill(BcKind::periodic);
        return s;
    }

    void validate() const {
        for (int d = 0; d < 3; ++d) {
            for (int side = 0; side < 2; ++side)
                if (at(d, side) == BcKind::unset) {
                    std::ostringstream os;
                    os << "BoundarySpec: face " << axis_name(d) << (side ? "_hi" : "_lo")
                       << " is unspecified";
                    throw error(os.str());
                }
            const bool lo = at(d, 0) == BcKind::periodic;
            const bool hi = at(d, 1) == BcKind::periodic;
            if (lo != hi) {
                std::ostringstream os;
                os << "BoundarySpec: periodic must be set on both " << axis_name(d) << " faces";
                throw error(os.str());
            }
        }
    }
};

// Fill all ghost layers by sequential directional sweeps in x, y, z order.
// A sweep in direction d covers the full ghost-padded range of directions
// already swept and the interior range of the rest, so edge and corner
// ghosts are defined deterministically. Mirror fills (reflective_wall and
// symmetry, the same rule for slip walls) negate the face-normal momentum
// through the system's reflect().
template <ConservationLaw Sys>
inline void fill_ghosts(ConservedField& field, const BoundarySpec& spec, const Sys& sys) {
    spec.validate();
    const Grid3& grid = field.grid;
    const int g = grid.ghost;
    if (g == 0) return;
    constexpr int M = Sys::ncomp;
    if (field.m != M) throw error("fill_ghosts: component count mismatch");

    for (int d = 0; d < 3; ++d) {
        const int n = grid.n[d];
        for (int side = 0; side < 2; ++side) {
            const BcKind kind = spec.at(d, side);
            if (kind != BcKind::outflow && n < g) {
                std::ostringstream os;
                os << "fill_ghosts: grid has only " << n << " cells in " << axis_name(d)
                   << " but the boundary rule needs " << g;
                throw error(os.str());
            }
        }
        const auto tan = tangential_axes(d);
        // already-swept directions expose their ghost pads
        const int a_pad = (tan[0] < d) ? g : 0;
        const int b_pad = (tan[1] < d) ? g : 0;
        const int a_lo = -a_pad, a_hi = grid.n[tan[0]] - 1 + a_pad;
        const int b_lo = -b_pad, b_hi = grid.n[tan[1]] - 1 + b_pad;

#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
#endif
        for (int b = b_lo; b <= b_hi; ++b) {
            for (int a = a_lo; a <= a_hi; ++a) {
                Int3 idx{};
                idx[tan[0]] = a;
                idx[tan[1]] = b;
                for (int side = 0; side < 2; ++side) {
                    const BcKind kind = spec.at(d, side);
                    for (int layer = 1; layer <= g; ++layer) {
                        const int dst = side == 0 ? -layer : grid.n[d] - 1 + layer;
                        int src;
                        switch (kind) {
                            case BcKind::periodic:
                                src = side == 0 ? grid.n[d] - layer : layer - 1;
                                break;
                            case BcKind::reflective_wall:
                            case BcKind::symmetry:
                                src = side == 0 ? layer - 1 : grid.n[d] - layer;
                                break;
                            default:  // outflow: zero-gradient copy
                                src = side == 0 ? 0 : grid.n[d] - 1;
                                break;
                        }
                        Int3 is = idx, id = idx;
                        is[d] = src;
                        id[d] = dst;
                        typename Sys::State u;
                        for (int c = 0; c < M; ++c) u[c] = field.at(c, is[0], is[1], is[2]);
                        if (kind == BcKind::reflective_wall || kind == BcKind::symmetry)
                            u = sys.reflect(u, d);
                        for (int c = 0; c < M; ++c) field.at(c, id[0], id[1], id[2]) = u[c];
                    }
                }
            }
        }
    }
}

}  // namespace fvweno
