#pragma once

#include <array>

#include "fvweno/faces.hpp"

namespace fvweno {

// Conversions between 2D face-averaged values and face-center point values,
// applied on the tangential plane of a face family. The sixth-order stencils
// combine two 5-point axial corrections with a 3x3 cross-Laplacian term; the
// fourth-order variant keeps only the +-(1/24) second differences.
enum class ConversionSense { average_to_point, point_to_average };

struct ConversionStencil {
    int order = 6;
    ConversionSense sense = ConversionSense::average_to_point;
    // Signed additive coefficients: out = v0 + sum_s axial[s]*v(s-2) applied
    // along each tangential axis, plus cross * (cross-Laplacian mask).
    std::array<long, 5> axial_num{};
    long axial_den = 1;
    long cross_num = 0;
    long cross_den = 1;

    std::array<real, 5> axial_coeffs() const {
        std::array<real, 5> c{};
        for (int s = 0; s < 5; ++s) c[s] = real(axial_num[s]) / real(axial_den);
        return c;
    }
    real cross_coeff() const { return real(cross_num) / real(cross_den); }
    // Tangential halo the stencil reads beyond each output face.
    int reach() const { return order == 6 ? 2 : 1; }
};

inline ConversionStencil conversion_stencil(int order, ConversionSense sense) {
    if (order != 4 && order != 6) throw error("conversion_stencil: order must be 4 or 6");
    ConversionStencil s;
    s.order = order;
    s.sense = sense;
    if (order == 6) {
        if (sense == ConversionSense::average_to_point) {
            s.axial_num = {9, -116, 214, -116, 9};  // = -(1/1920)*(-9,116,-214,116,-9)
            s.axial_den = 1920;
        } else {
            s.axial_num = {-17, 308, -582, 308, -17};  // = +(1/5760)*(-17,308,-582,308,-17)
            s.axial_den = 5760;
        }
        s.cross_num = 1;
        s.cross_den = 576;
    } else {
        const long sgn = (sense == ConversionSense::average_to_point) ? -1 : 1;
        s.axial_num = {0, sgn, -2 * sgn, sgn, 0};  // -+(1/24) * second difference
        s.axial_den = 24;
        s.cross_num = 0;
        s.cross_den = 1;
    }
    long sum = 0;
    for (long v : s.axial_num) sum += v;
    if (sum != 0) throw error("conversion_stencil: axial coefficients must sum to zero");
    return s;
}

// Sub-box of a face family to fill; by default conversions fill the whole
// output layout.
struct FaceRegion {
    int nf_lo = 0, nf_hi = 0;
    int a_lo = 0, a_hi = 0;
    int b_lo = 0, b_hi = 0;

    static FaceRegion of(const FaceLayout& l) {
        return {l.nf_lo, l.nf_hi, l.a_lo, l.a_hi, l.b_lo, l.b_hi};
    }
};

namespace detail {

inline void require_region(const FaceLayout& in, const FaceLayout& out, const FaceRegion& rg,
                           int reach, const char* what) {
    if (in.dir != out.dir || in.m != out.m) throw error(std::string(what) + ": layout mismatch");
    if (rg.nf_lo < out.nf_lo || rg.nf_hi > out.nf_hi || rg.a_lo < out.a_lo ||
        rg.a_hi > out.a_hi || rg.b_lo < out.b_lo || rg.b_hi > out.b_hi)
        throw error(std::string(what) + ": output region exceeds the output layout");
    if (rg.nf_lo < in.nf_lo || rg.nf_hi > in.nf_hi || rg.a_lo - reach < in.a_lo ||
        rg.a_hi + reach > in.a_hi || rg.b_lo - reach < in.b_lo || rg.b_hi + reach > in.b_hi) {
        std::ostringstream os;
        os << what << ": input lacks the tangential halo of width " << reach
           << " required by the requested output region";
        throw error(os.str());
    }
}

// Axial 5-point correction evaluated in difference form so constants pass
// through exactly; the two tangential axes are combined symmetrically so a
// transposed input plane yields a bitwise-transposed output plane.
struct ConvKernel {
    real n0, n1, inv_den, cross;
    explicit ConvKernel(const ConversionStencil& s)
        : n0(real(s.axial_num[0])),
          n1(real(s.axial_num[1])),
          inv_den(real(1) / real(s.axial_den)),
          cross(s.cross_coeff()) {}

    real axial(const real* p, std::ptrdiff_t stride) const {
        const real v0 = p[0];
        const real outer = (p[-2 * stride] - v0) + (p[2 * stride] - v0);
        const real inner = (p[-stride] - v0) + (p[stride] - v0);
        return (n0 * outer + n1 * inner) * inv_den;
    }

    real cross_term(const real* p, std::ptrdiff_t sa, std::ptrdiff_t sb) const {
        if (cross == real(0)) return real(0);
        const real diag = (p[-sa - sb] + p[sa + sb]) + (p[sa - sb] + p[-sa + sb]);
        const real edge = (p[-sb] + p[sb]) + (p[-sa] + p[sa]);
        return cross * ((diag + 4 * p[0]) - 2 * edge);
    }

    real apply(const real* p, std::ptrdiff_t sa, std::ptrdiff_t sb) const {
        const real corr = axial(p, sa) + axial(p, sb);
        return p[0] + (corr + cross_term(p, sa, sb));
    }
};

inline void convert_plane(const std::vector<real>& in, const FaceLayout& lin,
                          std::vector<real>& out, const FaceLayout& lout, const FaceRegion& rg,
                          const ConversionStencil& st) {
    const ConvKernel kernel(st);
    const std::ptrdiff_t sa = lin.nf_count();
    const std::ptrdiff_t sb = std::ptrdiff_t(lin.nf_count()) * lin.a_count();
    const int nf = rg.nf_hi - rg.nf_lo + 1;
    for (int c = 0; c < lout.m; ++c) {
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
#endif
        for (int b = rg.b_lo; b <= rg.b_hi; ++b) {
            for (int a = rg.a_lo; a <= rg.a_hi; ++a) {
                const real* src = &in[lin.index(c, rg.nf_lo, a, b)];
                real* dst = &out[lout.index(c, rg.nf_lo, a, b)];
                for (int f = 0; f < nf; ++f) dst[f] = kernel.apply(src + f, sa, sb);
            }
        }
    }
}

}  // namespace detail

inline void average_to_point(const FaceTraces& in, int order, FaceTraces& out,
                             const FaceRegion& rg) {
    const auto st = conversion_stencil(order, ConversionSense::average_to_point);
    detail::require_region(in.layout, out.layout, rg, st.reach(), "average_to_point");
    detail::convert_plane(in.minus, in.layout, out.minus, out.layout, rg, st);
    detail::convert_plane(in.plus, in.layout, out.plus, out.layout, rg, st);
}

inline void average_to_point(const FaceTraces& in, int order, FaceTraces& out) {
    average_to_point(in, order, out, FaceRegion::of(out.layout));
}

inline void point_to_average(const FaceTraces& in, int order, FaceTraces& out,
                             const FaceRegion& rg) {
    const auto st = conversion_stencil(order, ConversionSense::point_to_average);
    detail::require_region(in.layout, out.layout, rg, st.reach(), "point_to_average");
    detail::convert_plane(in.minus, in.layout, out.minus, out.layout, rg, st);
    detail::convert_plane(in.plus, in.layout, out.plus, out.layout, rg, st);
}

inline void point_to_average(const FaceTraces& in, int order, FaceTraces& out) {
    point_to_average(in, order, out, FaceRegion::of(out.layout));
}

inline void point_to_average(const FaceField& in, int order, FaceField& out,
                             const FaceRegion& rg) {
    const auto st = conversion_stencil(order, ConversionSense::point_to_average);
    detail::require_region(in.layout, out.layout, rg, st.reach(), "point_to_average");
    detail::convert_plane(in.values, in.layout, out.values, out.layout, rg, st);
}

inline void point_to_average(const FaceField& in, int order, FaceField& out) {
    point_to_average(in, order, out, FaceRegion::of(out.layout));
}

inline void average_to_point(const FaceField& in, int order, FaceField& out,
                             const FaceRegion& rg) {
    const auto st = conversion_stencil(order, ConversionSense::average_to_point);
    detail::require_region(in.layout, out.layout, rg, st.reach(), "average_to_point");
    detail::convert_plane(in.values, in.layout, out.values, out.layout, rg, st);
}

inline void average_to_point(const FaceField& in, int order, FaceField& out) {
    average_to_point(in, order, out, FaceRegion::of(out.layout));
}

// Convenience form: output covers the input range shrunk by the stencil reach.
inline FaceTraces average_to_point(const FaceTraces& in, int order) {
    const auto st = conversion_stencil(order, ConversionSense::average_to_point);
    FaceLayout l = in.layout;
    l.a_lo += st.reach();
    l.a_hi -= st.reach();
    l.b_lo += st.reach();
    l.b_hi -= st.reach();
    FaceTraces out(l);
    average_to_point(in, order, out);
    return out;
}

inline FaceTraces point_to_average(const FaceTraces& in, int order) {
    const auto st = conversion_stencil(order, ConversionSense::point_to_average);
    FaceLayout l = in.layout;
    l.a_lo += st.reach();
    l.a_hi -= st.reach();
    l.b_lo += st.reach();
    l.b_hi -= st.reach();
    FaceTraces out(l);
    point_to_average(in, order, out);
    return out;
}

// --- tangential-derivative stencils (exposed for testing) ---

enum class TangentialDeriv { qxx, qyy, qxxxx, qyyyy, qxxyy };

// Small 2D patch of point values or cell averages; derivatives are evaluated
// at the center entry. First index runs along the u axis.
struct PlanePatch {
    int nu = 0, nv = 0;
    real du = 1, dv = 1;
    std::vector<real> v;

    PlanePatch() = default;
    PlanePatch(int nu_, int nv_, real du_, real dv_)
        : nu(nu_), nv(nv_), du(du_), dv(dv_), v(std::size_t(nu_) * nv_, real(0)) {}

    real& at(int iu, int iv) { return v[std::size_t(iv) * nu + iu]; }
    real at(int iu, int iv) const { return v[std::size_t(iv) * nu + iu]; }
};

namespace detail {

inline const real* patch_center(const PlanePatch& p, const char* what) {
    if (p.nu < 5 || p.nv < 5 || p.nu % 2 == 0 || p.nv % 2 == 0)
        throw error(std::string(what) + ": patch too small, need odd extents >= 5");
    return &p.v[std::size_t(p.nv / 2) * p.nu + p.nu / 2];
}

inline real cross_mask(const real* c, std::ptrdiff_t su, std::ptrdiff_t sv) {
    const real diag = (c[-su - sv] + c[su + sv]) + (c[su - sv] + c[-su + sv]);
    const real edge = (c[-sv] + c[sv]) + (c[-su] + c[su]);
    return (diag + 4 * c[0]) - 2 * edge;
}

inline real second_diff4(const real* c, std::ptrdiff_t s) {
    // standard fourth-order second derivative, times 12 h^2
    return -c[-2 * s] + 16 * c[-s] - 30 * c[0] + 16 * c[s] - c[2 * s];
}

inline real fourth_diff(const real* c, std::ptrdiff_t s) {
    return c[-2 * s] - 4 * c[-s] + 6 * c[0] - 4 * c[s] + c[2 * s];
}

}  // namespace detail

// Fourth-order (second derivatives) and second-order (fourth derivatives)
// finite differences of a tangential function from point values.
inline real derivative_from_points(const PlanePatch& p, TangentialDeriv which) {
    const real* c = detail::patch_center(p, "derivative_from_points");
    const std::ptrdiff_t su = 1, sv = p.nu;
    switch (which) {
        case TangentialDeriv::qxx:
            return detail::second_diff4(c, su) / (12 * p.du * p.du);
        case TangentialDeriv::qyy:
            return detail::second_diff4(c, sv) / (12 * p.dv * p.dv);
        case TangentialDeriv::qxxxx:
            return detail::fourth_diff(c, su) / (p.du * p.du * p.du * p.du);
        case TangentialDeriv::qyyyy:
            return detail::fourth_diff(c, sv) / (p.dv * p.dv * p.dv * p.dv);
        case TangentialDeriv::qxxyy:
            return detail::cross_mask(c, su, sv) / (p.du * p.du * p.dv * p.dv);
    }
    throw error("derivative_from_points: unknown derivative");
}

// Derivatives from cell averages: the second derivatives use the combined
// fourth-order stencil (axial 5-point minus cross-Laplacian/24), the fourth
// derivatives reuse the point-value stencils at second order.
inline real derivative_from_averages(const PlanePatch& p, TangentialDeriv which) {
    const real* c = detail::patch_center(p, "derivative_from_averages");
    const std::ptrdiff_t su = 1, sv = p.nu;
    switch (which) {
        case TangentialDeriv::qxx: {
            const real axial =
                -c[-2 * su] + 12 * c[-su] - 22 * c[0] + 12 * c[su] - c[2 * su];
            return axial / (8 * p.du * p.du) -
                   detail::cross_mask(c, su, sv) / (24 * p.du * p.du);
        }
        case TangentialDeriv::qyy: {
            const real axial =
                -c[-2 * sv] + 12 * c[-sv] - 22 * c[0] + 12 * c[sv] - c[2 * sv];
            return axial / (8 * p.dv * p.dv) -
                   detail::cross_mask(c, su, sv) / (24 * p.dv * p.dv);
        }
        case TangentialDeriv::qxxxx:
            return detail::fourth_diff(c, su) / (p.du * p.du * p.du * p.du);
        case TangentialDeriv::qyyyy:
            return detail::fourth_diff(c, sv) / (p.dv * p.dv * p.dv * p.dv);
        case TangentialDeriv::qxxyy:
            return detail::cross_mask(c, su, sv) / (p.du * p.du * p.dv * p.dv);
    }
    throw error("derivative_from_averages: unknown derivative");
}

}  // namespace fvweno
