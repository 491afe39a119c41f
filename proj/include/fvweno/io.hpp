#pragma once

#include <cstdio>
#include <fstream>
#include <functional>

#include "fvweno/grid.hpp"

namespace fvweno {

// Derived scalar evaluated from the full state of one cell (e.g. pressure).
struct DerivedScalar {
    std::string name;
    std::function<real(std::span<const real>)> eval;
};

// Legacy VTK ASCII STRUCTURED_POINTS file with one CELL_DATA scalar per
// component plus any derived scalars. Cell data runs x fastest, then y, z.
inline void write_vtk(const ConservedField& field, const std::vector<std::string>& names,
                      const std::string& path, const std::vector<DerivedScalar>& derived = {}) {
    if (int(names.size()) != field.m) throw error("write_vtk: need one name per component");
    std::ofstream out(path);
    if (!out) throw error("write_vtk: cannot open " + path);
    const Grid3& g = field.grid;
    out << "# vtk DataFile Version 3.0\n";
    out << "fvweno field\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << g.n[0] + 1 << " " << g.n[1] + 1 << " " << g.n[2] + 1 << "\n";
    char buf[96];
    std::snprintf(buf, sizeof buf, "ORIGIN %.17g %.17g %.17g\n", g.lo[0], g.lo[1], g.lo[2]);
    out << buf;
    std::snprintf(buf, sizeof buf, "SPACING %.17g %.17g %.17g\n", g.dx[0], g.dx[1], g.dx[2]);
    out << buf;
    out << "CELL_DATA " << g.interior_cells() << "\n";

    std::vector<real> state(field.m);
    const auto emit = [&](const std::string& name, auto&& value) {
        out << "SCALARS " << name << " double 1\n";
        out << "LOOKUP_TABLE default\n";
        for (int k = 0; k < g.n[2]; ++k)
            for (int j = 0; j < g.n[1]; ++j)
                for (int i = 0; i < g.n[0]; ++i) {
                    std::snprintf(buf, sizeof buf, "%.17g\n", value(i, j, k));
                    out << buf;
                }
    };
    for (int c = 0; c < field.m; ++c)
        emit(names[c], [&](int i, int j, int k) { return field.at(c, i, j, k); });
    for (const auto& d : derived)
        emit(d.name, [&](int i, int j, int k) {
            for (int c = 0; c < field.m; ++c) state[c] = field.at(c, i, j, k);
            return d.eval(state);
        });
    if (!out.good()) throw error("write_vtk: write failure on " + path);
}

// One tangential plane of a single scalar as CSV rows "<u>,<v>,value", where
// u and v are the in-plane cell-center coordinates in ascending axis order.
// `normal_axis` selects the plane family (1 slices out y giving an x-z
// plane) and `index` the cell layer.
inline void write_csv_slice(const ConservedField& field, const std::string& scalar_name,
                            const std::function<real(std::span<const real>)>& eval,
                            int normal_axis, int index, const std::string& path) {
    if (normal_axis < 0 || normal_axis > 2 || index < 0 || index >= field.grid.n[normal_axis])
        throw error("write_csv_slice: plane index out of range");
    std::ofstream out(path);
    if (!out) throw error("write_csv_slice: cannot open " + path);
    const Grid3& g = field.grid;
    const auto tan = tangential_axes(normal_axis);
    out << axis_name(tan[0]) << "," << axis_name(tan[1]) << "," << scalar_name << "\n";
    std::vector<real> state(field.m);
    char buf[120];
    for (int b = 0; b < g.n[tan[1]]; ++b)
        for (int a = 0; a < g.n[tan[0]]; ++a) {
            Int3 idx{};
            idx[normal_axis] = index;
            idx[tan[0]] = a;
            idx[tan[1]] = b;
            for (int c = 0; c < field.m; ++c) state[c] = field.at(c, idx[0], idx[1], idx[2]);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.cell_center(tan[0], a),
                          g.cell_center(tan[1], b), eval(state));
            out << buf;
        }
    if (!out.good()) throw error("write_csv_slice: write failure on " + path);
}

inline void write_csv_slice(const ConservedField& field, int component, int normal_axis,
                            int index, const std::string& path) {
    write_csv_slice(
        field, "c" + std::to_string(component),
        [component](std::span<const real> s) { return s[component]; }, normal_axis, index, path);
}

}  // namespace fvweno
