#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>

#include "fvweno/problems.hpp"

namespace fvweno {

// L1 norm of the paper's tables: sum |ubar - ubar_exact| * dx*dy*dz over
// interior cells, accumulated in a fixed deterministic order.
inline real l1_error(const ConservedField& num, const ConservedField& exact, int comp) {
    if (!num.same_shape(exact) || num.grid.n != exact.grid.n)
        throw error("l1_error: grid mismatch");
    if (comp < 0 || comp >= num.m) throw error("l1_error: bad component");
    const Grid3& grid = num.grid;
    const real dv = grid.cell_volume();
    real acc = 0;
    for (int k = 0; k < grid.n[2]; ++k)
        for (int j = 0; j < grid.n[1]; ++j)
            for (int i = 0; i < grid.n[0]; ++i)
                acc += std::abs(num.at(comp, i, j, k) - exact.at(comp, i, j, k)) * dv;
    return acc;
}

// Experimental order of convergence between a grid and its 2x refinement.
inline real eoc(real err_coarse, real err_fine) {
    if (!(err_coarse > 0) || !(err_fine > 0))
        throw error("eoc: errors must be positive");
    return std::log2(err_coarse / err_fine);
}

struct ErrorReport {
    int n = 0;  // cells per direction
    real l1 = 0;
    real order = std::numeric_limits<real>::quiet_NaN();  // vs previous ladder entry
    double seconds_per_step = 0;
    long steps = 0;
    long long conversion_fallbacks = 0;
};

struct ConvergenceSetup {
    Method method = Method::modified;
    int weno_order = 5;
    int rk_order = 0;  // 0: match weno_order
    FluxKind flux = FluxKind::lax_friedrichs;
    int conversion_order = 6;
    real cfl = real(0.5);
    real tfinal = std::numeric_limits<real>::quiet_NaN();  // NaN: problem default
    int component = 0;
};

inline int ghost_for_order(int weno_order) { return (weno_order + 1) / 2 + 2; }

// Run one problem over a ladder of cubic grids against its exact solution.
inline std::vector<ErrorReport> run_convergence(const Problem& problem,
                                                const ConvergenceSetup& setup,
                                                const std::vector<int>& ladder) {
    if (!problem.has_exact())
        throw error("run_convergence: problem '" + problem.name + "' has no exact solution");
    SolverOptions opts;
    opts.method = setup.method;
    opts.weno_order = setup.weno_order;
    opts.flux = setup.flux;
    opts.conversion_order = setup.conversion_order;
    const int rk = setup.rk_order > 0 ? setup.rk_order : setup.weno_order;
    const ButcherTableau& tab = rk_scheme(rk);
    const real tfinal = std::isnan(setup.tfinal) ? problem.default_tfinal : setup.tfinal;
    const int ghost = ghost_for_order(setup.weno_order);

    std::vector<ErrorReport> reports;
    for (int n : ladder) {
        const auto u0 = initialize(problem, {n, n, n}, ghost);
        auto result = std::visit(
            [&](const auto& sys) {
                return advance_to_time(u0, sys, problem.bcs, opts, tfinal, setup.cfl, tab);
            },
            problem.system);
        const auto uref = exact_field(problem, u0.grid, tfinal);
        ErrorReport r;
        r.n = n;
        r.l1 = l1_error(result.field, uref, setup.component);
        r.seconds_per_step = result.seconds_per_step;
        r.steps = result.steps;
        r.conversion_fallbacks = result.conversion_fallbacks;
        if (!reports.empty()) r.order = eoc(reports.back().l1, r.l1);
        reports.push_back(r);
    }
    return reports;
}

inline void write_convergence_csv(const std::string& path,
                                  const std::vector<ErrorReport>& reports) {
    std::ofstream out(path);
    if (!out) throw error("write_convergence_csv: cannot open " + path);
    out << "grid,cells,l1_error,eoc,seconds_per_step,steps,conversion_fallbacks\n";
    for (const auto& r : reports) {
        out << r.n << "," << (long long)(r.n) * r.n * r.n << "," << std::setprecision(17)
            << r.l1 << ",";
        if (!std::isnan(r.order)) out << std::setprecision(6) << r.order;
        out << "," << std::setprecision(6) << r.seconds_per_step << "," << r.steps << ","
            << r.conversion_fallbacks << "\n";
    }
    if (!out.good()) throw error("write_convergence_csv: write failure on " + path);
}

// --- timing comparison between the two methods ---

struct TimingRow {
    Int3 n{};
    double classical_seconds = 0;
    double modified_seconds = 0;
    double ratio = 0;
    long steps = 0;
};

struct TimingReport {
    std::vector<TimingRow> rows;
    double average_ratio = 0;
};

// Time both methods back-to-back on each grid of the ladder with an
// identical, pinned number of steps.
inline TimingReport run_timing(const Problem& problem, int weno_order, int rk_order,
                               const std::vector<Int3>& ladder, long steps, real cfl = real(0.5),
                               int conversion_order = 6) {
    TimingReport report;
    const ButcherTableau& tab = rk_scheme(rk_order > 0 ? rk_order : weno_order);
    const int ghost = ghost_for_order(weno_order);
    for (const auto& n : ladder) {
        const auto u0 = initialize(problem, n, ghost);
        TimingRow row;
        row.n = n;
        row.steps = steps;
        for (int pass = 0; pass < 2; ++pass) {
            SolverOptions opts;
            opts.method = pass == 0 ? Method::classical : Method::modified;
            opts.weno_order = weno_order;
            opts.flux = problem.default_flux;
            opts.conversion_order = conversion_order;
            const auto result = std::visit(
                [&](const auto& sys) {
                    return advance_to_time(u0, sys, problem.bcs, opts,
                                           std::numeric_limits<real>::max(), cfl,
                                           tab, steps + 1, steps);
                },
                problem.system);
            if (result.steps != steps)
                throw error("run_timing: step count mismatch between methods");
            (pass == 0 ? row.classical_seconds : row.modified_seconds) =
                result.seconds_per_step;
        }
        row.ratio = row.modified_seconds / row.classical_seconds;
        report.rows.push_back(row);
    }
    double acc = 0;
    for (const auto& r : report.rows) acc += r.ratio;
    report.average_ratio = report.rows.empty() ? 0 : acc / double(report.rows.size());
    return report;
}

inline void write_timing_csv(const std::string& path, const TimingReport& report) {
    std::ofstream out(path);
    if (!out) throw error("write_timing_csv: cannot open " + path);
    out << "nx,ny,nz,steps,classical_sec_per_iter,modified_sec_per_iter,ratio\n";
    for (const auto& r : report.rows)
        out << r.n[0] << "," << r.n[1] << "," << r.n[2] << "," << r.steps << ","
            << std::setprecision(6) << r.classical_seconds << "," << r.modified_seconds << ","
            << r.ratio << "\n";
    out << "average,,,,,," << std::setprecision(6) << report.average_ratio << "\n";
    if (!out.good()) throw error("write_timing_csv: write failure on " + path);
}

// Full experiment description assembled by the command line.
struct RunConfig {
    std::string problem = "advect3d";
    Method method = Method::modified;
    int weno_order = 5;
    int rk_order = 0;  // 0: match weno order
    std::string flux = "default";
    Int3 grid{20, 20, 20};
    real cfl = real(0.5);
    real tfinal = std::numeric_limits<real>::quiet_NaN();
    int conversion_order = 6;
    std::string out_dir = ".";
    int threads = 0;

    FluxKind resolve_flux(const Problem& p) const {
        if (flux == "default") return p.default_flux;
        if (flux == "lf") return FluxKind::lax_friedrichs;
        if (flux == "hllc") {
            if (p.ncomp != 5)
                throw error("RunConfig: the HLLC flux applies to the Euler system only");
            return FluxKind::hllc;
        }
        throw error("RunConfig: unknown flux '" + flux + "'");
    }
};

}  // namespace fvweno
