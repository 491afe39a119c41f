#pragma once

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "fvweno/harness.hpp"
#include "fvweno/io.hpp"
#include "fvweno/selftest.hpp"

namespace fvweno {

namespace cli_detail {

inline Method parse_method(const std::string& s) {
    if (s == "classical") return Method::classical;
    if (s == "modified") return Method::modified;
    throw error("unknown method '" + s + "'");
}

inline Int3 parse_grid(const std::string& s) {
    Int3 n{};
    char sep1 = 0, sep2 = 0;
    std::istringstream is(s);
    if (!(is >> n[0])) throw error("bad grid spec '" + s + "'");
    if (is >> sep1 >> n[1] >> sep2 >> n[2]) {
        if ((sep1 != ',' && sep1 != 'x') || sep2 != sep1)
            throw error("bad grid spec '" + s + "'");
    } else {
        n[1] = n[2] = n[0];  // single number means a cubic grid
    }
    return n;
}

// ladder entries are single numbers (cubic grids) or NXxNYxNZ triples
inline std::vector<Int3> parse_ladder(const std::string& s) {
    std::vector<Int3> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(parse_grid(item));
    }
    if (out.empty()) throw error("empty grid ladder");
    return out;
}

inline void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

inline std::vector<std::string> component_names(const Problem& p) {
    std::vector<std::string> names;
    std::visit(
        [&](const auto& sys) {
            using Sys = std::decay_t<decltype(sys)>;
            for (int c = 0; c < Sys::ncomp; ++c) names.push_back(Sys::component_name(c));
        },
        p.system);
    return names;
}

struct CommonArgs {
    std::string problem = "advect3d";
    std::string method = "modified";
    int weno = 5;
    int rk = 0;
    std::string flux = "default";
    real cfl = real(0.5);
    real tfinal = std::numeric_limits<real>::quiet_NaN();
    int conv_order = 6;
    std::string out_dir = ".";
    int threads = 0;

    void add_to(CLI::App* sub, bool with_method = true) {
        sub->add_option("--problem", problem,
                        "problem: advect3d, burgers3d, euler_wave, spherical_riemann");
        if (with_method)
            sub->add_option("--method", method, "classical or modified")
                ->check(CLI::IsMember({"classical", "modified"}));
        sub->add_option("--weno", weno, "WENO-Z reconstruction order")
            ->check(CLI::IsMember({5, 7}));
        sub->add_option("--rk", rk, "Runge-Kutta order (default: matches --weno)")
            ->check(CLI::IsMember({5, 7}));
        sub->add_option("--flux", flux, "numerical flux: lf, hllc or default")
            ->check(CLI::IsMember({"lf", "hllc", "default"}));
        sub->add_option("--cfl", cfl, "CFL number");
        sub->add_option("--tfinal", tfinal, "final time (default: problem specific)");
        sub->add_option("--conv-order", conv_order, "conversion order of the modified method")
            ->check(CLI::IsMember({4, 6}));
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker thread count (0: library default)");
        sub->set_config("--config", "", "plain key = value file, flags take precedence");
    }

    int rk_order() const { return rk > 0 ? rk : weno; }
};

inline int do_run(const CommonArgs& args, const std::string& grid_spec, bool dry_run) {
    const auto problem = make_problem(args.problem);
    const Int3 n = parse_grid(grid_spec);
    RunConfig rc;
    rc.flux = args.flux;
    const FluxKind flux = rc.resolve_flux(problem);
    const real tfinal = std::isnan(args.tfinal) ? problem.default_tfinal : args.tfinal;

    if (dry_run) {
        std::cout << "problem = " << args.problem << "\n"
                  << "method = " << args.method << "\n"
                  << "weno = " << args.weno << "\n"
                  << "rk = " << args.rk_order() << "\n"
                  << "flux = " << (flux == FluxKind::hllc ? "hllc" : "lf") << "\n"
                  << "grid = " << n[0] << "," << n[1] << "," << n[2] << "\n"
                  << "cfl = " << args.cfl << "\n"
                  << "tfinal = " << tfinal << "\n"
                  << "conv-order = " << args.conv_order << "\n"
                  << "out = " << args.out_dir << "\n";
        return 0;
    }

    apply_threads(args.threads);
    SolverOptions opts;
    opts.method = parse_method(args.method);
    opts.weno_order = args.weno;
    opts.flux = flux;
    opts.conversion_order = args.conv_order;

    const auto u0 = initialize(problem, n, ghost_for_order(args.weno));
    const auto result = std::visit(
        [&](const auto& sys) {
            return advance_to_time(u0, sys, problem.bcs, opts, tfinal, args.cfl,
                                   rk_scheme(args.rk_order()));
        },
        problem.system);

    std::filesystem::create_directories(args.out_dir);
    const std::string stem =
        args.out_dir + "/" + args.problem + "_" + args.method + "_z" + std::to_string(args.weno);

    std::vector<DerivedScalar> derived;
    if (problem.ncomp == 5) {
        Euler3 sys = std::get<Euler3>(problem.system);
        derived.push_back({"pressure", [sys](std::span<const real> u) {
                               return sys.pressure({u[0], u[1], u[2], u[3], u[4]});
                           }});
    }
    write_vtk(result.field, component_names(problem), stem + ".vtk", derived);
    // x-z plane through the first y layer
    if (problem.ncomp == 5)
        write_csv_slice(result.field, "pressure", derived[0].eval, 1, 0, stem + "_slice.csv");
    else
        write_csv_slice(result.field, 0, 1, 0, stem + "_slice.csv");

    std::cout << "steps " << result.steps << ", " << result.seconds_per_step << " s/step\n";
    if (problem.ncomp == 5)
        std::cout << "min density " << result.min_density << ", min pressure "
                  << result.min_pressure << "\n";
    if (opts.method == Method::modified)
        std::cout << "conversion fallbacks " << result.conversion_fallbacks << "\n";
    std::cout << "wrote " << stem << ".vtk and " << stem << "_slice.csv\n";
    return 0;
}

inline int do_convergence(const CommonArgs& args, const std::string& ladder_spec) {
    apply_threads(args.threads);
    const auto problem = make_problem(args.problem);
    const auto ladder = parse_ladder(ladder_spec);
    std::vector<int> sizes;
    for (const auto& n : ladder) {
        if (n[0] != n[1] || n[1] != n[2])
            throw error("convergence ladders use cubic grids, got a non-cubic entry");
        sizes.push_back(n[0]);
    }
    ConvergenceSetup setup;
    setup.method = parse_method(args.method);
    setup.weno_order = args.weno;
    setup.rk_order = args.rk_order();
    RunConfig rc;
    rc.flux = args.flux;
    setup.flux = rc.resolve_flux(problem);
    setup.conversion_order = args.conv_order;
    setup.cfl = args.cfl;
    setup.tfinal = args.tfinal;

    const auto reports = run_convergence(problem, setup, sizes);
    std::filesystem::create_directories(args.out_dir);
    const std::string path = args.out_dir + "/convergence_" + args.problem + "_" + args.method +
                             "_z" + std::to_string(args.weno) + ".csv";
    write_convergence_csv(path, reports);

    std::cout << "grid      l1_error        eoc     s/step   fallbacks\n";
    for (const auto& r : reports) {
        char line[160];
        std::snprintf(line, sizeof line, "%-8d %13.4e %8.2f %9.4f %8lld\n", r.n, r.l1,
                      std::isnan(r.order) ? 0.0 : r.order, r.seconds_per_step,
                      r.conversion_fallbacks);
        std::cout << line;
    }
    std::cout << "wrote " << path << "\n";
    return 0;
}

inline int do_bench(const CommonArgs& args, const std::string& ladder_spec, long steps) {
    apply_threads(args.threads);
    const auto problem = make_problem(args.problem);
    const auto ladder = parse_ladder(ladder_spec);
    const auto report =
        run_timing(problem, args.weno, args.rk_order(), ladder, steps, args.cfl, args.conv_order);
    std::filesystem::create_directories(args.out_dir);
    const std::string path =
        args.out_dir + "/timing_" + args.problem + "_z" + std::to_string(args.weno) + ".csv";
    write_timing_csv(path, report);
    std::cout << "grid             classical s/it   modified s/it   ratio\n";
    for (const auto& r : report.rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%3dx%3dx%3d %16.4f %15.4f %7.2f\n", r.n[0], r.n[1],
                      r.n[2], r.classical_seconds, r.modified_seconds, r.ratio);
        std::cout << line;
    }
    std::cout << "average ratio " << report.average_ratio << "\n";
    std::cout << "wrote " << path << "\n";
    return 0;
}

inline int do_selftest() {
    const auto results = run_selftests();
    int failures = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[ ok ] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        if (!r.passed) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace cli_detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"High-order finite-volume WENO solver on 3D Cartesian grids"};
    app.require_subcommand(0, 1);

    cli_detail::CommonArgs run_args, conv_args, bench_args;
    std::string run_grid = "20,20,20";
    bool dry_run = false;
    std::string conv_ladder = "10,20,40";
    std::string bench_ladder = "37x37x25,53x53x35,75x75x50";
    long bench_steps = 8;

    auto* run = app.add_subcommand("run", "advance one configuration and write fields");
    run_args.add_to(run);
    run->add_option("--grid", run_grid, "interior cells NX,NY,NZ (or one number for a cube)");
    run->add_flag("--dry-run", dry_run, "print the resolved configuration and exit");

    auto* conv =
        app.add_subcommand("convergence", "grid-refinement study against the exact solution");
    conv_args.add_to(conv);
    conv->add_option("--grid-ladder", conv_ladder, "comma list of cubic grid sizes");

    auto* bench = app.add_subcommand("bench", "per-iteration timing of classical vs modified");
    bench_args.problem = "spherical_riemann";
    bench_args.add_to(bench, /*with_method=*/false);
    bench->add_option("--grid-ladder", bench_ladder, "comma list of grids (N or NXxNYxNZ)");
    bench->add_option("--steps", bench_steps, "pinned step count per run");

    auto* self = app.add_subcommand("selftest", "run the built-in invariant checks");

    if (argc <= 1) {
        std::cout << app.help() << std::flush;
        return 2;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cli_detail::do_run(run_args, run_grid, dry_run);
        if (conv->parsed()) return cli_detail::do_convergence(conv_args, conv_ladder);
        if (bench->parsed()) return cli_detail::do_bench(bench_args, bench_ladder, bench_steps);
        if (self->parsed()) return cli_detail::do_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << app.help() << std::flush;
    return 2;
}

}  // namespace fvweno
