#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "varigrid/io.hpp"
#include "varigrid/metrics.hpp"
#include "varigrid/optimizer.hpp"
#include "varigrid/rng.hpp"
#include "varigrid/synth.hpp"

namespace fs = std::filesystem;
using namespace varigrid;

namespace {

#ifndef VARIGRID_VERSION
#define VARIGRID_VERSION "dev"
#endif

constexpr int kExitInfeasible = 2;
constexpr int kExitDivergence = 3;

struct RunParams {
    int nx = 65;
    int ny = 65;
    double alpha = 1.0;
    int iters = 2000;
    double tstep = 1.0;
    bool plain = false;
    std::string curl = "on";
    double amplitude = 2.0;
    std::string out = "out";
    int record_every = 1;
};

DescentOptions to_options(const RunParams& p) {
    DescentOptions o;
    o.tstep = p.tstep;
    o.max_iters = p.iters;
    o.alpha = p.alpha;
    o.line_search = !p.plain;
    o.curl_term = (p.curl == "on");
    o.record_every = p.record_every;
    return o;
}

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void add_common_flags(CLI::App* cmd, RunParams& p) {
    cmd->add_option("--nx", p.nx, "grid nodes in x")->check(CLI::Range(3, 100000));
    cmd->add_option("--ny", p.ny, "grid nodes in y")->check(CLI::Range(3, 100000));
    cmd->add_option("--alpha", p.alpha, "curl weight in the objective")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--iters", p.iters, "maximum descent iterations")
        ->check(CLI::PositiveNumber);
    auto* tstep = cmd->add_option("--tstep", p.tstep, "descent step size")
                      ->check(CLI::PositiveNumber);
    cmd->add_flag("--plain-descent", p.plain,
                  "fixed-step loop, no line search (requires --tstep)")
        ->needs(tstep);
    cmd->add_option("--curl", p.curl, "include the curl term (on) or not (off)")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--out", p.out, "output directory");
    cmd->add_option("--record-every", p.record_every,
                    "history recording stride")
        ->check(CLI::PositiveNumber);
}

void write_run_artifacts(const fs::path& dir, const std::string& command,
                         const RunParams& p, const GridSpec& spec,
                         const RunResult& rr, const Transformation* t0,
                         const ComparisonReport* rep, double amplitude,
                         double elapsed_sec) {
    fs::create_directories(dir);
    write_history_csv(rr.history, (dir / "history.csv").string());
    write_transformation_csv(rr.final_T, (dir / "final_T").string());
    write_vtk(rr.final_T, (dir / "grid.vtk").string(), command);
    write_grid_svg(rr.final_T, (dir / "grid.svg").string(), t0);
    if (rep) write_report_csv(*rep, (dir / "report.csv").string());

    std::vector<std::pair<std::string, std::string>> kv = {
        {"tool", "varigrid"},
        {"version", VARIGRID_VERSION},
        {"compiler", __VERSION__},
        {"command", command},
        {"nx", std::to_string(spec.nx)},
        {"ny", std::to_string(spec.ny)},
        {"xmin", fmt_g(spec.xmin)},
        {"xmax", fmt_g(spec.xmax)},
        {"ymin", fmt_g(spec.ymin)},
        {"ymax", fmt_g(spec.ymax)},
        {"alpha", fmt_g(p.alpha)},
        {"iters", std::to_string(p.iters)},
        {"tstep", fmt_g(p.tstep)},
        {"line_search", p.plain ? "off" : "on"},
        {"curl", p.curl},
        {"amplitude", fmt_g(amplitude)},
        {"record_every", std::to_string(p.record_every)},
        {"iterations_run", std::to_string(rr.iterations_run)},
        {"stop_reason", to_string(rr.stop_reason)},
        {"initial_ssd", fmt_g(rr.initial_ssd())},
        {"final_ssd", fmt_g(rr.final_ssd())},
        {"elapsed_sec", fmt_g(elapsed_sec)},
    };
    write_manifest(kv, (dir / "manifest.txt").string());
}

struct RecoveryOutcome {
    RunResult run;
    ComparisonReport report;
};

RecoveryOutcome run_recovery(const RunParams& p, bool moving,
                             const std::string& command, const fs::path& out_dir) {
    const GridSpec spec = make_uniform_grid(p.nx, p.ny, 1, p.nx, 1, p.ny);
    const Transformation t0 = moving
                                  ? default_moving_boundary_map(spec, p.amplitude)
                                  : default_fixed_boundary_map(spec, p.amplitude);
    const MonitorPair monitors = monitors_from_map(t0);
    const Transformation base =
        moving ? harmonic_boundary_match(spec, t0) : identity_map(spec);

    const auto start = std::chrono::steady_clock::now();
    RunResult rr = run_descent(base, monitors, to_options(p));
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    const ComparisonReport rep = compare_report(rr.final_T, t0, monitors, p.alpha);
    write_run_artifacts(out_dir, command, p, spec, rr, &t0, &rep, p.amplitude,
                        elapsed);

    const std::string label =
        (p.curl == "on") ? "Jacobian and Curl" : "Only Jacobian";
    std::cout << report_table(rep, label);
    std::printf("iterations=%d stop=%s initial_ssd=%.6g final_ssd=%.6g (%.2fs)\n",
                rr.iterations_run, to_string(rr.stop_reason), rr.initial_ssd(),
                rr.final_ssd(), elapsed);
    return {std::move(rr), rep};
}

int finish_run(const RunResult& rr) {
    if (rr.stop_reason == StopReason::divergence) {
        std::cerr << "error: descent diverged (ssd grew past 10x its initial "
                     "value); try a smaller --tstep\n";
        return kExitDivergence;
    }
    return 0;
}

int cmd_recover(const RunParams& p, bool moving) {
    const std::string command = moving ? "recover-moving" : "recover-fixed";
    const RecoveryOutcome o = run_recovery(p, moving, command, p.out);
    return finish_run(o.run);
}

int cmd_generate(const RunParams& p, const std::string& monitors_arg) {
    const auto comma = monitors_arg.find(',');
    const std::string f0_path = monitors_arg.substr(0, comma);
    const std::string g0_path =
        comma == std::string::npos ? "" : monitors_arg.substr(comma + 1);

    ScalarField f0 = read_field_csv(f0_path);
    const GridSpec spec = f0.spec();
    f0 = normalize_monitor(f0);
    ScalarField g0 = g0_path.empty() ? ScalarField(spec) : read_field_csv(g0_path);
    const MonitorPair monitors(std::move(f0), std::move(g0));

    const auto start = std::chrono::steady_clock::now();
    RunResult rr = run_descent(identity_map(spec), monitors, to_options(p));
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    write_run_artifacts(p.out, "generate", p, spec, rr, nullptr, nullptr,
                        0.0, elapsed);
    std::printf(
        "generate: %dx%d grid, iterations=%d stop=%s initial_ssd=%.6g "
        "final_ssd=%.6g (%.2fs)\n",
        spec.nx, spec.ny, rr.iterations_run, to_string(rr.stop_reason),
        rr.initial_ssd(), rr.final_ssd(), elapsed);
    return finish_run(rr);
}

int cmd_gradcheck(const RunParams& p, std::uint64_t seed) {
    const GridSpec spec = make_uniform_grid(p.nx, p.ny, 1, p.nx, 1, p.ny);
    const Transformation t0 = default_fixed_boundary_map(spec, 1.5);
    const MonitorPair monitors = monitors_from_map(t0);
    const Transformation base = identity_map(spec);

    Rng rng(seed);
    VectorField noise(spec);
    for (int j = 1; j < spec.ny - 1; ++j)
        for (int i = 1; i < spec.nx - 1; ++i) {
            noise.x(i, j) = rng.uniform(-0.3, 0.3);
            noise.y(i, j) = rng.uniform(-0.3, 0.3);
        }
    const ControlField control{std::move(noise)};

    const PoissonSolver solver(spec);
    auto [u, T] = assemble_transformation(solver, base, control);
    const ResidualPair res = residual_fields(T, monitors, p.alpha);
    const VectorField g = control_gradient(solver, adjoint_vector_fields(T, res));

    double worst = 0.0;
    for (int probe = 0; probe < 20; ++probe) {
        const int i = rng.uniform_int(1, spec.nx - 2);
        const int j = rng.uniform_int(1, spec.ny - 2);
        const int comp = rng.uniform_int(1, 2);
        const double fd =
            fd_gradient_probe(base, monitors, control, i, j, comp, 1e-5, p.alpha);
        const double ga = (comp == 1) ? g.x(i, j) : g.y(i, j);
        const double rel =
            std::abs(fd - ga) / std::max({std::abs(fd), std::abs(ga), 1e-12});
        worst = std::max(worst, rel);
    }
    std::printf("gradcheck: %dx%d grid, seed %llu, 20 probes, "
                "max relative gradient error %.3e\n",
                spec.nx, spec.ny, static_cast<unsigned long long>(seed), worst);
    return worst <= 1e-5 ? 0 : 1;
}

int cmd_alpha_sweep(const RunParams& base_params) {
    struct Case {
        std::string name;
        double alpha;
        std::string curl;
    };
    const std::vector<Case> cases = {{"only_jacobian", 1.0, "off"},
                                     {"alpha_0.1", 0.1, "on"},
                                     {"alpha_1", 1.0, "on"},
                                     {"alpha_10", 10.0, "on"}};

    std::vector<std::future<RecoveryOutcome>> futures;
    for (const Case& c : cases) {
        RunParams p = base_params;
        p.alpha = c.alpha;
        p.curl = c.curl;
        futures.push_back(std::async(std::launch::async, [p, c, &base_params] {
            return run_recovery(p, false, "alpha-sweep/" + c.name,
                                fs::path(base_params.out) / c.name);
        }));
    }

    std::vector<RecoveryOutcome> outcomes;
    for (auto& f : futures) outcomes.push_back(f.get());

    fs::create_directories(base_params.out);
    std::ofstream os(fs::path(base_params.out) / "sweep_summary.csv");
    os << "case,alpha,curl,ssd_J,ssd,max_distance,avg_distance,"
          "max_angle_diff,avg_angle_diff\n";
    int status = 0;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const ComparisonReport& r = outcomes[k].report;
        os << cases[k].name << ',' << cases[k].alpha << ',' << cases[k].curl
           << ',' << fmt_g(r.ssd_J) << ',' << fmt_g(r.ssd) << ','
           << fmt_g(r.max_distance) << ',' << fmt_g(r.avg_distance) << ','
           << fmt_g(r.max_angle_diff) << ',' << fmt_g(r.avg_angle_diff) << '\n';
        status = std::max(status, finish_run(outcomes[k].run));
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"varigrid: variational grid generation with prescribed "
                 "Jacobian determinant and curl"};
    app.set_version_flag("--version", VARIGRID_VERSION);
    app.require_subcommand(1);

    RunParams fixed_p;
    auto* fixed = app.add_subcommand(
        "recover-fixed", "recover a fixed-boundary map from its monitors");
    add_common_flags(fixed, fixed_p);
    fixed->add_option("--amplitude", fixed_p.amplitude, "target map amplitude");

    RunParams moving_p;
    moving_p.amplitude = 1.0;
    auto* moving = app.add_subcommand(
        "recover-moving",
        "recover a moving-boundary map via a harmonic boundary match");
    add_common_flags(moving, moving_p);
    moving->add_option("--amplitude", moving_p.amplitude, "target map amplitude");

    RunParams gen_p;
    std::string monitors_arg;
    auto* gen = app.add_subcommand(
        "generate", "solve for a grid from user-supplied monitor CSVs");
    add_common_flags(gen, gen_p);
    gen->add_option("--monitors", monitors_arg,
                    "f0 CSV path, optionally f0.csv,g0.csv")
        ->required();

    RunParams grad_p;
    grad_p.nx = 17;
    grad_p.ny = 17;
    std::uint64_t seed = 12345;
    auto* grad = app.add_subcommand(
        "gradcheck", "verify the adjoint gradient against finite differences");
    grad->add_option("--nx", grad_p.nx, "grid nodes in x")->check(CLI::Range(5, 1000));
    grad->add_option("--ny", grad_p.ny, "grid nodes in y")->check(CLI::Range(5, 1000));
    grad->add_option("--alpha", grad_p.alpha, "curl weight")->check(CLI::PositiveNumber);
    grad->add_option("--seed", seed, "probe RNG seed");

    RunParams sweep_p;
    sweep_p.out = "sweep_out";
    auto* sweep = app.add_subcommand(
        "alpha-sweep", "fixed-boundary recovery at alpha 0.1/1/10 plus a "
                       "Jacobian-only baseline");
    add_common_flags(sweep, sweep_p);
    sweep->add_option("--amplitude", sweep_p.amplitude, "target map amplitude");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fixed->parsed()) return cmd_recover(fixed_p, false);
        if (moving->parsed()) return cmd_recover(moving_p, true);
        if (gen->parsed()) return cmd_generate(gen_p, monitors_arg);
        if (grad->parsed()) return cmd_gradcheck(grad_p, seed);
        if (sweep->parsed()) return cmd_alpha_sweep(sweep_p);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    }
    return 0;
}
