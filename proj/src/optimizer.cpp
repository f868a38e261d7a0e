#include "varigrid/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace varigrid {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::max_iters: return "max_iters";
        case StopReason::tolerance: return "tolerance";
        case StopReason::divergence: return "divergence";
    }
    return "unknown";
}

namespace {

void validate(const Transformation& base, const MonitorPair& monitors,
              const DescentOptions& opts) {
    if (!(base.spec() == monitors.f0.spec()))
        throw std::invalid_argument("run_descent: monitors on a different grid");
    if (!(opts.tstep > 0.0)) throw std::invalid_argument("run_descent: tstep <= 0");
    if (opts.max_iters < 1) throw std::invalid_argument("run_descent: max_iters < 1");
    if (opts.tol < 0.0) throw std::invalid_argument("run_descent: tol < 0");
    if (!(opts.alpha > 0.0)) throw std::invalid_argument("run_descent: alpha <= 0");
    if (opts.record_every < 1)
        throw std::invalid_argument("run_descent: record_every < 1");
}

}  // namespace

RunResult run_descent(const Transformation& base, const MonitorPair& monitors,
                      const DescentOptions& opts) {
    validate(base, monitors, opts);
    const GridSpec& spec = base.spec();
    const PoissonSolver solver(spec);

    auto opt_value = [&](const ObjectiveReport& r) {
        return opts.curl_term ? r.ssd : r.ssd_J;
    };
    auto gradient_at = [&](const Transformation& T) {
        ResidualPair res = residual_fields(T, monitors, opts.alpha);
        if (!opts.curl_term) res.Q.fill(0.0);
        const AdjointPair adj = adjoint_vector_fields(T, res);
        return control_gradient(solver, adj);
    };

    ControlField f(spec);
    Transformation T = base;  // f = 0 implies u = 0
    ObjectiveReport rep = evaluate_ssd(T, monitors, opts.alpha);
    double obj = opt_value(rep);
    const double obj0 = obj;

    VectorField g = gradient_at(T);
    double gmax = max_abs(g);

    RunResult out;
    auto record = [&](int iter) {
        out.history.push_back({iter, obj, rep.ssd_J, rep.ssd_curl, gmax});
    };
    record(0);

    StopReason reason = StopReason::max_iters;
    int it = 0;
    int flat_streak = 0;
    double next_step = opts.tstep;

    while (it < opts.max_iters) {
        if (opts.grad_atol > 0.0 && gmax <= opts.grad_atol) {
            reason = StopReason::tolerance;
            break;
        }
        const double prev_obj = obj;
        if (opts.line_search) {
            bool accepted = false;
            double t = next_step;
            for (int halvings = 0; halvings <= 30; ++halvings, t *= 0.5) {
                ControlField f_try = f;
                axpy(-t, g, f_try.f);
                auto [u_try, T_try] = assemble_transformation(solver, base, f_try);
                const ObjectiveReport rep_try = evaluate_ssd(T_try, monitors, opts.alpha);
                const double obj_try = opt_value(rep_try);
                if (obj_try <= obj) {
                    f = std::move(f_try);
                    T = std::move(T_try);
                    rep = rep_try;
                    obj = obj_try;
                    next_step = std::min(opts.tstep, 2.0 * t);
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {  // stalled: no step length decreases ssd
                reason = StopReason::tolerance;
                break;
            }
        } else {
            axpy(-opts.tstep, g, f.f);
            auto [u_new, T_new] = assemble_transformation(solver, base, f);
            T = std::move(T_new);
            rep = evaluate_ssd(T, monitors, opts.alpha);
            obj = opt_value(rep);
        }
        ++it;
        g = gradient_at(T);
        gmax = max_abs(g);
        if (it % opts.record_every == 0) record(it);

        if (obj0 > 0.0 && obj > 10.0 * obj0) {
            reason = StopReason::divergence;
            break;
        }
        if (opts.tol > 0.0) {
            const double rel = std::abs(prev_obj - obj) /
                               std::max(prev_obj, std::numeric_limits<double>::min());
            flat_streak = (rel < opts.tol) ? flat_streak + 1 : 0;
            if (flat_streak >= 10) {
                reason = StopReason::tolerance;
                break;
            }
        }
    }

    if (out.history.back().iteration != it) record(it);
    out.final_control = std::move(f);
    out.final_T = std::move(T);
    out.iterations_run = it;
    out.stop_reason = reason;
    return out;
}

double fd_gradient_probe(const Transformation& base, const MonitorPair& monitors,
                         const ControlField& control, int i, int j,
                         int component, double eps, double alpha,
                         bool curl_term) {
    const GridSpec& spec = base.spec();
    if (!(eps > 0.0))
        throw std::invalid_argument("fd_gradient_probe: eps must be positive");
    if (component != 1 && component != 2)
        throw std::invalid_argument("fd_gradient_probe: component must be 1 or 2");
    if (!spec.is_interior(i, j))
        throw std::invalid_argument("fd_gradient_probe: node must be interior");
    if (!(spec == control.spec()) || !(spec == monitors.f0.spec()))
        throw std::invalid_argument("fd_gradient_probe: spec mismatch");

    const PoissonSolver solver(spec);
    auto eval = [&](double sign) {
        ControlField c = control;
        ScalarField& comp = (component == 1) ? c.f.x : c.f.y;
        comp(i, j) += sign * eps;
        auto [u, T] = assemble_transformation(solver, base, c);
        const ObjectiveReport r = evaluate_ssd(T, monitors, alpha);
        return curl_term ? r.ssd : r.ssd_J;
    };
    return (eval(+1.0) - eval(-1.0)) / (2.0 * eps * spec.cell_weight());
}

}  // namespace varigrid
