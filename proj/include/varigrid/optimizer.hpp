#pragma once

#include <vector>

#include "varigrid/objective.hpp"

namespace varigrid {

enum class StopReason { max_iters, tolerance, divergence };

const char* to_string(StopReason r);

struct DescentOptions {
    double tstep = 1.0;     ///< initial step size (the fixed step in plain mode)
    int max_iters = 2000;
    double tol = 1e-10;     ///< relative ssd-change threshold; 0 disables
    double alpha = 1.0;
    bool line_search = true;  ///< backtracking: halve until ssd non-increasing
    int record_every = 1;
    bool curl_term = true;  ///< false forces Q = 0 ("Only Jacobian" runs)
    double grad_atol = 1e-14;  ///< stop when max|g| falls below; 0 disables
};

struct HistoryRow {
    int iteration = 0;
    double ssd = 0.0;      ///< the optimized objective (ssd_J when curl is off)
    double ssd_J = 0.0;
    double ssd_curl = 0.0;  ///< unweighted curl term, diagnostic
    double max_grad = 0.0;
};

struct RunResult {
    ControlField final_control;
    Transformation final_T;
    std::vector<HistoryRow> history;
    int iterations_run = 0;
    StopReason stop_reason = StopReason::max_iters;

    double initial_ssd() const { return history.front().ssd; }
    double final_ssd() const { return history.back().ssd; }
};

/// Gradient descent on the control field:
///
///   init T = base, u = 0, f = 0
///   loop: adjoint fields -> gradient g, f -= g*tstep,
///         solve the control Poisson equation for u, T = base + u
///   until tolerance, divergence, or max_iters.
///
/// With line_search on, each step backtracks (halving, at most 30 times)
/// until ssd does not increase, so the recorded history is non-increasing;
/// a step that cannot decrease ssd stops the run with StopReason::tolerance.
/// Divergence (ssd above 10x its initial value, possible in plain mode only)
/// is reported through stop_reason, never silently. The loop draws no
/// randomness: identical inputs give bitwise-identical histories.
RunResult run_descent(const Transformation& base, const MonitorPair& monitors,
                      const DescentOptions& opts);

/// Central finite difference of ssd under a unit perturbation of the control
/// at one interior node and component (1 or 2), divided by the quadrature
/// weight so the value is comparable entrywise to control_gradient output.
/// Verification oracle for the adjoint chain; deliberately independent of it.
double fd_gradient_probe(const Transformation& base, const MonitorPair& monitors,
                         const ControlField& control, int i, int j,
                         int component, double eps, double alpha = 1.0,
                         bool curl_term = true);

}  // namespace varigrid
