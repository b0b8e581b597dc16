#pragma once

#include <string>
#include <vector>

#include "sgprelax/conic.hpp"

namespace sgprelax {

struct SolverSettings {
    double eps_abs = 1e-8;
    double eps_rel = 1e-8;
    double eps_infeas = 1e-7;
    int max_iters = 100000;
    double time_limit = 0.0;  // seconds; 0 = unlimited
    double alpha = 1.5;       // over-relaxation
    int ruiz_iters = 10;
    int check_interval = 25;
    int acceleration_memory = 10;  // Anderson lookback; 0 disables
    bool verbose = false;
};

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, MaxIters, TimeLimit };

std::string to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::MaxIters;
    std::vector<double> primal;  // x (certificate of unboundedness when DualInfeasible)
    std::vector<double> dual;    // y (Farkas certificate when PrimalInfeasible)
    std::vector<double> slack;   // s with Ax + s = b
    double objective = 0.0;
    double dual_objective = 0.0;
    int iters = 0;
    double pres = 0.0, dres = 0.0, gap = 0.0;
    double solve_time = 0.0;

    /// One-line machine-readable summary.
    std::string summary() const;
};

/// Operator-splitting solver on the homogeneous self-dual embedding.
/// Deterministic: fixed iteration order, no randomized components.
SolveResult solve(const ConicProblem& prob, const SolverSettings& settings = {});

}  // namespace sgprelax
