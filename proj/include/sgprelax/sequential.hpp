#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgprelax/relax.hpp"

namespace sgprelax {

struct SeqSettings {
    double eps = 1e-6;      // step-norm convergence threshold
    int max_iters = 100;
    double w = 0.0;         // penalty weight; 0 = auto (scaled to the relaxation value)
    double w_prime = 0.0;   // gamma-pair penalty weight; 0 = same as w
    bool init_secpr = true; // initialize from s-ECPR (false: plain ECPR)
    bool accelerate = true; // safeguarded extrapolation of the linearization centers
    bool polish = true;     // endgame Newton polish on the active set
    SolverSettings solver;
    RelaxOptions relax;
};

enum class SeqStatus { Converged, MaxIters, SubproblemFailed };

struct IterRecord {
    int t = 0;
    std::vector<double> x;     // extended variables
    std::vector<double> xt;
    std::vector<double> gamt;  // flattened in map order
    double objective = 0.0;    // d'x
    double penalty = 0.0;      // w'eta mass
    double step_norm = 0.0;
    double solve_time = 0.0;
};

struct IterTrace {
    std::vector<IterRecord> records;  // record 0 is the relaxation solution
    SeqStatus status = SeqStatus::MaxIters;
    std::string diagnostic;
};

struct SeqResult {
    std::vector<double> x;   // original variables
    double objective = 0.0;  // original objective at x
    bool feasible = false;
    IterTrace trace;
};

/// Affine estimator of e^z at the center: value + slope (z - center), tangent
/// from below. Centers are clamped to +-700 before exponentiation.
struct AffineEstimator {
    double value;
    double slope;
};
AffineEstimator affine_estimator(double center);

/// Subproblem: the strengthened relaxation plus one tangent row with
/// nonnegative slack per (x, x~) pair and per (gamma, gamma~) pair, slacks
/// penalized in the objective.
RelaxationArtifact build_subproblem(const ConciseSgp& cs, const RelaxOptions& opts,
                                    std::span<const double> xt_center,
                                    const std::vector<std::vector<double>>& gamt_center,
                                    double w, double w_prime);

/// The sequential algorithm: relaxation initialization, then penalized convex
/// subproblems with re-centered tangent overestimators until the tilde-space
/// iterates stabilize.
SeqResult run_sequential(const SgpProblem& p, const SeqSettings& settings = {});

/// Trace CSV with columns iter,objective,penalty,step_norm,solve_time_s.
std::string trace_csv(const IterTrace& trace);

}  // namespace sgprelax
