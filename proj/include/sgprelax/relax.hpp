#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sgprelax/conic.hpp"
#include "sgprelax/reformulate.hpp"
#include "sgprelax/solver.hpp"

namespace sgprelax {

struct DegenerateInterval : std::runtime_error {
    DegenerateInterval() : std::runtime_error("interval too narrow for a secant cut") {}
};
struct BadStatus : std::runtime_error {
    SolveStatus status;
    explicit BadStatus(SolveStatus s)
        : std::runtime_error("solver returned " + to_string(s)), status(s) {}
};

enum class CutFamily { VarHull, GammaHull, MonomialLB, MonomialUB };

struct CutSet {
    bool var_hull = false;
    bool gamma_hull = false;
    bool mono_lb = false;
    bool mono_ub = false;

    static CutSet none() { return {}; }
    static CutSet hulls() { return {true, true, false, false}; }
    static CutSet all() { return {true, true, true, true}; }
    bool any() const { return var_hull || gamma_hull || mono_lb || mono_ub; }
};

enum class RelaxLevel { ECPR, SECPR };

/// Chord of e^z through (log lo, lo) and (log hi, hi); the cut y <= slope*z + intercept
/// overestimates e^z on [log lo, log hi].
struct Secant {
    double slope;
    double intercept;
    double value_at(double z) const { return slope * z + intercept; }
};
Secant secant_coeffs(double lo, double hi);

/// Interval bounds derived for the lifted variables (Eq.-style interval
/// arithmetic on monomials and posynomial sums).
struct DerivedBounds {
    std::vector<Interval> var;                           // per extended variable
    std::vector<std::vector<Interval>> gamma;            // per constraint, per neg monomial
    std::vector<std::vector<Interval>> lambda;           // per constraint, per pos monomial
};

/// Interval of the bare product prod x^a over the box (absent when some
/// exponent-carrying variable is unbounded).
std::optional<Interval> monomial_interval(const Monomial& m, const std::vector<Interval>& bounds);

/// Interval bounds for the aux objective variables and every monomial pair,
/// by interval arithmetic on the box. Pure: no constraint information.
DerivedBounds propagate_bounds(const ConciseSgp& cs);

/// Tightens derived bounds with constraint-implied monomial floors and caps:
/// a row `const <= c' * g(x)` floors the bare monomial g at const/c' for every
/// lifted copy of g (same exponent signature), and `c * g(x) <= const` caps it.
/// Valid for lifted points, which carry exact monomial values.
void refine_bounds_from_constraints(const ConciseSgp& cs, DerivedBounds& db);

/// Columns of the conic model, in the fixed layout: original x, aux x,
/// x~ block, lambda block, gamma block, gamma~ block, X/X~ block, penalties.
struct LiftedVarMap {
    int n_ext = 0;
    std::vector<int> x_col, xt_col;
    std::vector<std::vector<int>> lam_col;   // -1 for constant monomials
    std::vector<std::vector<int>> gam_col;   // -1 for constant monomials
    std::vector<std::vector<int>> gamt_col;
    std::vector<int> mono_k;                 // constraint index per X block
    std::vector<int> X_col, Xt_col;
    std::vector<int> eta_col;                // tangent slacks (subproblems only)
    int n_cols = 0;
};

struct RelaxOptions {
    CutSet cuts = CutSet::hulls();
    std::map<VarId, Interval> bound_overrides;  // by extended VarId
    bool refine_bounds = true;
    double max_bound_ratio = 1e12;  // hull cuts skip wider intervals
};

struct RelaxationArtifact {
    ConicProblem problem;
    LiftedVarMap map;
    RelaxLevel level = RelaxLevel::ECPR;
    CutSet cuts_applied;
    DerivedBounds derived_bounds;

    int n_vars() const { return map.n_cols; }
    int n_linear_constraints() const { return problem.n_structural_rows; }
    int n_exp_cones() const { return problem.n_exp_cones(); }
};

inline RelaxOptions ecpr_options() {
    RelaxOptions o;
    o.cuts = CutSet::none();
    return o;
}

/// The natural exponential-conic relaxation: balance rows, gamma~ link rows
/// (degree-one monomials use the exact linear relation instead), epigraph
/// cones for every lifted pair, and interval boxes on all lifted variables.
RelaxationArtifact build_ecpr(const ConciseSgp& cs, const RelaxOptions& opts = ecpr_options());

/// ECPR plus the requested valid-inequality families that are applicable
/// given available bounds (inapplicable families are skipped silently and
/// reflected in cuts_applied).
RelaxationArtifact build_secpr(const ConciseSgp& cs, const RelaxOptions& opts = RelaxOptions{});

struct InfeasibleInput : std::runtime_error {
    InfeasibleInput() : std::runtime_error("point is not feasible for the concise problem") {}
};

/// Exact lift of a positive point: x~ = log x, gamma~ = sum a x~,
/// gamma = exp(gamma~), lambda = exp(sum a x~); aux variables carry the
/// objective side sums. Returns the full column vector of the artifact.
std::vector<double> lift_point(const ConciseSgp& cs, const RelaxationArtifact& art,
                               std::span<const double> x_orig);

/// Max violation of the lifted (or any) column vector against every row,
/// bound, and cone of the artifact. Soundness witness helper.
double max_violation(const RelaxationArtifact& art, std::span<const double> z);

struct RelaxationSolution {
    std::vector<double> x;      // extended variables
    std::vector<double> xt;
    std::vector<std::vector<double>> lam, gam, gamt;
    double lower_bound = 0.0;
    double certified_gap = 0.0;
};

/// Extracts named values from a solver result; requires Optimal status.
RelaxationSolution recover(const RelaxationArtifact& art, const SolveResult& res);

}  // namespace sgprelax
