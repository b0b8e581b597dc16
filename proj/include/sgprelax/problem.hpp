#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sgprelax/expr.hpp"

namespace sgprelax {

/// Box for a strictly positive variable. Absent endpoints mean unbounded.
struct Interval {
    std::optional<double> lo;
    std::optional<double> hi;

    bool bounded() const { return lo && hi; }
    bool fixed(double rel = 1e-12) const { return bounded() && *hi / *lo - 1.0 < rel; }
};

struct NonPositiveBound : std::runtime_error {
    explicit NonPositiveBound(const std::string& v)
        : std::runtime_error("bounds of '" + v + "' must satisfy 0 < lo <= hi") {}
};
struct DuplicateVariable : std::runtime_error {
    explicit DuplicateVariable(const std::string& v)
        : std::runtime_error("variable '" + v + "' declared twice") {}
};
struct UndeclaredVariable : std::runtime_error {
    explicit UndeclaredVariable(const std::string& v)
        : std::runtime_error("undeclared variable '" + v + "'") {}
};

struct SgpConstraint {
    std::string label;
    Signomial lhs;  // lhs <= rhs
    Signomial rhs;
};

/// A signomial geometric program: min f0(x) s.t. lhs_k(x) <= rhs_k(x), x > 0.
/// Immutable after construction; validate() enforces the structural invariants.
struct SgpProblem {
    std::string name;
    std::vector<std::string> var_names;
    std::vector<Interval> var_bounds;
    Signomial objective;
    std::vector<SgpConstraint> constraints;

    // Optional corpus metadata.
    std::optional<double> known_optimum;
    std::optional<std::vector<double>> known_point;
    bool objective_nonneg_over_box = false;  // caller-asserted, enables single-aux mode

    int n_vars() const { return static_cast<int>(var_names.size()); }
    VarId var(const std::string& nm) const;
    void validate() const;

    bool in_box(std::span<const double> x, double tol = 0.0) const;
};

struct ConstraintViolation {
    std::string label;
    double violation = 0.0;  // max(0, lhs - rhs)
};

struct FeasibilityReport {
    std::vector<ConstraintViolation> constraint_violations;
    std::vector<std::pair<VarId, double>> bound_violations;
    double max_violation = 0.0;
    bool feasible = false;
};

/// violation_k = max(0, lhs_k(x) - rhs_k(x)); feasible iff all violations and
/// bound violations are <= tol.
FeasibilityReport check_feasible(const SgpProblem& p, std::span<const double> x, double tol);

/// Text form in the .sgp grammar; parse(serialize(p)) is structurally identical.
std::string serialize(const SgpProblem& p);

}  // namespace sgprelax
