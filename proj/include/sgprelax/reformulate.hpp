#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgprelax/problem.hpp"

namespace sgprelax {

struct InfeasibleConstant : std::runtime_error {
    explicit InfeasibleConstant(const std::string& label)
        : std::runtime_error("constraint '" + label + "' reduces to positive constant <= 0") {}
};

/// One canonical-form constraint f+_k(x) <= f-_k(x). All stored coefficients
/// are strictly positive; the side encodes the sign. Constant monomials are
/// permitted on either side.
struct ConciseConstraint {
    std::string label;
    std::vector<Monomial> pos_terms;
    std::vector<Monomial> neg_terms;
};

enum class AuxMode {
    Auto,      // single when the objective is a posynomial or asserted nonnegative
    SingleAux,
    TwoAux,
};

/// Canonical form: min d'x subject to f+_k(x) <= f-_k(x) over positive
/// variables, where d is +1 on aux_plus and -1 on aux_minus (absent in
/// single-aux mode). Constraint 0 is the objective-transfer row.
struct ConciseSgp {
    int n_orig = 0;
    VarId aux_plus = -1;
    std::optional<VarId> aux_minus;
    std::vector<std::string> var_names;  // n_orig originals then aux
    std::vector<Interval> bounds;        // originals verbatim; aux filled by bound propagation
    std::vector<ConciseConstraint> constraints;
    std::vector<std::string> warnings;

    int n_ext() const { return static_cast<int>(var_names.size()); }
    std::vector<double> d() const;
    double objective_of(std::span<const double> x_ext) const;
};

/// Moves the objective into the constraint set behind fresh positive
/// variables: min x_{n+1} - x_{n+2} with f0(x) <= x_{n+1} - x_{n+2}.
/// Single-aux mode uses x_{n+1} alone, valid when f0 has no negative
/// monomials or the caller asserts nonnegativity over the box.
SgpProblem transfer_objective(const SgpProblem& p, bool single_aux);

/// Splits every constraint of an objective-transferred problem into the
/// posynomial-vs-posynomial canonical form. Constraints whose positive side
/// vanishes are vacuous over x > 0 and dropped with a warning; a positive
/// constant forced below zero raises InfeasibleConstant.
ConciseSgp split_posynomials(const SgpProblem& intermediate, int n_orig, VarId aux_plus,
                             std::optional<VarId> aux_minus);

/// transfer_objective followed by split_posynomials.
ConciseSgp concise(const SgpProblem& p, AuxMode mode = AuxMode::Auto);

/// Natural assignment of aux variables for a positive point x of the original
/// problem: aux_plus/aux_minus carry the positive/negative objective parts
/// (single-aux: the full objective value, which must be positive).
std::vector<double> extend_point(const SgpProblem& p, const ConciseSgp& cs,
                                 std::span<const double> x);

}  // namespace sgprelax
