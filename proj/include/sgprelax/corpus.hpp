#pragma once

#include <vector>

#include "sgprelax/problem.hpp"

namespace sgprelax {

/// The eight built-in test problems P1..P8 with their reported optima.
/// Data is stored verbatim from the source benchmarks; P7's reported optimum
/// is not actually optimal for its printed data (cheaper feasible points
/// exist), so soundness checks downstream treat P7 specially.
std::vector<SgpProblem> builtin_corpus();

/// Lookup by name ("P1".."P8"); throws std::out_of_range otherwise.
SgpProblem builtin_problem(const std::string& name);

/// Auxiliary-variable bound overrides published with the P1 study:
/// the objective-transfer variable confined to [7.5, 750].
/// Returned as (aux interval) to apply to the objective aux variable.
Interval p1_paper_aux_bounds();

}  // namespace sgprelax
