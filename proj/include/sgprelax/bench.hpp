#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgprelax/relax.hpp"
#include "sgprelax/sequential.hpp"

namespace sgprelax {

struct BenchRow {
    std::string instance;
    std::string level;  // "ECPR" / "s-ECPR"
    std::optional<double> lb;
    std::optional<double> rgap_pct;
    int n_vars = 0;
    int n_linear_constraints = 0;
    int n_exp_cones = 0;
    double solve_time_s = 0.0;
    std::string note;  // deviations and anomalies, itemized
};

/// Root-gap percentage. The reference tables are reproduced by
/// 100*|z - lb|/|z| (signs handled by the absolute values).
double rgap_percent(double zstar, double lb);

/// Paper reference lower bounds for P1..P7 (indexown by instance), used to
/// itemize deviations in the bench report.
struct PaperRow {
    const char* instance;
    double ecpr_lb;
    double secpr_lb;
};
const std::vector<PaperRow>& paper_lb_table();

struct BenchConfig {
    bool include_p8 = false;           // mirror of the published table: P1..P7
    CutSet cuts = CutSet::hulls();
    SolverSettings solver;
    double deviation_threshold = 0.05; // itemize rows further than 5% from the reference
};

std::vector<BenchRow> run_bench(const BenchConfig& cfg = {});

std::string bench_table(const std::vector<BenchRow>& rows);
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Builds the relaxation of one problem (bench building block). Applies the
/// published auxiliary bound override for P1 when `paper_overrides` is set.
struct RelaxRun {
    RelaxationArtifact artifact;
    SolveResult result;
    ConciseSgp cs;
};
RelaxRun relax_problem(const SgpProblem& p, RelaxLevel level, const RelaxOptions& opts,
                       const SolverSettings& solver);

/// Returns the bound override map for a named override set ("P1paper"), or
/// parses a file of `var lo hi` lines.
std::map<VarId, Interval> named_overrides(const std::string& name, const ConciseSgp& cs);

// ----- hard-coded fixtures -------------------------------------------------

struct FixtureResult {
    std::string name;
    double expected;
    double got;
    double rel_err;
    bool pass;
    std::string note;
};

/// Solves the five verbatim-encoded reference models for P1: the published
/// ECP relaxation, its strengthened variant, and the three comparator
/// relaxations, checking each optimum against the printed value.
std::vector<FixtureResult> run_fixtures(const SolverSettings& solver = {});

}  // namespace sgprelax
