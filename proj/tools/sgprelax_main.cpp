#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sgprelax/bench.hpp"
#include "sgprelax/corpus.hpp"
#include "sgprelax/parse.hpp"
#include "sgprelax/sequential.hpp"

using namespace sgprelax;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitSolver = 2;
constexpr int kExitNoConverge = 3;

SgpProblem load_input(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) return builtin_problem(spec.substr(8));
    std::ifstream f(spec);
    if (!f) throw SyntaxError(0, 0, "cannot open '" + spec + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_problem(ss.str());
}

CutSet parse_cuts(const std::string& s) {
    if (s.empty()) return CutSet::hulls();
    CutSet cs = CutSet::none();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "varhull")
            cs.var_hull = true;
        else if (item == "gammahull")
            cs.gamma_hull = true;
        else if (item == "monolb")
            cs.mono_lb = true;
        else if (item == "monoub")
            cs.mono_ub = true;
        else if (item == "all")
            cs = CutSet::all();
        else
            throw CLI::ValidationError("--cuts", "unknown cut family '" + item + "'");
    }
    return cs;
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    f << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential-conic relaxations and a sequential ECP algorithm for "
                 "signomial geometric programs"};
    app.require_subcommand(1);

    // parse
    std::string in_parse;
    auto* cmd_parse = app.add_subcommand("parse", "parse a .sgp file and echo its canonical form");
    cmd_parse->add_option("file", in_parse)->required();

    // relax
    std::string in_relax, level_str = "secpr", cuts_str, overrides_str, dump_path;
    double relax_tol = 1e-8;
    auto* cmd_relax = app.add_subcommand("relax", "build and solve a relaxation");
    cmd_relax->add_option("input", in_relax, "path or builtin:Pk")->required();
    cmd_relax->add_option("--level", level_str)->check(CLI::IsMember({"ecpr", "secpr"}));
    cmd_relax->add_option("--cuts", cuts_str, "comma list: varhull,gammahull,monolb,monoub");
    cmd_relax->add_option("--override-bounds", overrides_str, "named set (P1paper) or file");
    cmd_relax->add_option("--dump-conic", dump_path);
    cmd_relax->add_option("--tol", relax_tol);

    // solve-conic
    std::string in_conic;
    double conic_tol = 1e-8;
    auto* cmd_solve = app.add_subcommand("solve-conic", "solve a conic dump file");
    cmd_solve->add_option("file", in_conic)->required();
    cmd_solve->add_option("--tol", conic_tol);

    // sequential
    std::string in_seq, trace_path;
    double seq_eps = 1e-6, seq_penalty = 0.0;
    int seq_max_iter = 100;
    std::string seq_overrides;
    auto* cmd_seq = app.add_subcommand("sequential", "run the sequential ECP algorithm");
    cmd_seq->add_option("input", in_seq)->required();
    cmd_seq->add_option("--eps", seq_eps);
    cmd_seq->add_option("--max-iter", seq_max_iter);
    cmd_seq->add_option("--penalty", seq_penalty, "penalty weight (0 = auto)");
    cmd_seq->add_option("--trace", trace_path, "write per-iteration CSV");
    cmd_seq->add_option("--override-bounds", seq_overrides);

    // bench
    bool bench_all = false;
    std::string bench_format = "table", bench_out;
    auto* cmd_bench = app.add_subcommand("bench", "relaxation table over the builtin corpus");
    cmd_bench->add_flag("--all", bench_all, "include P8");
    cmd_bench->add_option("--format", bench_format)->check(CLI::IsMember({"table", "csv"}));
    cmd_bench->add_option("--out", bench_out);

    // fixtures
    auto* cmd_fix = app.add_subcommand("fixtures", "solve the hard-coded reference models");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_parse) {
            SgpProblem p = load_input(in_parse);
            std::cout << serialize(p);
            std::cout << "# " << p.n_vars() << " variables, " << p.constraints.size()
                      << " constraints\n";
            return 0;
        }
        if (*cmd_relax) {
            SgpProblem p = load_input(in_relax);
            RelaxOptions opts;
            opts.cuts = parse_cuts(cuts_str);
            ConciseSgp cs0 = concise(p);
            if (!overrides_str.empty()) opts.bound_overrides = named_overrides(overrides_str, cs0);
            SolverSettings sset;
            sset.eps_abs = sset.eps_rel = relax_tol;
            RelaxLevel level = level_str == "ecpr" ? RelaxLevel::ECPR : RelaxLevel::SECPR;
            RelaxRun run = relax_problem(p, level, opts, sset);
            if (!dump_path.empty()) write_out(dump_path, dump_conic(run.artifact.problem));
            std::cout << "instance=" << p.name << " level=" << level_str
                      << " vars=" << run.artifact.n_vars()
                      << " const=" << run.artifact.n_linear_constraints()
                      << " Kexp=" << run.artifact.n_exp_cones() << "\n";
            std::cout << run.result.summary() << "\n";
            if (run.result.status != SolveStatus::Optimal) return kExitSolver;
            if (p.known_optimum)
                std::cout << "LB=" << run.result.objective
                          << " rgap=" << rgap_percent(*p.known_optimum, run.result.objective)
                          << "%\n";
            else
                std::cout << "LB=" << run.result.objective << "\n";
            return 0;
        }
        if (*cmd_solve) {
            ConicProblem P = load_conic_file(in_conic);
            SolverSettings sset;
            sset.eps_abs = sset.eps_rel = conic_tol;
            SolveResult r = solve(P, sset);
            std::cout << r.summary() << "\n";
            return r.status == SolveStatus::Optimal ? 0 : kExitSolver;
        }
        if (*cmd_seq) {
            SgpProblem p = load_input(in_seq);
            SeqSettings sset;
            sset.eps = seq_eps;
            sset.max_iters = seq_max_iter;
            sset.w = seq_penalty;
            ConciseSgp cs0 = concise(p);
            if (!seq_overrides.empty())
                sset.relax.bound_overrides = named_overrides(seq_overrides, cs0);
            else if (p.name == "P1")
                sset.relax.bound_overrides = named_overrides("P1paper", cs0);
            SeqResult r = run_sequential(p, sset);
            if (!trace_path.empty()) write_out(trace_path, trace_csv(r.trace));
            double total = 0.0;
            for (auto& rec : r.trace.records) total += rec.solve_time;
            std::cout << "status=";
            switch (r.trace.status) {
                case SeqStatus::Converged: std::cout << "converged"; break;
                case SeqStatus::MaxIters: std::cout << "max_iters"; break;
                case SeqStatus::SubproblemFailed: std::cout << "subproblem_failed"; break;
            }
            std::cout << " objective=" << std::setprecision(10) << r.objective
                      << " iters=" << (r.trace.records.empty() ? 0 : r.trace.records.back().t)
                      << " feasible=" << (r.feasible ? "yes" : "no") << " time_s=" << total
                      << "\n";
            if (!r.trace.diagnostic.empty()) std::cout << "note: " << r.trace.diagnostic << "\n";
            if (r.trace.status == SeqStatus::Converged) return 0;
            return r.trace.status == SeqStatus::SubproblemFailed ? kExitSolver : kExitNoConverge;
        }
        if (*cmd_bench) {
            BenchConfig cfg;
            cfg.include_p8 = bench_all;
            cfg.solver.time_limit = 5.0;
            auto rows = run_bench(cfg);
            bool all_failed = true;
            for (auto& r : rows)
                if (r.lb) all_failed = false;
            write_out(bench_out, bench_format == "csv" ? bench_csv(rows) : bench_table(rows));
            return all_failed ? kExitSolver : 0;
        }
        if (*cmd_fix) {
            auto results = run_fixtures();
            bool ok = true;
            for (auto& f : results) {
                std::cout << (f.pass ? "PASS " : "FAIL ") << f.name << ": got=" << f.got
                          << " expected=" << f.expected << " rel_err=" << f.rel_err;
                if (!f.note.empty()) std::cout << "  (" << f.note << ")";
                std::cout << "\n";
                ok &= f.pass;
            }
            return ok ? 0 : kExitSolver;
        }
    } catch (const SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NonPositiveBound& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UndeclaredVariable& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DuplicateVariable& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
