#include "sgprelax/sequential.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace sgprelax {

namespace {

double clamp_center(double c) { return std::clamp(c, -700.0, 700.0); }

// gradient / Hessian of a signomial at a positive point
void grad_hess(const Signomial& s, const Eigen::VectorXd& x, Eigen::VectorXd* g,
               Eigen::MatrixXd* H) {
    int n = static_cast<int>(x.size());
    if (g) g->setZero(n);
    if (H) H->setZero(n, n);
    for (auto& m : s.terms) {
        double val = m.coef;
        for (auto& [v, a] : m.exponents) val *= std::pow(x[v], a);
        for (auto& [v, a] : m.exponents) {
            if (g) (*g)[v] += val * a / x[v];
            if (H) {
                for (auto& [w, bexp] : m.exponents) {
                    double h = val * a * bexp / (x[v] * x[w]);
                    if (v == w) h -= val * a / (x[v] * x[v]);
                    (*H)(v, w) += h;
                }
            }
        }
    }
}

// Active-set Lagrange-Newton polish on the original problem. Returns the
// refined point when the KKT residual collapses and all safeguards hold.
std::optional<std::vector<double>> polish_point(const SgpProblem& p,
                                                std::span<const double> x0, double tol) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;
    int n = p.n_vars();
    VectorXd x = Eigen::Map<const VectorXd>(x0.data(), n);
    double act_tol = 5e-2;

    // active sets from the incoming point
    std::vector<int> fixed_at;  // -1 free, 0 lower, 1 upper
    fixed_at.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        const Interval& b = p.var_bounds[i];
        if (b.lo && x[i] - *b.lo <= act_tol * std::max(1.0, std::abs(*b.lo))) fixed_at[i] = 0;
        else if (b.hi && *b.hi - x[i] <= act_tol * std::max(1.0, std::abs(*b.hi)))
            fixed_at[i] = 1;
    }
    std::vector<Signomial> act;  // active constraints as lhs - rhs
    for (auto& c : p.constraints) {
        double v = evaluate(c.lhs, std::span<const double>(x.data(), n)) -
                   evaluate(c.rhs, std::span<const double>(x.data(), n));
        double scale = 1.0 + std::abs(evaluate(c.rhs, std::span<const double>(x.data(), n)));
        if (std::abs(v) <= act_tol * scale) act.push_back(c.lhs + c.rhs.negated());
    }
    for (int i = 0; i < n; ++i)
        if (fixed_at[i] == 0)
            x[i] = *p.var_bounds[i].lo;
        else if (fixed_at[i] == 1)
            x[i] = *p.var_bounds[i].hi;

    std::vector<int> free_idx;
    for (int i = 0; i < n; ++i)
        if (fixed_at[i] < 0) free_idx.push_back(i);
    int nf = static_cast<int>(free_idx.size());
    int mA = static_cast<int>(act.size());
    if (mA > nf) return std::nullopt;

    VectorXd mu = VectorXd::Zero(mA);
    for (int iter = 0; iter < 30; ++iter) {
        VectorXd g0;
        MatrixXd H0;
        grad_hess(p.objective, x, &g0, &H0);
        MatrixXd J(mA, n);
        VectorXd gval(mA);
        for (int i = 0; i < mA; ++i) {
            VectorXd gi;
            MatrixXd Hi;
            grad_hess(act[i], x, &gi, &Hi);
            J.row(i) = gi.transpose();
            double v = evaluate(act[i], std::span<const double>(x.data(), n));
            gval[i] = v;
            H0 += mu[i] * Hi;
        }
        // KKT system on free coordinates
        MatrixXd K(nf + mA, nf + mA);
        K.setZero();
        VectorXd rhs(nf + mA);
        for (int a = 0; a < nf; ++a) {
            for (int b = 0; b < nf; ++b) K(a, b) = H0(free_idx[a], free_idx[b]);
            double r = g0[free_idx[a]];
            for (int i = 0; i < mA; ++i) {
                K(a, nf + i) = J(i, free_idx[a]);
                r += mu[i] * J(i, free_idx[a]);
            }
            rhs[a] = -r;
        }
        for (int i = 0; i < mA; ++i) {
            for (int a = 0; a < nf; ++a) K(nf + i, a) = J(i, free_idx[a]);
            rhs[nf + i] = -gval[i];
        }
        double kkt_res = rhs.norm();
        if (kkt_res <= 1e-12 * (1.0 + g0.norm())) break;
        // regularize lightly in case the reduced Hessian is indefinite
        for (int a = 0; a < nf; ++a) K(a, a) += 1e-12;
        VectorXd step = K.fullPivLu().solve(rhs);
        if (!step.allFinite()) return std::nullopt;
        double alpha = 1.0;
        for (int a = 0; a < nf; ++a) {
            int i = free_idx[a];
            double nx = x[i] + step[a];
            if (nx <= 0.0) alpha = std::min(alpha, -0.9 * x[i] / step[a]);
        }
        for (int a = 0; a < nf; ++a) x[free_idx[a]] += alpha * step[a];
        mu += alpha * step.tail(mA);
        if (alpha * step.head(nf).norm() <= 1e-14 * (1.0 + x.norm())) break;
    }
    std::vector<double> out(x.data(), x.data() + n);
    if (!p.in_box(out, 1e-9)) return std::nullopt;
    auto rep = check_feasible(p, out, tol);
    if (!rep.feasible) return std::nullopt;
    return out;
}

}  // namespace

AffineEstimator affine_estimator(double center) {
    double e = std::exp(clamp_center(center));
    return {e, e};
}

RelaxationArtifact build_subproblem(const ConciseSgp& cs, const RelaxOptions& opts,
                                    std::span<const double> xt_center,
                                    const std::vector<std::vector<double>>& gamt_center,
                                    double w, double w_prime) {
    RelaxationArtifact art = build_secpr(cs, opts);
    ConicProblem& P = art.problem;
    LiftedVarMap& mp = art.map;
    if (w_prime <= 0.0) w_prime = w;

    auto add_tangent = [&](int val_col, int tilde_col, double center, double weight) {
        int eta = P.n++;
        mp.eta_col.push_back(eta);
        mp.n_cols = P.n;
        P.c.push_back(weight);
        P.var_lb.push_back(0.0);
        P.var_ub.push_back(std::nan(""));
        AffineEstimator est = affine_estimator(center);
        double cc = clamp_center(center);
        // val <= est.value + est.slope (tilde - cc) + eta
        P.add_row({{val_col, 1.0}, {tilde_col, -est.slope}, {eta, -1.0}},
                  est.value - est.slope * cc, ConeKind::Nonneg);
        P.add_row({{eta, -1.0}}, 0.0, ConeKind::Nonneg);  // eta >= 0
    };
    for (int i = 0; i < mp.n_ext; ++i)
        add_tangent(mp.x_col[i], mp.xt_col[i], xt_center[i], w);
    for (size_t k = 0; k < mp.gam_col.size(); ++k)
        for (size_t j = 0; j < mp.gam_col[k].size(); ++j)
            if (mp.gam_col[k][j] >= 0)
                add_tangent(mp.gam_col[k][j], mp.gamt_col[k][j], gamt_center[k][j], w_prime);
    return art;
}

std::string trace_csv(const IterTrace& trace) {
    std::ostringstream os;
    os.precision(12);
    os << "iter,objective,penalty,step_norm,solve_time_s\n";
    for (auto& r : trace.records)
        os << r.t << "," << r.objective << "," << r.penalty << "," << r.step_norm << ","
           << r.solve_time << "\n";
    return os.str();
}

SeqResult run_sequential(const SgpProblem& p, const SeqSettings& settings) {
    SeqResult out;
    ConciseSgp cs = concise(p);
    RelaxOptions ropts = settings.relax;

    RelaxationArtifact relax_art =
        settings.init_secpr ? build_secpr(cs, ropts) : build_ecpr(cs, ropts);
    SolveResult r0 = solve(relax_art.problem, settings.solver);
    if (r0.status != SolveStatus::Optimal) {
        out.trace.status = SeqStatus::SubproblemFailed;
        out.trace.diagnostic = "relaxation solve: " + to_string(r0.status);
        return out;
    }
    const LiftedVarMap& mp = relax_art.map;
    int n_ext = mp.n_ext;

    auto extract = [&](const std::vector<double>& z, IterRecord& rec) {
        rec.x.resize(n_ext);
        rec.xt.resize(n_ext);
        rec.gamt.clear();
        for (int i = 0; i < n_ext; ++i) {
            rec.x[i] = z[mp.x_col[i]];
            rec.xt[i] = z[mp.xt_col[i]];
        }
        for (size_t k = 0; k < mp.gamt_col.size(); ++k)
            for (size_t j = 0; j < mp.gamt_col[k].size(); ++j)
                if (mp.gamt_col[k][j] >= 0) rec.gamt.push_back(z[mp.gamt_col[k][j]]);
    };

    IterTrace& trace = out.trace;
    {
        IterRecord rec;
        rec.t = 0;
        extract(r0.primal, rec);
        rec.objective = cs.objective_of(rec.x);
        rec.solve_time = r0.solve_time;
        trace.records.push_back(std::move(rec));
    }

    double w = settings.w;
    if (w <= 0.0) {
        double maxc = 1.0;
        if (!cs.constraints.empty())
            for (auto& m : cs.constraints[0].neg_terms)
                if (!m.is_constant()) maxc = std::max(maxc, m.coef);
        w = std::max(4.0, 2.0 * maxc);
    }
    double wp = settings.w_prime > 0.0 ? settings.w_prime : w;

    // centers: the previous iterate's tilde values
    std::vector<double> xt_c = trace.records[0].xt;
    std::vector<std::vector<double>> gamt_c(mp.gamt_col.size());
    {
        size_t at = 0;
        for (size_t k = 0; k < mp.gamt_col.size(); ++k) {
            gamt_c[k].assign(mp.gamt_col[k].size(), 0.0);
            for (size_t j = 0; j < mp.gamt_col[k].size(); ++j)
                if (mp.gamt_col[k][j] >= 0) gamt_c[k][j] = trace.records[0].gamt[at++];
        }
    }

    auto pack = [&](const IterRecord& rec) {
        std::vector<double> v = rec.xt;
        v.insert(v.end(), rec.gamt.begin(), rec.gamt.end());
        return v;
    };
    std::vector<double> s_prev2, s_prev1;
    int cooldown = 0;
    int escalations = 0;
    int last_escalation_t = 0;
    double best_feasible_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best_feasible_x;
    bool polished = false;

    auto original_of = [&](const IterRecord& rec) {
        return std::vector<double>(rec.x.begin(), rec.x.begin() + p.n_vars());
    };

    for (int t = 1; t <= settings.max_iters; ++t) {
        RelaxationArtifact sub = build_subproblem(cs, ropts, xt_c, gamt_c, w, wp);
        SolveResult rs = solve(sub.problem, settings.solver);
        if (rs.status != SolveStatus::Optimal) {
            trace.status = SeqStatus::SubproblemFailed;
            trace.diagnostic = "subproblem " + std::to_string(t) + ": " + to_string(rs.status);
            break;
        }
        IterRecord rec;
        rec.t = t;
        extract(rs.primal, rec);
        rec.objective = cs.objective_of(rec.x);
        rec.solve_time = rs.solve_time;
        rec.penalty = 0.0;
        for (size_t q = 0; q < sub.map.eta_col.size(); ++q)
            rec.penalty += sub.problem.c[sub.map.eta_col[q]] * rs.primal[sub.map.eta_col[q]];

        std::vector<double> s_cur = pack(rec);
        const std::vector<double> s_center_prev = [&] {
            std::vector<double> v = xt_c;
            for (auto& gk : gamt_c) v.insert(v.end(), gk.begin(), gk.end());
            return v;
        }();
        double step_xt = 0.0, step_gamt = 0.0;
        {
            const std::vector<double>& ref =
                trace.records.size() >= 1 ? pack(trace.records.back()) : s_center_prev;
            for (int i = 0; i < n_ext; ++i) {
                double d = rec.xt[i] - ref[i];
                step_xt += d * d;
            }
            for (size_t q = 0; q < rec.gamt.size(); ++q) {
                double d = rec.gamt[q] - ref[n_ext + q];
                step_gamt += d * d;
            }
            step_xt = std::sqrt(step_xt);
            step_gamt = std::sqrt(step_gamt);
        }
        rec.step_norm = std::hypot(step_xt, step_gamt);
        trace.records.push_back(rec);

        std::vector<double> xo = original_of(rec);
        auto rep = check_feasible(p, xo, 1e-6);
        if (rep.feasible) {
            double fo = evaluate(p.objective, xo);
            if (fo < best_feasible_obj) {
                best_feasible_obj = fo;
                best_feasible_x = xo;
            }
        }

        double obj_scale = 1.0 + std::abs(rec.objective);
        bool steps_small = step_xt <= settings.eps && step_gamt <= settings.eps;
        bool pen_small = rec.penalty <= 1e-6 * obj_scale;
        if (steps_small && pen_small && rep.feasible) {
            trace.status = SeqStatus::Converged;
            out.x = xo;
            out.objective = evaluate(p.objective, xo);
            out.feasible = true;
            return out;
        }

        // endgame polish: refine with an active-set Newton step on the
        // original problem once the penalty mass has come down
        if (settings.polish && !polished && t >= 3 && rec.penalty <= 5e-2 * obj_scale) {
            auto px = polish_point(p, xo, 1e-8);
            if (px && (best_feasible_x.empty() ||
                       evaluate(p.objective, *px) <= best_feasible_obj + 1e-6 * obj_scale)) {
                polished = true;
                std::vector<double> xe = extend_point(p, cs, *px);
                for (int i = 0; i < n_ext; ++i) xt_c[i] = std::log(xe[i]);
                for (size_t k = 0; k < mp.gamt_col.size(); ++k)
                    for (size_t j = 0; j < mp.gamt_col[k].size(); ++j)
                        if (mp.gamt_col[k][j] >= 0) {
                            double s = 0.0;
                            for (auto& [v, a] : cs.constraints[k].neg_terms[j].exponents)
                                s += a * xt_c[v];
                            gamt_c[k][j] = s;
                        }
                s_prev2.clear();
                s_prev1.clear();
                cooldown = 3;
                continue;
            }
        }

        // penalty stall: escalate the weight
        if (rec.penalty > 1e-4 * obj_scale && t - last_escalation_t >= 20) {
            if (escalations < 3) {
                w *= 10.0;
                wp *= 10.0;
                ++escalations;
                last_escalation_t = t;
                s_prev2.clear();
                s_prev1.clear();
            } else {
                trace.status = SeqStatus::MaxIters;
                trace.diagnostic =
                    "penalty mass failed to decay (weight escalated " +
                    std::to_string(escalations) + " times); consider a larger --penalty";
                break;
            }
        }

        // next centers: the solution, possibly extrapolated
        std::vector<double> next_c = s_cur;
        if (settings.accelerate && cooldown == 0 && !s_prev1.empty() && !s_prev2.empty() &&
            rec.penalty <= 1e-2 * obj_scale) {
            double num = 0.0, den = 0.0, d2n = 0.0;
            for (size_t q = 0; q < s_cur.size(); ++q) {
                double d1 = s_prev1[q] - s_prev2[q];
                double d2 = s_cur[q] - s_prev1[q];
                num += d1 * d2;
                den += d1 * d1;
                d2n += d2 * d2;
            }
            if (den > 0.0 && d2n > 0.0) {
                double r = num / den;
                if (r > 0.05 && r < 0.97) {
                    double gain = r / (1.0 - r);
                    gain = std::min(gain, 50.0);
                    for (size_t q = 0; q < s_cur.size(); ++q)
                        next_c[q] = s_cur[q] + gain * (s_cur[q] - s_prev1[q]);
                    cooldown = 2;
                }
            }
        }
        if (cooldown > 0) --cooldown;
        s_prev2 = s_prev1;
        s_prev1 = s_cur;
        for (int i = 0; i < n_ext; ++i) xt_c[i] = next_c[i];
        {
            size_t at = n_ext;
            for (size_t k = 0; k < gamt_c.size(); ++k)
                for (size_t j = 0; j < gamt_c[k].size(); ++j)
                    if (mp.gamt_col[k][j] >= 0) gamt_c[k][j] = next_c[at++];
        }
    }

    if (trace.status != SeqStatus::SubproblemFailed) trace.status = SeqStatus::MaxIters;
    if (!best_feasible_x.empty()) {
        out.x = best_feasible_x;
        out.objective = best_feasible_obj;
        out.feasible = true;
    } else if (!trace.records.empty()) {
        out.x = original_of(trace.records.back());
        out.objective = evaluate(p.objective, out.x);
        out.feasible = false;
    }
    return out;
}

}  // namespace sgprelax
