#include "sgprelax/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <chrono>
#include <cmath>
#include <sstream>

#include "sgprelax/expcone.hpp"

namespace sgprelax {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

struct Scaling {
    VectorXd D;  // row scaling
    VectorXd E;  // column scaling
    double sigma = 1.0;  // b scaling
    double rho = 1.0;    // c scaling
};

// Row scaling must be uniform inside each exp block so the cone is preserved.
void ruiz_equilibrate(SpMat& A, const std::vector<ConeSpec>& cones, int iters, Scaling& sc) {
    int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
    sc.D = VectorXd::Ones(m);
    sc.E = VectorXd::Ones(n);
    for (int pass = 0; pass < iters; ++pass) {
        VectorXd rn = VectorXd::Zero(m), cn = VectorXd::Zero(n);
        for (int k = 0; k < A.outerSize(); ++k)
            for (SpMat::InnerIterator it(A, k); it; ++it) {
                double a = std::abs(it.value());
                rn[it.row()] = std::max(rn[it.row()], a);
                cn[it.col()] = std::max(cn[it.col()], a);
            }
        int at = 0;
        for (auto& cone : cones) {
            if (cone.kind == ConeKind::Exp) {
                double g = 1.0;
                int cnt = 0;
                for (int i = 0; i < cone.dim; ++i)
                    if (rn[at + i] > 1e-10) {
                        g *= rn[at + i];
                        ++cnt;
                    }
                g = cnt ? std::pow(g, 1.0 / cnt) : 1.0;
                for (int i = 0; i < cone.dim; ++i) rn[at + i] = g;
            }
            at += cone.dim;
        }
        for (int i = 0; i < m; ++i) rn[i] = rn[i] < 1e-10 ? 1.0 : 1.0 / std::sqrt(rn[i]);
        for (int j = 0; j < n; ++j) cn[j] = cn[j] < 1e-10 ? 1.0 : 1.0 / std::sqrt(cn[j]);
        for (int k = 0; k < A.outerSize(); ++k)
            for (SpMat::InnerIterator it(A, k); it; ++it)
                it.valueRef() *= rn[it.row()] * cn[it.col()];
        sc.D.array() *= rn.array();
        sc.E.array() *= cn.array();
    }
}

void project_dual_cone(VectorXd& y, const std::vector<ConeSpec>& cones) {
    int at = 0;
    for (auto& cone : cones) {
        switch (cone.kind) {
            case ConeKind::Zero:
                break;  // dual of {0} is free
            case ConeKind::Nonneg:
                for (int i = 0; i < cone.dim; ++i) y[at + i] = std::max(y[at + i], 0.0);
                break;
            case ConeKind::Exp: {
                // Pi_K*(y) = y + Pi_K(-y)
                Vec3 q{-y[at], -y[at + 1], -y[at + 2]};
                Vec3 pk = project_exp(q);
                y[at] += pk[0];
                y[at + 1] += pk[1];
                y[at + 2] += pk[2];
                break;
            }
        }
        at += cone.dim;
    }
}

void project_primal_cone(VectorXd& s, const std::vector<ConeSpec>& cones) {
    int at = 0;
    for (auto& cone : cones) {
        switch (cone.kind) {
            case ConeKind::Zero:
                for (int i = 0; i < cone.dim; ++i) s[at + i] = 0.0;
                break;
            case ConeKind::Nonneg:
                for (int i = 0; i < cone.dim; ++i) s[at + i] = std::max(s[at + i], 0.0);
                break;
            case ConeKind::Exp: {
                Vec3 q{s[at], s[at + 1], s[at + 2]};
                Vec3 pk = project_exp(q);
                s[at] = pk[0];
                s[at + 1] = pk[1];
                s[at + 2] = pk[2];
                break;
            }
        }
        at += cone.dim;
    }
}

// Anderson acceleration (type II) on the fixed-point map of the splitting.
struct Anderson {
    int mem;
    int n = 0;
    std::vector<VectorXd> xs, gs;  // iterates and map values

    explicit Anderson(int memory) : mem(memory) {}

    void push(const VectorXd& x, const VectorXd& gx) {
        xs.push_back(x);
        gs.push_back(gx);
        if (static_cast<int>(xs.size()) > mem + 1) {
            xs.erase(xs.begin());
            gs.erase(gs.begin());
        }
    }

    bool candidate(VectorXd& out) {
        int k = static_cast<int>(xs.size());
        if (k < 3) return false;
        int m = k - 1;
        MatrixXd dF(xs[0].size(), m);
        for (int j = 0; j < m; ++j)
            dF.col(j) = (gs[j + 1] - xs[j + 1]) - (gs[j] - xs[j]);
        VectorXd f = gs[k - 1] - xs[k - 1];
        // least squares min ||f - dF g||
        VectorXd gamma = dF.colPivHouseholderQr().solve(f);
        if (!gamma.allFinite()) return false;
        out = gs[k - 1];
        for (int j = 0; j < m; ++j) out -= gamma[j] * (gs[j + 1] - gs[j]);
        return out.allFinite();
    }

    void reset() {
        xs.clear();
        gs.clear();
    }
};

}  // namespace

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::PrimalInfeasible: return "primal_infeasible";
        case SolveStatus::DualInfeasible: return "dual_infeasible";
        case SolveStatus::MaxIters: return "max_iters";
        case SolveStatus::TimeLimit: return "time_limit";
    }
    return "?";
}

std::string SolveResult::summary() const {
    std::ostringstream os;
    os.precision(10);
    os << "status=" << to_string(status) << " obj=" << objective << " iters=" << iters
       << " pres=" << pres << " dres=" << dres << " gap=" << gap;
    return os.str();
}

SolveResult solve(const ConicProblem& prob_in, const SolverSettings& st) {
    auto t_start = std::chrono::steady_clock::now();
    ConicProblem prob = prob_in;
    prob.finalize();
    prob.check();

    const int n = prob.n, m = prob.rows();
    SpMat A(m, n);
    {
        std::vector<Eigen::Triplet<double>> ts;
        ts.reserve(prob.A.size());
        for (auto& t : prob.A) ts.emplace_back(t.row, t.col, t.val);
        A.setFromTriplets(ts.begin(), ts.end());
    }
    VectorXd b0 = Eigen::Map<const VectorXd>(prob.b.data(), m);
    VectorXd c0 = Eigen::Map<const VectorXd>(prob.c.data(), n);

    Scaling sc;
    ruiz_equilibrate(A, prob.cones, st.ruiz_iters, sc);
    VectorXd bs = (sc.D.array() * b0.array()).matrix();
    VectorXd cs = (sc.E.array() * c0.array()).matrix();
    sc.sigma = 1.0 / std::max(bs.norm(), 1e-6);
    sc.rho = 1.0 / std::max(cs.norm(), 1e-6);
    bs *= sc.sigma;
    cs *= sc.rho;

    // (I + A'A) factorization for the linear-system step
    MatrixXd G = MatrixXd::Identity(n, n);
    G.noalias() += MatrixXd(SpMat(A.transpose() * A));
    Eigen::LLT<MatrixXd> llt(G);
    if (llt.info() != Eigen::Success) throw std::runtime_error("KKT factorization failed");

    auto msolve = [&](const VectorXd& p, const VectorXd& q, VectorXd& zx, VectorXd& zy) {
        zx = llt.solve(p - A.transpose() * q);
        zy = q + A * zx;
    };
    VectorXd gx, gy;
    msolve(cs, bs, gx, gy);
    const double gh = cs.dot(gx) + bs.dot(gy);

    const int N = n + m + 1;
    VectorXd u = VectorXd::Zero(N), v = VectorXd::Zero(N);
    u[N - 1] = 1.0;
    v[N - 1] = 1.0;

    VectorXd w(N), ut(N), uh(N), t(N), px, py;
    auto fixed_point_step = [&](const VectorXd& ucur, const VectorXd& vcur, VectorXd& unew,
                                VectorXd& vnew) {
        w = ucur + vcur;
        msolve(w.head(n), w.segment(n, m), px, py);
        double ztau = (w[N - 1] + cs.dot(px) + bs.dot(py)) / (1.0 + gh);
        ut.head(n) = px - gx * ztau;
        ut.segment(n, m) = py - gy * ztau;
        ut[N - 1] = ztau;
        uh = st.alpha * ut + (1.0 - st.alpha) * ucur;
        t = uh - vcur;
        unew = t;
        {
            VectorXd yseg = t.segment(n, m);
            project_dual_cone(yseg, prob.cones);
            unew.segment(n, m) = yseg;
        }
        unew[N - 1] = std::max(t[N - 1], 0.0);
        vnew = vcur - uh + unew;
    };

    SolveResult res;
    res.primal.assign(n, 0.0);
    res.dual.assign(m, 0.0);
    res.slack.assign(m, 0.0);

    const double bnorm = b0.norm(), cnorm = c0.norm();
    Anderson aa(st.acceleration_memory);
    VectorXd uv(2 * N), g_uv(2 * N), cand(2 * N);
    VectorXd u_plain(N), v_plain(N);

    auto residual_of = [&](const VectorXd& ucur, const VectorXd& vcur) {
        fixed_point_step(ucur, vcur, u_plain, v_plain);
        return std::sqrt((u_plain - ucur).squaredNorm() + (v_plain - vcur).squaredNorm());
    };

    int it = 0;
    bool done = false;
    for (it = 0; it < st.max_iters && !done; ++it) {
        fixed_point_step(u, v, u_plain, v_plain);
        double plain_res =
            std::sqrt((u_plain - u).squaredNorm() + (v_plain - v).squaredNorm());
        bool accepted_aa = false;
        if (st.acceleration_memory > 0) {
            uv << u, v;
            g_uv << u_plain, v_plain;
            aa.push(uv, g_uv);
            if (aa.candidate(cand)) {
                VectorXd ua = cand.head(N), va = cand.tail(N);
                // safeguard: accept only if the fixed-point residual improves
                double res_aa = residual_of(ua, va);
                if (std::isfinite(res_aa) && res_aa < 0.9 * plain_res) {
                    u = ua;
                    v = va;
                    accepted_aa = true;
                }
            }
        }
        if (!accepted_aa) {
            u = u_plain;
            v = v_plain;
        }

        if ((it % st.check_interval) != 0 && it != st.max_iters - 1) continue;

        double tau = u[N - 1];
        if (tau > 1e-9) {
            VectorXd x = u.head(n) / tau;
            VectorXd y = u.segment(n, m) / tau;
            VectorXd s = v.segment(n, m) / tau;
            // unscale
            VectorXd xu = (sc.E.array() * x.array()).matrix() / sc.sigma;
            VectorXd yu = (sc.D.array() * y.array()).matrix() / sc.rho;
            VectorXd su = (s.array() / sc.D.array()).matrix() / sc.sigma;
            VectorXd pr = b0 - su;
            for (auto& tr : prob.A) pr[tr.row] -= tr.val * xu[tr.col];
            double pres = pr.norm();
            VectorXd dr = c0;
            for (auto& tr : prob.A) dr[tr.col] += tr.val * yu[tr.row];
            double dres = dr.norm();
            double pobj = c0.dot(xu), dobj = -b0.dot(yu);
            double gap = std::abs(pobj - dobj);
            bool ok_p = pres <= st.eps_abs + st.eps_rel * (1.0 + bnorm);
            bool ok_d = dres <= st.eps_abs + st.eps_rel * (1.0 + cnorm);
            bool ok_g = gap <= st.eps_abs + st.eps_rel * (1.0 + std::abs(pobj) + std::abs(dobj));
            if (ok_p && ok_d && ok_g) {
                Eigen::Map<VectorXd>(res.primal.data(), n) = xu;
                Eigen::Map<VectorXd>(res.dual.data(), m) = yu;
                Eigen::Map<VectorXd>(res.slack.data(), m) = su;
                res.status = SolveStatus::Optimal;
                res.objective = pobj;
                res.dual_objective = dobj;
                res.pres = pres / (1.0 + bnorm);
                res.dres = dres / (1.0 + cnorm);
                res.gap = gap / (1.0 + std::abs(pobj) + std::abs(dobj));
                done = true;
            }
        }
        if (!done) {
            // infeasibility certificates (scaled space is fine for the test)
            VectorXd y = u.segment(n, m);
            double bty = bs.dot(y);
            if (bty < -1e-12) {
                VectorXd aty = A.transpose() * y;
                if (aty.norm() * std::max(1.0, bs.norm()) <= -bty * st.eps_infeas) {
                    VectorXd yu = (sc.D.array() * y.array()).matrix();
                    double scale = -b0.dot(yu);
                    if (scale > 0) {
                        yu /= scale;
                        Eigen::Map<VectorXd>(res.dual.data(), m) = yu;
                        res.status = SolveStatus::PrimalInfeasible;
                        done = true;
                    }
                }
            }
            VectorXd x = u.head(n);
            double ctx = cs.dot(x);
            if (!done && ctx < -1e-12) {
                VectorXd ax = A * x;
                VectorXd sfix = -ax;
                project_primal_cone(sfix, prob.cones);
                if ((ax + sfix).norm() * std::max(1.0, cs.norm()) <= -ctx * st.eps_infeas) {
                    VectorXd xu = (sc.E.array() * x.array()).matrix();
                    double scale = -c0.dot(xu);
                    if (scale > 0) {
                        xu /= scale;
                        Eigen::Map<VectorXd>(res.primal.data(), n) = xu;
                        res.status = SolveStatus::DualInfeasible;
                        done = true;
                    }
                }
            }
        }
        if (!done && st.time_limit > 0.0) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                      t_start)
                            .count();
            if (el > st.time_limit) {
                res.status = SolveStatus::TimeLimit;
                done = true;
            }
        }
    }
    if (res.status == SolveStatus::MaxIters || res.status == SolveStatus::TimeLimit) {
        double tau = u[N - 1];
        if (tau > 1e-9) {
            VectorXd x = u.head(n) / tau;
            VectorXd xu = (sc.E.array() * x.array()).matrix() / sc.sigma;
            Eigen::Map<VectorXd>(res.primal.data(), n) = xu;
            res.objective = c0.dot(xu);
        }
    }
    res.iters = it;
    res.solve_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

}  // namespace sgprelax
