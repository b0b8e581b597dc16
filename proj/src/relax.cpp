#include "sgprelax/relax.hpp"

#include <algorithm>
#include <cmath>

namespace sgprelax {

namespace {

constexpr double kDegenerate = 1e-12;

bool usable(const Interval& iv, double max_ratio) {
    return iv.lo && iv.hi && *iv.lo > 0.0 && *iv.hi / *iv.lo <= max_ratio;
}

std::string signature(const Monomial& m) {
    std::string s;
    for (auto& [v, a] : m.exponents) {
        s += std::to_string(v);
        s += '^';
        s += std::to_string(a);
        s += ';';
    }
    return s;
}

}  // namespace

Secant secant_coeffs(double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo) || hi / lo - 1.0 < kDegenerate) throw DegenerateInterval();
    double slope = (hi - lo) / (std::log(hi) - std::log(lo));
    double intercept = lo - slope * std::log(lo);
    return {slope, intercept};
}

std::optional<Interval> monomial_interval(const Monomial& m,
                                          const std::vector<Interval>& bounds) {
    double lo = 1.0, hi = 1.0;
    for (auto& [v, a] : m.exponents) {
        const Interval& b = bounds[v];
        if (!b.bounded()) return std::nullopt;
        if (a >= 0.0) {
            lo *= std::pow(*b.lo, a);
            hi *= std::pow(*b.hi, a);
        } else {
            lo *= std::pow(*b.hi, a);
            hi *= std::pow(*b.lo, a);
        }
    }
    return Interval{lo, hi};
}

DerivedBounds propagate_bounds(const ConciseSgp& cs) {
    DerivedBounds db;
    db.var = cs.bounds;
    db.gamma.resize(cs.constraints.size());
    db.lambda.resize(cs.constraints.size());

    // Aux objective variables: posynomial interval sums over the original
    // monomials of the transfer row (the designated aux monomials excluded).
    auto side_interval = [&](const std::vector<Monomial>& side,
                             VarId skip) -> std::optional<Interval> {
        double lo = 0.0, hi = 0.0;
        for (auto& m : side) {
            if (m.is_linear_var() && m.exponents.begin()->first == skip) continue;
            if (m.is_constant()) {
                lo += m.coef;
                hi += m.coef;
                continue;
            }
            auto iv = monomial_interval(m, cs.bounds);
            if (!iv) return std::nullopt;
            lo += m.coef * *iv->lo;
            hi += m.coef * *iv->hi;
        }
        return Interval{lo, hi};
    };
    if (!cs.constraints.empty()) {
        const ConciseConstraint& k0 = cs.constraints[0];
        if (cs.aux_minus) {
            // x_{n+1} carries the positive objective part, x_{n+2} the negative
            auto ip = side_interval(k0.pos_terms, *cs.aux_minus);
            auto im = side_interval(k0.neg_terms, cs.aux_plus);
            if (ip && *ip->lo > 0.0 && !db.var[cs.aux_plus].bounded()) db.var[cs.aux_plus] = *ip;
            if (im && *im->lo > 0.0 && !db.var[*cs.aux_minus].bounded())
                db.var[*cs.aux_minus] = *im;
        } else {
            // single aux carries f0 = f0+ - f0-; safe interval may cross zero,
            // in which case no bound is derived.
            auto ip = side_interval(k0.pos_terms, -1);
            auto im = side_interval(k0.neg_terms, cs.aux_plus);
            if (ip && im) {
                double lo = *ip->lo - *im->hi, hi = *ip->hi - *im->lo;
                if (lo > 0.0 && !db.var[cs.aux_plus].bounded())
                    db.var[cs.aux_plus] = Interval{lo, hi};
            }
        }
    }

    for (size_t k = 0; k < cs.constraints.size(); ++k) {
        const auto& cc = cs.constraints[k];
        db.gamma[k].resize(cc.neg_terms.size());
        db.lambda[k].resize(cc.pos_terms.size());
        for (size_t j = 0; j < cc.neg_terms.size(); ++j) {
            const Monomial& m = cc.neg_terms[j];
            if (m.is_constant()) {
                db.gamma[k][j] = Interval{1.0, 1.0};  // unused: constants have no columns
                continue;
            }
            if (auto iv = monomial_interval(m, db.var)) db.gamma[k][j] = *iv;
        }
        for (size_t j = 0; j < cc.pos_terms.size(); ++j) {
            const Monomial& m = cc.pos_terms[j];
            if (m.is_constant()) continue;
            if (auto iv = monomial_interval(m, db.var)) db.lambda[k][j] = *iv;
        }
    }
    return db;
}

void refine_bounds_from_constraints(const ConciseSgp& cs, DerivedBounds& db) {
    // signature -> (floor, cap) of the bare monomial value
    std::map<std::string, std::pair<double, double>> limits;
    auto limit_of = [&](const Monomial& m) -> std::pair<double, double>& {
        auto [it, inserted] = limits.emplace(signature(m),
                                             std::pair<double, double>{0.0, 1e300});
        return it->second;
    };
    for (auto& cc : cs.constraints) {
        double pos_const = 0.0, neg_const = 0.0;
        int pos_mono = 0, neg_mono = 0;
        const Monomial *pm = nullptr, *nm = nullptr;
        for (auto& m : cc.pos_terms)
            if (m.is_constant())
                pos_const += m.coef;
            else {
                ++pos_mono;
                pm = &m;
            }
        for (auto& m : cc.neg_terms)
            if (m.is_constant())
                neg_const += m.coef;
            else {
                ++neg_mono;
                nm = &m;
            }
        // const <= c' g(x): floor g at (const - neg_const)/c'
        if (pos_mono == 0 && neg_mono == 1 && pos_const - neg_const > 0.0) {
            auto& lim = limit_of(*nm);
            lim.first = std::max(lim.first, (pos_const - neg_const) / nm->coef);
        }
        // c g(x) <= const: cap g at (neg_const - pos_const)/c
        if (neg_mono == 0 && pos_mono == 1 && neg_const - pos_const > 0.0) {
            auto& lim = limit_of(*pm);
            lim.second = std::min(lim.second, (neg_const - pos_const) / pm->coef);
        }
    }
    if (limits.empty()) return;
    auto apply = [&](const Monomial& m, Interval& iv) {
        auto it = limits.find(signature(m));
        if (it == limits.end()) return;
        auto [flo, fhi] = it->second;
        if (flo > 0.0) iv.lo = std::max(iv.lo.value_or(flo), flo);
        if (fhi < 1e300) iv.hi = iv.hi ? std::min(*iv.hi, fhi) : fhi;
    };
    for (size_t k = 0; k < cs.constraints.size(); ++k) {
        const auto& cc = cs.constraints[k];
        for (size_t j = 0; j < cc.neg_terms.size(); ++j)
            if (!cc.neg_terms[j].is_constant()) apply(cc.neg_terms[j], db.gamma[k][j]);
        for (size_t j = 0; j < cc.pos_terms.size(); ++j)
            if (!cc.pos_terms[j].is_constant()) apply(cc.pos_terms[j], db.lambda[k][j]);
    }
}

namespace {

struct Builder {
    const ConciseSgp& cs;
    const RelaxOptions& opts;
    RelaxationArtifact art;

    explicit Builder(const ConciseSgp& c, const RelaxOptions& o) : cs(c), opts(o) {}

    void columns() {
        LiftedVarMap& mp = art.map;
        mp.n_ext = cs.n_ext();
        int at = 0;
        mp.x_col.resize(mp.n_ext);
        mp.xt_col.resize(mp.n_ext);
        for (int i = 0; i < mp.n_ext; ++i) mp.x_col[i] = at++;
        for (int i = 0; i < mp.n_ext; ++i) mp.xt_col[i] = at++;
        mp.lam_col.resize(cs.constraints.size());
        mp.gam_col.resize(cs.constraints.size());
        mp.gamt_col.resize(cs.constraints.size());
        for (size_t k = 0; k < cs.constraints.size(); ++k) {
            mp.lam_col[k].assign(cs.constraints[k].pos_terms.size(), -1);
            for (size_t j = 0; j < cs.constraints[k].pos_terms.size(); ++j)
                if (!cs.constraints[k].pos_terms[j].is_constant()) mp.lam_col[k][j] = at++;
        }
        for (size_t k = 0; k < cs.constraints.size(); ++k) {
            mp.gam_col[k].assign(cs.constraints[k].neg_terms.size(), -1);
            for (size_t j = 0; j < cs.constraints[k].neg_terms.size(); ++j)
                if (!cs.constraints[k].neg_terms[j].is_constant()) mp.gam_col[k][j] = at++;
        }
        for (size_t k = 0; k < cs.constraints.size(); ++k) {
            mp.gamt_col[k].assign(cs.constraints[k].neg_terms.size(), -1);
            for (size_t j = 0; j < cs.constraints[k].neg_terms.size(); ++j)
                if (!cs.constraints[k].neg_terms[j].is_constant()) mp.gamt_col[k][j] = at++;
        }
        mp.n_cols = at;
    }

    void bounds() {
        art.derived_bounds = propagate_bounds(cs);
        for (auto& [v, iv] : opts.bound_overrides) {
            if (v >= 0 && v < cs.n_ext()) art.derived_bounds.var[v] = iv;
        }
        if (opts.refine_bounds) refine_bounds_from_constraints(cs, art.derived_bounds);
    }

    // mono-lb: constraints of shape c*g(x) <= const with a usable lower bound
    // X_lo = c*prod bounds / const after normalizing to c~ g <= 1; also rows
    // const <= c' g(x) normalized to (const/c') * g^{-1} <= 1.
    struct MonoCut {
        int k;
        Monomial normalized;  // c~ * prod x^a with constraint c~ prod x^a <= 1
        double Xlo;
    };
    std::vector<MonoCut> mono_candidates() {
        std::vector<MonoCut> out;
        for (size_t k = 0; k < cs.constraints.size(); ++k) {
            const auto& cc = cs.constraints[k];
            double pos_const = 0.0, neg_const = 0.0;
            int pos_mono = 0, neg_mono = 0;
            const Monomial *pm = nullptr, *nm = nullptr;
            for (auto& m : cc.pos_terms)
                if (m.is_constant())
                    pos_const += m.coef;
                else {
                    ++pos_mono;
                    pm = &m;
                }
            for (auto& m : cc.neg_terms)
                if (m.is_constant())
                    neg_const += m.coef;
                else {
                    ++neg_mono;
                    nm = &m;
                }
            Monomial norm;
            if (pos_mono == 1 && neg_mono == 0 && pos_const == 0.0 && neg_const > 0.0) {
                norm = Monomial(pm->coef / neg_const, pm->exponents);
            } else if (pos_mono == 0 && neg_mono == 1 && neg_const == 0.0 && pos_const > 0.0) {
                // const <= c' g  <=>  (const/c') g^{-1} <= 1
                std::map<VarId, double> inv;
                for (auto& [v, a] : nm->exponents) inv[v] = -a;
                norm = Monomial(pos_const / nm->coef, inv);
            } else {
                continue;
            }
            auto iv = monomial_interval(norm, art.derived_bounds.var);
            if (!iv) continue;
            double Xlo = norm.coef * *iv->lo;
            if (!(Xlo > 0.0) || Xlo >= 1.0) continue;
            out.push_back({static_cast<int>(k), norm, Xlo});
        }
        return out;
    }

    void build(RelaxLevel level) {
        art.level = level;
        columns();
        bounds();
        ConicProblem& P = art.problem;
        const LiftedVarMap& mp = art.map;
        CutSet want = level == RelaxLevel::SECPR ? opts.cuts : CutSet::none();

        std::vector<MonoCut> monos;
        if (want.mono_lb) {
            monos = mono_candidates();
            for (auto& mc : monos) {
                art.map.mono_k.push_back(mc.k);
                art.map.X_col.push_back(art.map.n_cols++);
                art.map.Xt_col.push_back(art.map.n_cols++);
            }
            if (!monos.empty()) art.cuts_applied.mono_lb = true;
        }

        P.n = art.map.n_cols;
        P.c.assign(P.n, 0.0);
        P.c[mp.x_col[cs.aux_plus]] = 1.0;
        if (cs.aux_minus) P.c[mp.x_col[*cs.aux_minus]] = -1.0;
        P.var_lb.assign(P.n, std::nan(""));
        P.var_ub.assign(P.n, std::nan(""));

        // variable boxes
        const auto& db = art.derived_bounds;
        for (int i = 0; i < mp.n_ext; ++i) {
            const Interval& b = db.var[i];
            P.var_lb[mp.x_col[i]] = b.lo ? *b.lo : std::nan("");
            P.var_ub[mp.x_col[i]] = b.hi ? *b.hi : std::nan("");
            P.var_lb[mp.xt_col[i]] = (b.lo && *b.lo > 0) ? std::log(*b.lo) : std::nan("");
            P.var_ub[mp.xt_col[i]] = (b.hi && *b.hi > 0) ? std::log(*b.hi) : std::nan("");
        }
        for (size_t k = 0; k < cs.constraints.size(); ++k)
            for (size_t j = 0; j < cs.constraints[k].neg_terms.size(); ++j) {
                int gc = mp.gam_col[k][j];
                if (gc < 0) continue;
                P.var_lb[gc] = 0.0;
                const Interval& g = db.gamma[k][j];
                if (g.lo && *g.lo > 0.0) {
                    P.var_lb[gc] = *g.lo;
                    P.var_lb[mp.gamt_col[k][j]] = std::log(*g.lo);
                }
                if (g.hi) {
                    P.var_ub[gc] = *g.hi;
                    P.var_ub[mp.gamt_col[k][j]] = std::log(*g.hi);
                }
            }
        for (size_t k = 0; k < cs.constraints.size(); ++k)
            for (size_t j = 0; j < cs.constraints[k].pos_terms.size(); ++j)
                if (mp.lam_col[k][j] >= 0) P.var_lb[mp.lam_col[k][j]] = 0.0;
        for (size_t q = 0; q < art.map.X_col.size(); ++q) {
            P.var_lb[art.map.X_col[q]] = monos[q].Xlo;
            P.var_ub[art.map.X_col[q]] = 1.0;
            P.var_lb[art.map.Xt_col[q]] = std::log(monos[q].Xlo);
            P.var_ub[art.map.Xt_col[q]] = 0.0;
        }

        // --- structural rows ---
        // X~ link (zero cone): X~ - sum a x~ = log c
        for (size_t q = 0; q < art.map.X_col.size(); ++q) {
            std::vector<std::pair<int, double>> row{{art.map.Xt_col[q], 1.0}};
            for (auto& [v, a] : monos[q].normalized.exponents) row.push_back({mp.xt_col[v], -a});
            P.add_row(row, std::log(monos[q].normalized.coef), ConeKind::Zero);
        }
        // balance rows: sum c lam - sum c' gam <= neg_const - pos_const
        for (size_t k = 0; k < cs.constraints.size(); ++k) {
            const auto& cc = cs.constraints[k];
            std::vector<std::pair<int, double>> row;
            double rhs = 0.0;
            for (size_t j = 0; j < cc.pos_terms.size(); ++j) {
                if (mp.lam_col[k][j] >= 0)
                    row.push_back({mp.lam_col[k][j], cc.pos_terms[j].coef});
                else
                    rhs -= cc.pos_terms[j].coef;
            }
            for (size_t j = 0; j < cc.neg_terms.size(); ++j) {
                if (mp.gam_col[k][j] >= 0)
                    row.push_back({mp.gam_col[k][j], -cc.neg_terms[j].coef});
                else
                    rhs += cc.neg_terms[j].coef;
            }
            P.add_row(row, rhs, ConeKind::Nonneg);
        }
        // gamma links: degree-one monomials keep the exact linear relation
        // gam <= x_i; otherwise gam~ <= sum a x~.
        for (size_t k = 0; k < cs.constraints.size(); ++k) {
            const auto& cc = cs.constraints[k];
            for (size_t j = 0; j < cc.neg_terms.size(); ++j) {
                if (mp.gam_col[k][j] < 0) continue;
                const Monomial& m = cc.neg_terms[j];
                if (m.is_linear_var()) {
                    VarId v = m.exponents.begin()->first;
                    P.add_row({{mp.gam_col[k][j], 1.0}, {mp.x_col[v], -1.0}}, 0.0,
                              ConeKind::Nonneg);
                } else {
                    std::vector<std::pair<int, double>> row{{mp.gamt_col[k][j], 1.0}};
                    for (auto& [v, a] : m.exponents) row.push_back({mp.xt_col[v], -a});
                    P.add_row(row, 0.0, ConeKind::Nonneg);
                }
            }
        }
        // lambda floors for degree-one monomials: x_i <= lam
        for (size_t k = 0; k < cs.constraints.size(); ++k) {
            const auto& cc = cs.constraints[k];
            for (size_t j = 0; j < cc.pos_terms.size(); ++j) {
                if (mp.lam_col[k][j] < 0) continue;
                const Monomial& m = cc.pos_terms[j];
                if (m.is_linear_var()) {
                    VarId v = m.exponents.begin()->first;
                    P.add_row({{mp.x_col[v], 1.0}, {mp.lam_col[k][j], -1.0}}, 0.0,
                              ConeKind::Nonneg);
                }
            }
        }

        // --- cut rows ---
        if (want.var_hull) {
            for (int i = 0; i < mp.n_ext; ++i) {
                const Interval& b = db.var[i];
                if (!usable(b, opts.max_bound_ratio)) continue;
                if (b.fixed()) continue;  // variable fixed by its box; no cut row
                Secant s = secant_coeffs(*b.lo, *b.hi);
                P.add_row({{mp.x_col[i], 1.0}, {mp.xt_col[i], -s.slope}}, s.intercept,
                          ConeKind::Nonneg);
                art.cuts_applied.var_hull = true;
            }
        }
        if (want.gamma_hull) {
            for (size_t k = 0; k < cs.constraints.size(); ++k)
                for (size_t j = 0; j < cs.constraints[k].neg_terms.size(); ++j) {
                    if (mp.gam_col[k][j] < 0) continue;
                    const Interval& g = db.gamma[k][j];
                    if (!usable(g, opts.max_bound_ratio) || g.fixed()) continue;
                    Secant s = secant_coeffs(*g.lo, *g.hi);
                    P.add_row({{mp.gam_col[k][j], 1.0}, {mp.gamt_col[k][j], -s.slope}},
                              s.intercept, ConeKind::Nonneg);
                    art.cuts_applied.gamma_hull = true;
                }
        }
        if (want.mono_ub) {
            for (size_t k = 0; k < cs.constraints.size(); ++k) {
                const auto& cc = cs.constraints[k];
                bool all_bounded = true;
                double xbar_sum = 0.0;
                for (size_t j = 0; j < cc.neg_terms.size(); ++j) {
                    const Monomial& m = cc.neg_terms[j];
                    if (m.is_constant()) {
                        xbar_sum += m.coef;
                        continue;
                    }
                    const Interval& g = db.gamma[k][j];
                    if (!g.hi) {
                        all_bounded = false;
                        continue;
                    }
                    // gamma <= Xbar / c' (a bound tightening row)
                    P.add_row({{mp.gam_col[k][j], 1.0}}, *g.hi, ConeKind::Nonneg);
                    xbar_sum += m.coef * *g.hi;
                    art.cuts_applied.mono_ub = true;
                }
                if (all_bounded && !cc.neg_terms.empty()) {
                    std::vector<std::pair<int, double>> row;
                    double rhs = xbar_sum;
                    for (size_t j = 0; j < cc.pos_terms.size(); ++j) {
                        if (mp.lam_col[k][j] >= 0)
                            row.push_back({mp.lam_col[k][j], cc.pos_terms[j].coef});
                        else
                            rhs -= cc.pos_terms[j].coef;
                    }
                    if (!row.empty()) {
                        P.add_row(row, rhs, ConeKind::Nonneg);
                        art.cuts_applied.mono_ub = true;
                    }
                }
            }
        }
        if (want.mono_lb) {
            for (size_t q = 0; q < monos.size(); ++q) {
                double Xlo = monos[q].Xlo;
                // X <= ((Xlo-1)/log Xlo)(X~ - log Xlo) + Xlo
                double slope = (Xlo - 1.0) / std::log(Xlo);
                double intercept = Xlo - slope * std::log(Xlo);
                P.add_row({{art.map.X_col[q], 1.0}, {art.map.Xt_col[q], -slope}}, intercept,
                          ConeKind::Nonneg);
            }
        }

        P.n_structural_rows = P.rows();
        P.finalize();  // bound rows

        // --- exponential cones ---
        for (size_t k = 0; k < cs.constraints.size(); ++k) {
            const auto& cc = cs.constraints[k];
            for (size_t j = 0; j < cc.pos_terms.size(); ++j) {
                if (mp.lam_col[k][j] < 0) continue;
                std::vector<std::pair<int, double>> wexpr;
                for (auto& [v, a] : cc.pos_terms[j].exponents) wexpr.push_back({mp.xt_col[v], a});
                P.add_exp_block({{mp.lam_col[k][j], 1.0}}, 0.0, wexpr, 0.0);
            }
        }
        for (int i = 0; i < mp.n_ext; ++i)
            P.add_exp_block({{mp.x_col[i], 1.0}}, 0.0, {{mp.xt_col[i], 1.0}}, 0.0);
        for (size_t k = 0; k < cs.constraints.size(); ++k)
            for (size_t j = 0; j < cs.constraints[k].neg_terms.size(); ++j)
                if (mp.gam_col[k][j] >= 0)
                    P.add_exp_block({{mp.gam_col[k][j], 1.0}}, 0.0,
                                    {{mp.gamt_col[k][j], 1.0}}, 0.0);
        for (size_t q = 0; q < art.map.X_col.size(); ++q)
            P.add_exp_block({{art.map.X_col[q], 1.0}}, 0.0, {{art.map.Xt_col[q], 1.0}}, 0.0);

        P.check();
    }
};

}  // namespace

RelaxationArtifact build_ecpr(const ConciseSgp& cs, const RelaxOptions& opts) {
    RelaxOptions o = opts;
    o.cuts = CutSet::none();
    Builder bld(cs, o);
    bld.build(RelaxLevel::ECPR);
    return std::move(bld.art);
}

RelaxationArtifact build_secpr(const ConciseSgp& cs, const RelaxOptions& opts) {
    Builder bld(cs, opts);
    bld.build(RelaxLevel::SECPR);
    return std::move(bld.art);
}

std::vector<double> lift_point(const ConciseSgp& cs, const RelaxationArtifact& art,
                               std::span<const double> x_orig) {
    const LiftedVarMap& mp = art.map;
    std::vector<double> xext(x_orig.begin(), x_orig.end());
    xext.resize(static_cast<size_t>(cs.n_ext()), 1.0);
    for (double v : x_orig)
        if (!(v > 0.0)) throw InfeasibleInput();

    // aux values from the transfer row's side sums
    const ConciseConstraint& k0 = cs.constraints[0];
    auto side_value = [&](const std::vector<Monomial>& side, VarId skip) {
        double s = 0.0;
        for (auto& m : side) {
            if (m.is_linear_var() && m.exponents.begin()->first == skip) continue;
            double prod = 1.0;
            for (auto& [v, a] : m.exponents) prod *= std::pow(xext[v], a);
            s += m.coef * prod;
        }
        return s;
    };
    if (cs.aux_minus) {
        double vp = side_value(k0.pos_terms, *cs.aux_minus);
        double vm = side_value(k0.neg_terms, cs.aux_plus);
        double shift = std::min(vp, vm) <= 0.0 ? 1.0 - std::min(vp, vm) : 0.0;
        auto capshift = [&](VarId v, double base) {
            const Interval& b = art.derived_bounds.var[v];
            if (b.hi && base + shift > *b.hi) shift = std::max(1e-12, (*b.hi - base) * 0.5);
        };
        if (shift > 0.0) {
            capshift(cs.aux_plus, vp);
            capshift(*cs.aux_minus, vm);
        }
        xext[cs.aux_plus] = vp + shift;
        xext[*cs.aux_minus] = vm + shift;
    } else {
        double f0 = side_value(k0.pos_terms, -1) - side_value(k0.neg_terms, cs.aux_plus);
        if (!(f0 > 0.0)) throw InfeasibleInput();
        xext[cs.aux_plus] = f0;
    }

    std::vector<double> z(static_cast<size_t>(mp.n_cols), 0.0);
    for (int i = 0; i < mp.n_ext; ++i) {
        z[mp.x_col[i]] = xext[i];
        z[mp.xt_col[i]] = std::log(xext[i]);
    }
    auto bare = [&](const Monomial& m) {
        double s = 0.0;
        for (auto& [v, a] : m.exponents) s += a * z[mp.xt_col[v]];
        return s;  // log of the bare product
    };
    for (size_t k = 0; k < cs.constraints.size(); ++k) {
        const auto& cc = cs.constraints[k];
        for (size_t j = 0; j < cc.pos_terms.size(); ++j)
            if (mp.lam_col[k][j] >= 0) z[mp.lam_col[k][j]] = std::exp(bare(cc.pos_terms[j]));
        for (size_t j = 0; j < cc.neg_terms.size(); ++j)
            if (mp.gam_col[k][j] >= 0) {
                double g = bare(cc.neg_terms[j]);
                z[mp.gamt_col[k][j]] = g;
                z[mp.gam_col[k][j]] = std::exp(g);
            }
    }
    for (size_t q = 0; q < mp.X_col.size(); ++q) {
        // X = c~ prod x^a for the normalized monomial of that cut
        // (recomputed from the zero row: X~ = log c~ + sum a x~)
        // The zero row index is q (they are emitted first).
        // Reconstruct from stored problem data:
        double xt = 0.0;
        for (auto& t : art.problem.A) {
            if (t.row == static_cast<int>(q) && t.col != mp.Xt_col[q])
                xt -= t.val * z[t.col];
        }
        xt += art.problem.b[q];
        z[mp.Xt_col[q]] = xt;
        z[mp.X_col[q]] = std::exp(xt);
    }
    return z;
}

double max_violation(const RelaxationArtifact& art, std::span<const double> z) {
    const ConicProblem& P = art.problem;
    std::vector<double> ax(static_cast<size_t>(P.rows()), 0.0);
    for (auto& t : P.A) ax[t.row] += t.val * z[t.col];
    double worst = 0.0;
    int at = 0;
    for (auto& cone : P.cones) {
        for (int i = 0; i < cone.dim; ++i) {
            double s = P.b[at + i] - ax[at + i];
            switch (cone.kind) {
                case ConeKind::Zero:
                    worst = std::max(worst, std::abs(s));
                    break;
                case ConeKind::Nonneg:
                    worst = std::max(worst, -s);
                    break;
                case ConeKind::Exp:
                    break;  // handled as a block below
            }
        }
        if (cone.kind == ConeKind::Exp) {
            double u = P.b[at] - ax[at];
            double v = P.b[at + 1] - ax[at + 1];
            double w = P.b[at + 2] - ax[at + 2];
            // v == 1 in all our blocks; violation of v e^{w/v} <= u
            double viol = v > 0.0 ? v * std::exp(std::min(w / v, 700.0)) - u
                                  : std::max({-u, std::abs(v), w});
            worst = std::max(worst, viol);
        }
        at += cone.dim;
    }
    return worst;
}

RelaxationSolution recover(const RelaxationArtifact& art, const SolveResult& res) {
    if (res.status != SolveStatus::Optimal) throw BadStatus(res.status);
    const LiftedVarMap& mp = art.map;
    RelaxationSolution out;
    out.x.resize(mp.n_ext);
    out.xt.resize(mp.n_ext);
    for (int i = 0; i < mp.n_ext; ++i) {
        out.x[i] = res.primal[mp.x_col[i]];
        out.xt[i] = res.primal[mp.xt_col[i]];
    }
    auto pull = [&](const std::vector<std::vector<int>>& cols) {
        std::vector<std::vector<double>> vals(cols.size());
        for (size_t k = 0; k < cols.size(); ++k) {
            vals[k].resize(cols[k].size(), std::nan(""));
            for (size_t j = 0; j < cols[k].size(); ++j)
                if (cols[k][j] >= 0) vals[k][j] = res.primal[cols[k][j]];
        }
        return vals;
    };
    out.lam = pull(mp.lam_col);
    out.gam = pull(mp.gam_col);
    out.gamt = pull(mp.gamt_col);
    out.lower_bound = res.objective;
    out.certified_gap = res.gap;
    return out;
}

}  // namespace sgprelax
