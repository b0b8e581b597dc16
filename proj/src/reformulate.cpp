#include "sgprelax/reformulate.hpp"

#include <cmath>

namespace sgprelax {

std::vector<double> ConciseSgp::d() const {
    std::vector<double> v(static_cast<size_t>(n_ext()), 0.0);
    v[aux_plus] = 1.0;
    if (aux_minus) v[*aux_minus] = -1.0;
    return v;
}

double ConciseSgp::objective_of(std::span<const double> x_ext) const {
    double o = x_ext[aux_plus];
    if (aux_minus) o -= x_ext[*aux_minus];
    return o;
}

SgpProblem transfer_objective(const SgpProblem& p, bool single_aux) {
    SgpProblem q = p;
    int n = p.n_vars();
    VarId ap = n;
    q.var_names.push_back("_t" + std::to_string(n + 1));
    q.var_bounds.push_back({});
    Signomial new_obj;
    new_obj.add_term(Monomial(1.0, {{ap, 1.0}}));
    Signomial rhs = new_obj;
    if (!single_aux) {
        VarId am = n + 1;
        q.var_names.push_back("_t" + std::to_string(n + 2));
        q.var_bounds.push_back({});
        new_obj.add_term(Monomial(-1.0, {{am, 1.0}}));
        rhs.add_term(Monomial(-1.0, {{am, 1.0}}));
    }
    SgpConstraint transfer;
    transfer.label = "obj";
    transfer.lhs = p.objective;
    transfer.rhs = rhs;
    q.constraints.insert(q.constraints.begin(), std::move(transfer));
    q.objective = new_obj;
    return q;
}

ConciseSgp split_posynomials(const SgpProblem& inter, int n_orig, VarId aux_plus,
                             std::optional<VarId> aux_minus) {
    ConciseSgp cs;
    cs.n_orig = n_orig;
    cs.aux_plus = aux_plus;
    cs.aux_minus = aux_minus;
    cs.var_names = inter.var_names;
    cs.bounds = inter.var_bounds;

    for (auto& con : inter.constraints) {
        ConciseConstraint cc;
        cc.label = con.label;
        double net_const = 0.0;
        auto route = [&](const Monomial& m, double sign) {
            double c = sign * m.coef;
            if (m.is_constant()) {
                net_const += c;
            } else if (c > 0.0) {
                cc.pos_terms.push_back(Monomial(c, m.exponents));
            } else {
                cc.neg_terms.push_back(Monomial(-c, m.exponents));
            }
        };
        for (auto& m : con.lhs.terms) route(m, 1.0);
        for (auto& m : con.rhs.terms) route(m, -1.0);
        if (net_const > 0.0)
            cc.pos_terms.push_back(Monomial::constant(net_const));
        else if (net_const < 0.0)
            cc.neg_terms.push_back(Monomial::constant(-net_const));

        if (cc.pos_terms.empty()) {
            // 0 <= posynomial: always true over x > 0
            cs.warnings.push_back("dropped vacuous constraint '" + con.label + "'");
            continue;
        }
        if (cc.neg_terms.empty()) {
            bool pos_is_const = true;
            for (auto& m : cc.pos_terms) pos_is_const &= m.is_constant();
            if (pos_is_const) throw InfeasibleConstant(con.label);
            // posynomial <= 0 over x > 0 is infeasible as well
            throw InfeasibleConstant(con.label);
        }
        cs.constraints.push_back(std::move(cc));
    }
    return cs;
}

ConciseSgp concise(const SgpProblem& p, AuxMode mode) {
    bool single = false;
    switch (mode) {
        case AuxMode::SingleAux:
            single = true;
            break;
        case AuxMode::TwoAux:
            single = false;
            break;
        case AuxMode::Auto:
            single = p.objective.is_posynomial() || p.objective_nonneg_over_box;
            break;
    }
    if (single && !(p.objective.is_posynomial() || p.objective_nonneg_over_box))
        throw std::runtime_error(
            "single-aux mode requires a posynomial objective or an asserted "
            "nonnegative objective");
    int n = p.n_vars();
    SgpProblem inter = transfer_objective(p, single);
    std::optional<VarId> am;
    if (!single) am = n + 1;
    return split_posynomials(inter, n, n, am);
}

std::vector<double> extend_point(const SgpProblem& p, const ConciseSgp& cs,
                                 std::span<const double> x) {
    std::vector<double> ext(x.begin(), x.end());
    ext.resize(static_cast<size_t>(cs.n_ext()), 1.0);
    Signomial fpos, fneg;
    for (auto& m : p.objective.terms)
        (m.coef > 0 ? fpos : fneg).add_term(Monomial(std::abs(m.coef), m.exponents));
    if (cs.aux_minus) {
        double vp = evaluate(fpos, x);
        double vm = evaluate(fneg, x);
        // Shift both sides equally so each stays strictly positive and within
        // any derived bound; d'x = vp - vm is preserved exactly.
        double shift = 0.0;
        double mn = std::min(vp, vm);
        if (mn <= 0.0) {
            shift = 1.0 - mn;
            auto cap = [&](VarId v, double base) {
                const Interval& b = cs.bounds[v];
                if (b.hi && base + shift > *b.hi)
                    shift = std::max(1e-12 - mn, (*b.hi - base) * 0.5);
            };
            cap(cs.aux_plus, vp);
            cap(*cs.aux_minus, vm);
        }
        ext[cs.aux_plus] = vp + shift;
        ext[*cs.aux_minus] = vm + shift;
    } else {
        double f0 = evaluate(p.objective, x);
        if (!(f0 > 0.0))
            throw std::runtime_error("single-aux lift requires a positive objective value");
        ext[cs.aux_plus] = f0;
    }
    return ext;
}

}  // namespace sgprelax
