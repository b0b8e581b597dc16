#include "sgprelax/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sgprelax {

VarId SgpProblem::var(const std::string& nm) const {
    for (size_t i = 0; i < var_names.size(); ++i)
        if (var_names[i] == nm) return static_cast<VarId>(i);
    throw UndeclaredVariable(nm);
}

static void check_vars_declared(const Signomial& s, int n) {
    VarId mx = s.max_var();
    if (mx >= n) throw UndeclaredVariable("#" + std::to_string(mx));
}

void SgpProblem::validate() const {
    if (var_names.empty()) throw std::runtime_error("problem has no variables");
    for (size_t i = 0; i < var_names.size(); ++i) {
        for (size_t j = i + 1; j < var_names.size(); ++j)
            if (var_names[i] == var_names[j]) throw DuplicateVariable(var_names[i]);
        const Interval& b = var_bounds[i];
        if (b.lo && !(*b.lo > 0.0)) throw NonPositiveBound(var_names[i]);
        if (b.lo && b.hi && !(*b.lo <= *b.hi)) throw NonPositiveBound(var_names[i]);
        if (!b.lo && b.hi && !(*b.hi > 0.0)) throw NonPositiveBound(var_names[i]);
    }
    check_vars_declared(objective, n_vars());
    for (auto& c : constraints) {
        check_vars_declared(c.lhs, n_vars());
        check_vars_declared(c.rhs, n_vars());
    }
}

bool SgpProblem::in_box(std::span<const double> x, double tol) const {
    for (int i = 0; i < n_vars(); ++i) {
        if (!(x[i] > 0.0)) return false;
        const Interval& b = var_bounds[i];
        if (b.lo && x[i] < *b.lo - tol) return false;
        if (b.hi && x[i] > *b.hi + tol) return false;
    }
    return true;
}

FeasibilityReport check_feasible(const SgpProblem& p, std::span<const double> x, double tol) {
    FeasibilityReport rep;
    for (int i = 0; i < p.n_vars(); ++i) {
        if (!(x[i] > 0.0)) throw NonPositivePoint(i);
        const Interval& b = p.var_bounds[i];
        double viol = 0.0;
        if (b.lo) viol = std::max(viol, *b.lo - x[i]);
        if (b.hi) viol = std::max(viol, x[i] - *b.hi);
        if (viol > 0.0) rep.bound_violations.emplace_back(i, viol);
        rep.max_violation = std::max(rep.max_violation, viol);
    }
    for (auto& c : p.constraints) {
        double v = evaluate(c.lhs, x) - evaluate(c.rhs, x);
        double viol = std::max(0.0, v);
        rep.constraint_violations.push_back({c.label, viol});
        rep.max_violation = std::max(rep.max_violation, viol);
    }
    rep.feasible = rep.max_violation <= tol;
    return rep;
}

static void write_number(std::ostream& os, double v) {
    std::ostringstream tmp;
    tmp.precision(17);
    tmp << v;
    os << tmp.str();
}

static void write_expr(std::ostream& os, const Signomial& s, const SgpProblem& p) {
    if (s.terms.empty()) {
        os << "0";
        return;
    }
    bool first = true;
    for (auto& m : s.terms) {
        double c = m.coef;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        double a = std::abs(c);
        bool need_coef = m.exponents.empty() || a != 1.0;
        if (need_coef) write_number(os, a);
        bool lead = !need_coef;
        for (auto& [v, e] : m.exponents) {
            if (!lead) os << "*";
            lead = false;
            os << p.var_names[v];
            if (e != 1.0) {
                if (e < 0 || std::floor(e) != e) {
                    os << "^(";
                    write_number(os, e);
                    os << ")";
                } else {
                    os << "^";
                    write_number(os, e);
                }
            }
        }
    }
}

std::string serialize(const SgpProblem& p) {
    std::ostringstream os;
    os << "problem " << (p.name.empty() ? "unnamed" : p.name) << "\n";
    for (int i = 0; i < p.n_vars(); ++i) {
        os << "var " << p.var_names[i];
        const Interval& b = p.var_bounds[i];
        if (b.bounded()) {
            os << " in [";
            write_number(os, *b.lo);
            os << ", ";
            write_number(os, *b.hi);
            os << "]";
        }
        os << "\n";
    }
    os << "minimize ";
    write_expr(os, p.objective, p);
    os << "\n";
    if (!p.constraints.empty()) {
        os << "subject to\n";
        for (auto& c : p.constraints) {
            os << "  " << (c.label.empty() ? "c" : c.label) << ": ";
            write_expr(os, c.lhs, p);
            os << " <= ";
            write_expr(os, c.rhs, p);
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace sgprelax
