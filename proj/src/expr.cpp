#include "sgprelax/expr.hpp"

#include <cmath>

namespace sgprelax {

double Monomial::product(std::span<const double> point) const {
    double p = 1.0;
    for (auto& [v, a] : exponents) {
        if (v < 0 || static_cast<size_t>(v) >= point.size()) throw MissingVariable(v);
        double x = point[v];
        if (!(x > 0.0)) throw NonPositivePoint(v);
        p *= std::pow(x, a);
    }
    return p;
}

void Signomial::add_term(const Monomial& m) {
    if (m.coef == 0.0) return;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].same_exponents(m)) {
            terms[i].coef += m.coef;
            if (terms[i].coef == 0.0) terms.erase(terms.begin() + i);
            return;
        }
    }
    terms.push_back(m);
}

Signomial& Signomial::operator+=(const Signomial& o) {
    for (auto& m : o.terms) add_term(m);
    return *this;
}

Signomial Signomial::operator+(const Signomial& o) const {
    Signomial r = *this;
    r += o;
    return r;
}

Signomial Signomial::negated() const { return scaled(-1.0); }

Signomial Signomial::scaled(double s) const {
    Signomial r;
    if (s == 0.0) return r;
    r.terms = terms;
    for (auto& m : r.terms) m.coef *= s;
    return r;
}

bool Signomial::is_constant() const {
    for (auto& m : terms)
        if (!m.is_constant()) return false;
    return true;
}

double Signomial::constant_part() const {
    double c = 0.0;
    for (auto& m : terms)
        if (m.is_constant()) c += m.coef;
    return c;
}

bool Signomial::is_posynomial() const {
    for (auto& m : terms)
        if (m.coef < 0.0) return false;
    return true;
}

VarId Signomial::max_var() const {
    VarId mx = -1;
    for (auto& m : terms)
        for (auto& [v, a] : m.exponents) mx = std::max(mx, v);
    return mx;
}

double evaluate(const Signomial& s, std::span<const double> point) {
    double acc = 0.0;
    for (auto& m : s.terms) acc += m.value(point);
    return acc;
}

double evaluate(const Signomial& s, const std::map<VarId, double>& point) {
    VarId mx = s.max_var();
    std::vector<double> p(static_cast<size_t>(mx + 1), -1.0);
    for (auto& [v, x] : point)
        if (v >= 0 && v <= mx) p[v] = x;
    // leave uncovered entries negative: product() reports them
    for (auto& m : s.terms)
        for (auto& [v, a] : m.exponents)
            if (point.find(v) == point.end()) throw MissingVariable(v);
    return evaluate(s, p);
}

}  // namespace sgprelax
