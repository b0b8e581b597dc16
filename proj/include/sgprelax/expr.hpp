#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgprelax {

/// Index of a variable within a problem. Indices are contiguous from 0;
/// the owning problem maps them to names and bounds.
using VarId = int;

struct MissingVariable : std::runtime_error {
    explicit MissingVariable(VarId v)
        : std::runtime_error("point does not cover variable #" + std::to_string(v)) {}
};

struct NonPositivePoint : std::runtime_error {
    explicit NonPositivePoint(VarId v)
        : std::runtime_error("variable #" + std::to_string(v) + " must be strictly positive") {}
};

/// c * prod_i x_i^a_i with real exponents over strictly positive variables.
/// Zero exponents are never stored; an empty exponent map is a constant.
struct Monomial {
    double coef = 0.0;
    std::map<VarId, double> exponents;  // sorted: deterministic iteration

    Monomial() = default;
    Monomial(double c, std::map<VarId, double> e) : coef(c) {
        for (auto& [v, a] : e)
            if (a != 0.0) exponents.emplace(v, a);
    }
    static Monomial constant(double c) { return Monomial(c, {}); }

    bool is_constant() const { return exponents.empty(); }

    /// Single variable with exponent exactly 1 (the linear case).
    bool is_linear_var() const {
        return exponents.size() == 1 && exponents.begin()->second == 1.0;
    }

    /// Value of the bare product prod x^a (without the coefficient).
    double product(std::span<const double> point) const;
    double value(std::span<const double> point) const { return coef * product(point); }

    bool same_exponents(const Monomial& o) const { return exponents == o.exponents; }
};

/// Finite sum of monomials. Terms with identical exponent maps are merged at
/// construction; terms whose merged coefficient is zero are dropped.
struct Signomial {
    std::vector<Monomial> terms;

    Signomial() = default;
    explicit Signomial(std::vector<Monomial> ts) { for (auto& m : ts) add_term(m); }

    void add_term(const Monomial& m);
    Signomial& operator+=(const Signomial& o);
    Signomial operator+(const Signomial& o) const;
    Signomial negated() const;
    Signomial scaled(double s) const;

    bool empty() const { return terms.empty(); }
    bool is_constant() const;
    double constant_part() const;

    /// True when every coefficient is positive (a posynomial).
    bool is_posynomial() const;

    /// Largest VarId referenced, or -1.
    VarId max_var() const;
};

/// Exact signed sum of monomial values at a strictly positive point.
/// The point is indexed by VarId; it must cover every referenced variable.
double evaluate(const Signomial& s, std::span<const double> point);
double evaluate(const Signomial& s, const std::map<VarId, double>& point);

}  // namespace sgprelax
