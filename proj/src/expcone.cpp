#include "sgprelax/expcone.hpp"

#include <algorithm>
#include <cmath>

namespace sgprelax {

namespace {

constexpr double kMembershipSlack = 1e-12;

double safe_exp(double z) { return std::exp(std::min(z, 700.0)); }

// The projection works in (r, s, t) = (w, v, u) order, matching the classic
// operator-splitting solver routine it is adapted from: the cone there is
// { (r, s, t) : s e^(r/s) <= t, s > 0 }.
struct RST {
    double r, s, t;
};

double newton_t(double rho, double y_hat, double z_hat, double w_start) {
    double t = std::max(w_start - z_hat, std::max(-z_hat, 1e-9));
    for (int i = 0; i < 200; ++i) {
        double t_prev = t;
        double f = t * (t + z_hat) / (rho * rho) - y_hat / rho + std::log(t / rho) + 1.0;
        double fp = (2.0 * t + z_hat) / (rho * rho) + 1.0 / t;
        t -= f / fp;
        if (t <= -z_hat) {
            t = -z_hat;
            break;
        }
        if (t <= 0.0) {
            t = 0.0;
            break;
        }
        if (std::abs(t - t_prev) < 1e-15 || std::sqrt(f * f / fp) < 1e-15) break;
    }
    return t + z_hat;
}

RST solve_with_rho(const RST& v, double rho, double w_start) {
    RST x{};
    x.t = newton_t(rho, v.s, v.t, w_start);
    x.s = (x.t - v.t) * x.t / rho;
    x.r = v.r - rho;
    return x;
}

double grad_at_rho(const RST& v, double rho, double w_start, RST& x) {
    x = solve_with_rho(v, rho, w_start);
    if (x.s <= 1e-12) return x.r;
    return x.r + x.s * std::log(x.s / x.t);
}

}  // namespace

bool in_exp_cone(const Vec3& p, double tol) {
    double u = p[0], v = p[1], w = p[2];
    double scale = std::max({1.0, std::abs(u), std::abs(v), std::abs(w)});
    if (v > 0.0) return v * safe_exp(w / v) - u <= tol * scale;
    return std::abs(v) <= tol * scale && w <= tol * scale && u >= -tol * scale;
}

bool dual_exp_membership(const Vec3& p, double tol) {
    double u = p[0], v = p[1], w = p[2];
    double scale = std::max({1.0, std::abs(u), std::abs(v), std::abs(w)});
    if (w < -tol * scale) return u >= -w * safe_exp(v / w - 1.0) - tol * scale;
    if (w <= tol * scale) return u >= -tol * scale && v >= -tol * scale;
    return false;
}

Vec3 project_exp(const Vec3& p) {
    RST v{p[2], p[1], p[0]};
    double scale = std::max({1.0, std::abs(v.r), std::abs(v.s), std::abs(v.t)});

    // already in the cone
    if ((v.s > 0.0 && v.s * safe_exp(v.r / v.s) - v.t <= kMembershipSlack * scale) ||
        (v.s == 0.0 && v.r <= 0.0 && v.t >= 0.0))
        return p;

    // -p in K*: projection is the origin
    if ((v.r > 0.0 && v.r * safe_exp(v.s / v.r) + std::exp(1.0) * v.t <=
                          kMembershipSlack * scale) ||
        (v.r == 0.0 && v.s <= 0.0 && v.t <= 0.0))
        return {0.0, 0.0, 0.0};

    // v <= 0 and w <= 0: projection lands on the K2 face
    if (v.r < 0.0 && v.s < 0.0) return {std::max(v.t, 0.0), 0.0, v.r};

    // bisection on the dual multiplier rho
    double lb = 0.0, ub = 0.125;
    RST x{};
    double g = grad_at_rho(v, ub, v.s, x);
    while (g > 0.0) {
        lb = ub;
        ub *= 2.0;
        g = grad_at_rho(v, ub, x.s, x);
    }
    for (int i = 0; i < 300; ++i) {
        double rho = 0.5 * (lb + ub);
        g = grad_at_rho(v, rho, x.s, x);
        if (g > 0.0)
            lb = rho;
        else
            ub = rho;
        if (ub - lb <= 1e-15 * std::max(1.0, ub)) break;
    }
    return {x.t, x.s, x.r};
}

}  // namespace sgprelax
