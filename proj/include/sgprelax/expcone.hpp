#pragma once

#include <array>

namespace sgprelax {

/// K_exp = cl{ (u, v, w) : v * e^(w/v) <= u, v > 0 }
///       = that set union { (u, 0, w) : u >= 0, w <= 0 }.
/// Its dual K* = cl{ (u, v, w) : u >= -w e^(v/w - 1), w < 0, u > 0 }
///             union { (u, v, 0) : u >= 0, v >= 0 }.
using Vec3 = std::array<double, 3>;

bool in_exp_cone(const Vec3& p, double tol = 1e-12);

/// Membership in the dual cone K*_exp within tol (scaled by point magnitude).
bool dual_exp_membership(const Vec3& p, double tol = 1e-9);

/// Euclidean projection onto K_exp. Total function; closed forms for the
/// interior / polar / (v<=0, w<=0) regions, otherwise a safeguarded
/// one-dimensional root find (bisection on the dual multiplier with an inner
/// Newton) to 1e-14-level tolerance.
Vec3 project_exp(const Vec3& p);

}  // namespace sgprelax
