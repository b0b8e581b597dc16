#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <stdexcept>

namespace sgprelax {

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct NonFiniteData : std::runtime_error {
    NonFiniteData() : std::runtime_error("problem data contains non-finite entries") {}
};

enum class ConeKind { Zero, Nonneg, Exp };

struct ConeSpec {
    ConeKind kind;
    int dim;  // Exp blocks are exactly 3 rows, ordered (u, v, w)
};

struct Triplet {
    int row;
    int col;
    double val;
};

/// Standard-form conic problem: min c'x s.t. Ax + s = b, s in K, where K is
/// the ordered product of the cones covering the rows of A. Box bounds on
/// variables are stored separately and expanded into nonnegative-cone rows by
/// finalize(); structural row/cone counts remain queryable for reporting.
struct ConicProblem {
    int n = 0;  // columns
    std::vector<double> c;
    std::vector<Triplet> A;
    std::vector<double> b;
    std::vector<ConeSpec> cones;

    // optional boxes, NaN when absent; finalize() turns them into rows
    std::vector<double> var_lb;
    std::vector<double> var_ub;

    int n_structural_rows = 0;  // rows before bound expansion, minus cone rows
    bool finalized = false;

    int rows() const { return static_cast<int>(b.size()); }
    int n_exp_cones() const;
    int nonneg_rows() const;

    void add_row(const std::vector<std::pair<int, double>>& coefs, double rhs, ConeKind kind);
    void add_exp_block(const std::vector<std::pair<int, double>>& u_expr, double u_const,
                       const std::vector<std::pair<int, double>>& w_expr, double w_const);
    /// Expands var_lb/var_ub into nonneg rows (idempotent).
    void finalize();
    void check() const;
};

/// Plain-text dump: `conic <nvars> <nrows>`, then `c <idx> <val>`,
/// `A <row> <col> <val>`, `b <row> <val>`, and `cone zero|nonneg|exp <dim>`
/// lines in row order.
std::string dump_conic(const ConicProblem& p);
ConicProblem load_conic(std::istream& in);
ConicProblem load_conic_file(const std::string& path);

}  // namespace sgprelax
