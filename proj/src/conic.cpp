#include "sgprelax/conic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sgprelax {

int ConicProblem::n_exp_cones() const {
    int k = 0;
    for (auto& cs : cones)
        if (cs.kind == ConeKind::Exp) ++k;
    return k;
}

int ConicProblem::nonneg_rows() const {
    int k = 0;
    for (auto& cs : cones)
        if (cs.kind == ConeKind::Nonneg) k += cs.dim;
    return k;
}

void ConicProblem::add_row(const std::vector<std::pair<int, double>>& coefs, double rhs,
                           ConeKind kind) {
    int r = rows();
    for (auto& [col, val] : coefs)
        if (val != 0.0) A.push_back({r, col, val});
    b.push_back(rhs);
    if (!cones.empty() && cones.back().kind == kind && kind != ConeKind::Exp)
        cones.back().dim += 1;
    else
        cones.push_back({kind, 1});
}

void ConicProblem::add_exp_block(const std::vector<std::pair<int, double>>& u_expr,
                                 double u_const,
                                 const std::vector<std::pair<int, double>>& w_expr,
                                 double w_const) {
    // s = (u, 1, w) in Kexp encodes exp(w) <= u:
    //   u-row: -u_expr . x + s_u = u_const
    //   v-row:            s_v = 1
    //   w-row: -w_expr . x + s_w = w_const
    int r = rows();
    for (auto& [col, val] : u_expr)
        if (val != 0.0) A.push_back({r, col, -val});
    b.push_back(u_const);
    b.push_back(1.0);
    for (auto& [col, val] : w_expr)
        if (val != 0.0) A.push_back({r + 2, col, -val});
    b.push_back(w_const);
    cones.push_back({ConeKind::Exp, 3});
}

void ConicProblem::finalize() {
    if (finalized) return;
    finalized = true;
    if (var_lb.empty() && var_ub.empty()) return;
    // bound rows go in front of the cone list as one nonneg block appended at
    // the end of the rows; cone order must match row order, so we append rows
    // and a trailing nonneg cone spec before any exp blocks already present.
    // Simpler: bounds are expanded while building, before exp blocks. Here we
    // just append; builders call finalize() before adding exp blocks.
    for (int j = 0; j < n; ++j) {
        if (j < static_cast<int>(var_lb.size()) && std::isfinite(var_lb[j]))
            add_row({{j, -1.0}}, -var_lb[j], ConeKind::Nonneg);
        if (j < static_cast<int>(var_ub.size()) && std::isfinite(var_ub[j]))
            add_row({{j, 1.0}}, var_ub[j], ConeKind::Nonneg);
    }
}

void ConicProblem::check() const {
    int m = rows();
    int covered = 0;
    for (auto& cs : cones) {
        if (cs.dim <= 0 || (cs.kind == ConeKind::Exp && cs.dim != 3))
            throw DimensionMismatch("bad cone dimension");
        covered += cs.dim;
    }
    if (covered != m) throw DimensionMismatch("cones do not cover rows");
    if (static_cast<int>(c.size()) != n) throw DimensionMismatch("c size != n");
    for (auto& t : A) {
        if (t.row < 0 || t.row >= m || t.col < 0 || t.col >= n)
            throw DimensionMismatch("triplet out of range");
        if (!std::isfinite(t.val)) throw NonFiniteData();
    }
    for (double v : b)
        if (!std::isfinite(v)) throw NonFiniteData();
    for (double v : c)
        if (!std::isfinite(v)) throw NonFiniteData();
}

std::string dump_conic(const ConicProblem& p) {
    std::ostringstream os;
    os.precision(17);
    os << "conic " << p.n << " " << p.rows() << "\n";
    for (int j = 0; j < p.n; ++j)
        if (p.c[j] != 0.0) os << "c " << j << " " << p.c[j] << "\n";
    for (auto& t : p.A) os << "A " << t.row << " " << t.col << " " << t.val << "\n";
    for (int i = 0; i < p.rows(); ++i)
        if (p.b[i] != 0.0) os << "b " << i << " " << p.b[i] << "\n";
    for (auto& cs : p.cones) {
        os << "cone ";
        switch (cs.kind) {
            case ConeKind::Zero: os << "zero"; break;
            case ConeKind::Nonneg: os << "nonneg"; break;
            case ConeKind::Exp: os << "exp"; break;
        }
        os << " " << cs.dim << "\n";
    }
    return os.str();
}

ConicProblem load_conic(std::istream& in) {
    ConicProblem p;
    std::string tok;
    if (!(in >> tok) || tok != "conic") throw std::runtime_error("not a conic dump");
    int m = 0;
    in >> p.n >> m;
    p.c.assign(static_cast<size_t>(p.n), 0.0);
    p.b.assign(static_cast<size_t>(m), 0.0);
    while (in >> tok) {
        if (tok == "c") {
            int j;
            double v;
            in >> j >> v;
            p.c.at(static_cast<size_t>(j)) = v;
        } else if (tok == "A") {
            Triplet t{};
            in >> t.row >> t.col >> t.val;
            p.A.push_back(t);
        } else if (tok == "b") {
            int i;
            double v;
            in >> i >> v;
            p.b.at(static_cast<size_t>(i)) = v;
        } else if (tok == "cone") {
            std::string kind;
            int dim;
            in >> kind >> dim;
            ConeKind k = kind == "zero"   ? ConeKind::Zero
                         : kind == "nonneg" ? ConeKind::Nonneg
                                            : ConeKind::Exp;
            if (kind != "zero" && kind != "nonneg" && kind != "exp")
                throw std::runtime_error("unknown cone kind '" + kind + "'");
            p.cones.push_back({k, dim});
        } else {
            throw std::runtime_error("unknown dump directive '" + tok + "'");
        }
    }
    p.finalized = true;
    p.n_structural_rows = m;
    p.check();
    return p;
}

ConicProblem load_conic_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return load_conic(f);
}

}  // namespace sgprelax
