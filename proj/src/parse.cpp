#include "sgprelax/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace sgprelax {
namespace {

struct Cursor {
    const std::string& s;
    int line;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw SyntaxError(line, static_cast<int>(pos) + 1, msg);
    }

    bool number_ahead() {
        skip_ws();
        if (pos >= s.size()) return false;
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return true;
        return false;
    }

    double number() {
        skip_ws();
        const char* start = s.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start) fail("expected a number");
        pos += static_cast<size_t>(end - start);
        return v;
    }

    bool ident_ahead() {
        skip_ws();
        return pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_');
    }

    std::string ident() {
        skip_ws();
        if (!ident_ahead()) fail("expected an identifier");
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
};

struct Parser {
    SgpProblem prob;
    std::unordered_map<std::string, VarId> vars;

    VarId lookup(Cursor& c, const std::string& nm) {
        auto it = vars.find(nm);
        if (it == vars.end()) throw UndeclaredVariable(nm);
        return it->second;
    }

    // exponent: number, or parenthesized signed number: x^(-1.3)
    double exponent(Cursor& c) {
        if (c.accept('(')) {
            double sign = 1.0;
            while (true) {
                if (c.accept('-'))
                    sign = -sign;
                else if (c.accept('+'))
                    ;
                else
                    break;
            }
            double v = sign * c.number();
            c.expect(')');
            return v;
        }
        if (c.accept('-')) return -c.number();  // tolerate unparenthesized negatives
        return c.number();
    }

    // term: [coef] [*] ident[^exp] [* ident[^exp] ...]
    Monomial term(Cursor& c, double sign) {
        double coef = 1.0;
        bool saw_any = false;
        if (c.number_ahead()) {
            coef = c.number();
            saw_any = true;
            c.accept('*');
        }
        std::map<VarId, double> exps;
        while (c.ident_ahead()) {
            saw_any = true;
            VarId v = lookup(c, c.ident());
            double e = 1.0;
            if (c.accept('^')) e = exponent(c);
            exps[v] += e;
            if (!c.accept('*')) {
                if (!c.ident_ahead()) break;  // implicit product: "2.5x1x2" style
            }
        }
        if (!saw_any) c.fail("expected a term");
        for (auto it = exps.begin(); it != exps.end();)
            it = (it->second == 0.0) ? exps.erase(it) : std::next(it);
        return Monomial(sign * coef, std::move(exps));
    }

    Signomial expr(Cursor& c) {
        Signomial s;
        double sign = 1.0;
        if (c.accept('-'))
            sign = -1.0;
        else
            c.accept('+');
        s.add_term(term(c, sign));
        while (true) {
            if (c.accept('+'))
                sign = 1.0;
            else if (c.accept('-'))
                sign = -1.0;
            else
                break;
            s.add_term(term(c, sign));
        }
        return s;
    }
};

std::string strip_comment(const std::string& line) {
    size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

bool starts_with_word(Cursor& c, const std::string& w) {
    c.skip_ws();
    if (c.s.compare(c.pos, w.size(), w) != 0) return false;
    size_t after = c.pos + w.size();
    if (after < c.s.size() && (std::isalnum(static_cast<unsigned char>(c.s[after])) || c.s[after] == '_'))
        return false;
    c.pos = after;
    return true;
}

}  // namespace

SgpProblem parse_problem(const std::string& text) {
    Parser P;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_objective = false;
    int anon_label = 0;
    enum { Head, Body } state = Head;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string lineText = strip_comment(raw);
        Cursor c{lineText, lineno};
        if (c.done()) continue;

        if (starts_with_word(c, "problem")) {
            P.prob.name = c.ident();
        } else if (starts_with_word(c, "var")) {
            std::string nm = c.ident();
            if (P.vars.count(nm)) throw DuplicateVariable(nm);
            Interval b;
            if (starts_with_word(c, "in")) {
                c.expect('[');
                double sign = c.accept('-') ? -1.0 : 1.0;
                b.lo = sign * c.number();
                c.expect(',');
                sign = c.accept('-') ? -1.0 : 1.0;
                b.hi = sign * c.number();
                c.expect(']');
                if (!(*b.lo > 0.0) || !(*b.lo <= *b.hi)) throw NonPositiveBound(nm);
            }
            if (!c.done()) c.fail("unexpected trailing text");
            P.vars.emplace(nm, static_cast<VarId>(P.prob.var_names.size()));
            P.prob.var_names.push_back(nm);
            P.prob.var_bounds.push_back(b);
        } else if (starts_with_word(c, "minimize") || starts_with_word(c, "min")) {
            P.prob.objective = P.expr(c);
            if (!c.done()) c.fail("unexpected trailing text");
            have_objective = true;
        } else if (starts_with_word(c, "subject")) {
            if (!starts_with_word(c, "to")) c.fail("expected 'subject to'");
            if (!c.done()) c.fail("unexpected trailing text");
            state = Body;
        } else if (state == Body) {
            // <label>: <expr> <= <expr>   (label optional)
            std::string label;
            size_t save = c.pos;
            if (c.ident_ahead()) {
                std::string id = c.ident();
                if (c.accept(':'))
                    label = id;
                else
                    c.pos = save;
            }
            if (label.empty()) label = "c" + std::to_string(++anon_label);
            SgpConstraint con;
            con.label = label;
            con.lhs = P.expr(c);
            c.expect('<');
            c.expect('=');
            con.rhs = P.expr(c);
            if (!c.done()) c.fail("unexpected trailing text");
            P.prob.constraints.push_back(std::move(con));
        } else {
            c.fail("unrecognized directive");
        }
    }
    if (!have_objective) throw SyntaxError(lineno, 1, "missing 'minimize' line");
    P.prob.validate();
    return P.prob;
}

}  // namespace sgprelax
