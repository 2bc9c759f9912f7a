#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../error.hpp"
#include "../rational.hpp"

namespace supergeom::cli {

struct Location {
    int line = 1;
    int col = 1;
};

[[noreturn]] inline void parse_error(Location at, const std::string &msg)
{
    fail(ErrorKind::parse, std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + msg);
}

enum class Tok { ident, integer, punct, newline, end };

struct Token {
    Tok kind;
    std::string text;
    Location at;
};

// '#' starts a comment; newlines end statements, except inside brackets.
inline std::vector<Token> tokenize(const std::string &src)
{
    std::vector<Token> out;
    Location at;
    std::size_t i = 0;
    int depth = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (src[i] == '\n') {
                ++at.line;
                at.col = 1;
            } else {
                ++at.col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '\n') {
            if (depth == 0) out.push_back({Tok::newline, "\n", at});
            advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Location start = at;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::ident, src.substr(i, j - i), start});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::integer, src.substr(i, j - i), start});
            advance(j - i);
            continue;
        }
        if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
            out.push_back({Tok::punct, "..", start});
            advance(2);
            continue;
        }
        if (std::string("()[],=+-*/^|;").find(c) != std::string::npos) {
            if (c == '(' || c == '[') ++depth;
            if ((c == ')' || c == ']') && depth > 0) --depth;
            out.push_back({Tok::punct, std::string(1, c), start});
            advance(1);
            continue;
        }
        parse_error(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::newline, "\n", at});
    out.push_back({Tok::end, "", at});
    return out;
}

// Polynomial expression over x<i>, th<j>, eta<k> and rational constants.
struct Expr {
    enum class Kind { number, x, theta, eta, add, sub, mul, div, neg, pow } kind = Kind::number;
    Rational value;
    int index = 0;
    int exponent = 0;
    std::vector<Expr> kids;
    Location at;
};

enum class CommandKind {
    cohomology,
    hilbert,
    betti,
    regularity,
    castelnuovo,
    serre,
    koszul,
    berezinian,
    picfactor,
    nested,
    dims_grass,
    dims_flag,
    picard,
    selftest,
};

struct Command {
    CommandKind kind;
    std::string name;   // command word as written
    std::string object; // display string for the object it acts on
    Location at;
    std::vector<std::string> targets; // declared names
    std::vector<std::int64_t> ints;
    std::vector<Expr> exprs;
    std::vector<std::vector<Expr>> matrix;
    int even_rows = 0;
    int odd_rows = 0;
    std::optional<std::int64_t> window;
};

struct IdealDecl {
    std::vector<Expr> gens;
    Location at;
};

struct ModuleDecl {
    std::string ideal; // empty for the structure module
    Location at;
};

struct Session {
    std::optional<std::pair<int, int>> ring; // (m, n)
    std::map<std::string, IdealDecl> ideals;
    std::map<std::string, ModuleDecl> modules;
    std::vector<Command> commands;
};

class Parser {
public:
    explicit Parser(const std::string &src) : toks_(tokenize(src)) {}

    Session parse()
    {
        Session s;
        for (;;) {
            while (peek().kind == Tok::newline) ++pos_;
            if (peek().kind == Tok::end) break;
            statement(s);
            if (peek().kind != Tok::newline) parse_error(peek().at, "expected end of line, found '" + peek().text + "'");
        }
        return s;
    }

private:
    const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token &next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool accept(const std::string &punct)
    {
        if (peek().kind == Tok::punct && peek().text == punct) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(const std::string &punct)
    {
        if (!accept(punct)) parse_error(peek().at, "expected '" + punct + "', found " + describe(peek()));
    }

    static std::string describe(const Token &t)
    {
        if (t.kind == Tok::newline) return "end of line";
        if (t.kind == Tok::end) return "end of input";
        return "'" + t.text + "'";
    }

    std::string ident(const char *what)
    {
        if (peek().kind != Tok::ident) parse_error(peek().at, std::string("expected ") + what + ", found " + describe(peek()));
        return next().text;
    }

    void keyword(const std::string &kw)
    {
        if (peek().kind != Tok::ident || peek().text != kw)
            parse_error(peek().at, "expected '" + kw + "', found " + describe(peek()));
        ++pos_;
    }

    std::int64_t integer()
    {
        Location at = peek().at;
        bool neg = accept("-");
        if (peek().kind != Tok::integer) parse_error(peek().at, "expected an integer, found " + describe(peek()));
        const std::string &t = next().text;
        if (t.size() > 9) parse_error(at, "integer literal too large");
        std::int64_t v = std::stoll(t);
        return neg ? -v : v;
    }

    static bool is_variable(const std::string &w, const char *prefix, int &index)
    {
        std::string p(prefix);
        if (w.size() <= p.size() || w.compare(0, p.size(), p) != 0) return false;
        for (std::size_t k = p.size(); k < w.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(w[k]))) return false;
        if (w.size() - p.size() > 4) return false;
        index = std::stoi(w.substr(p.size()));
        return true;
    }

    Expr primary()
    {
        Location at = peek().at;
        if (accept("(")) {
            Expr e = expr();
            expect(")");
            return e;
        }
        if (peek().kind == Tok::integer) {
            const std::string &t = next().text;
            Expr e;
            e.at = at;
            e.value = Rational(t);
            return e;
        }
        if (peek().kind == Tok::ident) {
            std::string w = next().text;
            Expr e;
            e.at = at;
            int idx = 0;
            if (is_variable(w, "x", idx)) {
                e.kind = Expr::Kind::x;
            } else if (is_variable(w, "th", idx)) {
                e.kind = Expr::Kind::theta;
                if (idx == 0) parse_error(at, "odd variables are numbered from th1");
            } else if (is_variable(w, "eta", idx)) {
                e.kind = Expr::Kind::eta;
                if (idx == 0) parse_error(at, "base odd generators are numbered from eta1");
            } else {
                parse_error(at, "unknown variable '" + w + "'");
            }
            e.index = idx;
            return e;
        }
        parse_error(at, "expected a polynomial term, found " + describe(peek()));
    }

    Expr power()
    {
        Expr base = primary();
        if (peek().kind == Tok::punct && peek().text == "^") {
            Location at = next().at;
            if (peek().kind != Tok::integer) parse_error(peek().at, "exponent must be a nonnegative integer");
            const std::string &t = next().text;
            if (t.size() > 4) parse_error(at, "exponent too large");
            Expr e;
            e.kind = Expr::Kind::pow;
            e.at = at;
            e.exponent = std::stoi(t);
            e.kids.push_back(std::move(base));
            return e;
        }
        return base;
    }

    Expr unary()
    {
        Location at = peek().at;
        if (accept("-")) {
            Expr e;
            e.kind = Expr::Kind::neg;
            e.at = at;
            e.kids.push_back(unary());
            return e;
        }
        if (accept("+")) return unary();
        return power();
    }

    Expr term()
    {
        Expr lhs = unary();
        for (;;) {
            Location at = peek().at;
            Expr::Kind k;
            if (accept("*"))
                k = Expr::Kind::mul;
            else if (accept("/"))
                k = Expr::Kind::div;
            else
                return lhs;
            Expr e;
            e.kind = k;
            e.at = at;
            e.kids.push_back(std::move(lhs));
            e.kids.push_back(unary());
            lhs = std::move(e);
        }
    }

    Expr expr()
    {
        Expr lhs = term();
        for (;;) {
            Location at = peek().at;
            Expr::Kind k;
            if (accept("+"))
                k = Expr::Kind::add;
            else if (accept("-"))
                k = Expr::Kind::sub;
            else
                return lhs;
            Expr e;
            e.kind = k;
            e.at = at;
            e.kids.push_back(std::move(lhs));
            e.kids.push_back(term());
            lhs = std::move(e);
        }
    }

    std::vector<Expr> expr_list()
    {
        std::vector<Expr> out;
        expect("[");
        if (accept("]")) return out;
        do out.push_back(expr());
        while (accept(","));
        expect("]");
        return out;
    }

    void require_ring(const Session &s, Location at)
    {
        if (!s.ring) parse_error(at, "no ring declared; start with ring P(m=<int>, n=<int>)");
    }

    void check_vars(const Session &s, const Expr &e, bool allow_eta)
    {
        switch (e.kind) {
        case Expr::Kind::x:
            if (!s.ring) parse_error(e.at, "variable x" + std::to_string(e.index) + " used before a ring is declared");
            if (e.index > s.ring->first)
                parse_error(e.at, "unknown variable 'x" + std::to_string(e.index) + "' in P(m=" +
                                      std::to_string(s.ring->first) + ", n=" + std::to_string(s.ring->second) + ")");
            break;
        case Expr::Kind::theta:
            if (!s.ring) parse_error(e.at, "variable th" + std::to_string(e.index) + " used before a ring is declared");
            if (e.index > s.ring->second)
                parse_error(e.at, "unknown variable 'th" + std::to_string(e.index) + "' in P(m=" +
                                      std::to_string(s.ring->first) + ", n=" + std::to_string(s.ring->second) + ")");
            break;
        case Expr::Kind::eta:
            if (!allow_eta) parse_error(e.at, "eta generators are only allowed in picfactor and berezinian");
            break;
        default:
            for (const auto &k : e.kids) check_vars(s, k, allow_eta);
        }
    }

    // Grassmann literals use th<j> and eta<k> freely and never x<i>.
    static void check_grassmann(const Expr &e)
    {
        if (e.kind == Expr::Kind::x) parse_error(e.at, "even variables are not allowed in a Grassmann element");
        for (const auto &k : e.kids) check_grassmann(k);
    }

    std::string module_name(const Session &s)
    {
        Location at = peek().at;
        std::string name = ident("a module name");
        if (name == "O") {
            require_ring(s, at);
            return name;
        }
        if (!s.modules.count(name)) parse_error(at, "undeclared module '" + name + "'");
        return name;
    }

    std::string ideal_name(const Session &s)
    {
        Location at = peek().at;
        std::string name = ident("an ideal name");
        if (!s.ideals.count(name)) parse_error(at, "undeclared ideal '" + name + "'");
        return name;
    }

    void declare(Session &s, const std::string &name, Location at)
    {
        if (name == "O") parse_error(at, "'O' is the built-in structure module");
        if (s.ideals.count(name) || s.modules.count(name)) parse_error(at, "name '" + name + "' is already declared");
    }

    std::int64_t keyword_int(const std::string &kw)
    {
        keyword(kw);
        expect("=");
        return integer();
    }

    void statement(Session &s)
    {
        Location at = peek().at;
        std::string w = ident("a statement");
        if (w == "ring") {
            if (s.ring) parse_error(at, "ring already declared");
            keyword("P");
            expect("(");
            std::int64_t m = keyword_int("m");
            expect(",");
            std::int64_t n = keyword_int("n");
            expect(")");
            if (m < 0 || n < 0) parse_error(at, "ring needs m, n >= 0");
            if (m > 7) parse_error(at, "at most 8 even variables are supported");
            if (n > 16) parse_error(at, "at most 16 odd variables are supported");
            s.ring = {static_cast<int>(m), static_cast<int>(n)};
            return;
        }
        if (w == "ideal") {
            require_ring(s, at);
            Location nat = peek().at;
            std::string name = ident("an ideal name");
            declare(s, name, nat);
            expect("=");
            auto gens = expr_list();
            for (const auto &g : gens) check_vars(s, g, false);
            s.ideals[name] = {std::move(gens), at};
            return;
        }
        if (w == "module") {
            require_ring(s, at);
            Location nat = peek().at;
            std::string name = ident("a module name");
            declare(s, name, nat);
            expect("=");
            keyword("quotient");
            expect("(");
            std::string ideal;
            if (peek().kind == Tok::punct && peek().text == "[") {
                ideal = "<" + name + ">";
                auto gens = expr_list();
                for (const auto &g : gens) check_vars(s, g, false);
                s.ideals[ideal] = {std::move(gens), at};
            } else {
                ideal = ideal_name(s);
            }
            expect(")");
            s.modules[name] = {ideal, at};
            return;
        }

        Command c;
        c.name = w;
        c.at = at;
        if (w == "cohomology") {
            c.kind = CommandKind::cohomology;
            c.targets.push_back(module_name(s));
            keyword("twist");
            expect("=");
            std::int64_t a = integer();
            expect("..");
            std::int64_t b = integer();
            if (a > b) parse_error(at, "empty twist range");
            c.ints = {a, b};
            c.object = c.targets[0];
        } else if (w == "hilbert" || w == "betti" || w == "regularity") {
            c.kind = w == "hilbert" ? CommandKind::hilbert : w == "betti" ? CommandKind::betti : CommandKind::regularity;
            c.targets.push_back(module_name(s));
            c.object = c.targets[0];
        } else if (w == "castelnuovo") {
            c.kind = CommandKind::castelnuovo;
            c.targets.push_back(module_name(s));
            c.ints.push_back(keyword_int("r"));
            c.object = c.targets[0];
        } else if (w == "serre") {
            c.kind = CommandKind::serre;
            c.ints = {integer(), integer(), integer()};
            c.object = "P^{" + std::to_string(c.ints[0]) + "," + std::to_string(c.ints[1]) + "} r=" +
                       std::to_string(c.ints[2]);
        } else if (w == "koszul") {
            c.kind = CommandKind::koszul;
            require_ring(s, at);
            c.exprs = expr_list();
            for (const auto &e : c.exprs) check_vars(s, e, false);
            c.window = keyword_int("window");
            c.object = "sequence of length " + std::to_string(c.exprs.size());
        } else if (w == "berezinian") {
            c.kind = CommandKind::berezinian;
            expect("(");
            c.even_rows = static_cast<int>(integer());
            expect("|");
            c.odd_rows = static_cast<int>(integer());
            expect(")");
            if (c.even_rows < 0 || c.odd_rows < 0) parse_error(at, "negative block size");
            expect("[");
            do {
                c.matrix.push_back(expr_list());
                for (const auto &e : c.matrix.back()) check_grassmann(e);
            } while (accept(","));
            expect("]");
            std::size_t n = static_cast<std::size_t>(c.even_rows + c.odd_rows);
            if (c.matrix.size() != n) parse_error(at, "matrix needs " + std::to_string(n) + " rows");
            for (const auto &row : c.matrix)
                if (row.size() != n) parse_error(at, "matrix needs " + std::to_string(n) + " columns in every row");
            c.object = "(" + std::to_string(c.even_rows) + "|" + std::to_string(c.odd_rows) + ") supermatrix";
        } else if (w == "picfactor") {
            c.kind = CommandKind::picfactor;
            c.exprs.push_back(expr());
            check_grassmann(c.exprs[0]);
            c.object = "unit";
        } else if (w == "nested") {
            c.kind = CommandKind::nested;
            c.targets.push_back(ideal_name(s));
            c.targets.push_back(ideal_name(s));
            c.object = c.targets[0] + " " + c.targets[1];
        } else if (w == "dims") {
            Location kat = peek().at;
            std::string what = ident("'grass' or 'flag'");
            if (what == "grass") {
                c.kind = CommandKind::dims_grass;
                c.ints = {integer(), integer(), integer(), integer()};
                c.object = std::to_string(c.ints[0]) + " " + std::to_string(c.ints[1]) + " " +
                           std::to_string(c.ints[2]) + " " + std::to_string(c.ints[3]);
            } else if (what == "flag") {
                c.kind = CommandKind::dims_flag;
                c.ints = {integer(), integer()};
                c.object = std::to_string(c.ints[0]) + " " + std::to_string(c.ints[1]);
            } else {
                parse_error(kat, "unknown dims kind '" + what + "'");
            }
            c.name = "dims " + what;
        } else if (w == "picard") {
            c.kind = CommandKind::picard;
            c.ints.push_back(integer());
            while (peek().kind == Tok::integer || (peek().kind == Tok::punct && peek().text == "-"))
                c.ints.push_back(integer());
            c.object = "P^" + std::to_string(c.ints[0]);
        } else if (w == "selftest") {
            c.kind = CommandKind::selftest;
            Location kat = peek().at;
            std::string what = ident("'berezinian' or 'picfactor'");
            if (what != "berezinian" && what != "picfactor") parse_error(kat, "unknown selftest '" + what + "'");
            c.targets.push_back(what);
            c.ints.push_back(keyword_int("count"));
            c.object = what;
        } else {
            parse_error(at, "unknown statement '" + w + "'");
        }
        s.commands.push_back(std::move(c));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

inline Session parse(const std::string &src) { return Parser(src).parse(); }

} // namespace supergeom::cli
