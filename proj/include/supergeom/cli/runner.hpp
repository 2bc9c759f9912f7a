#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../cohomology.hpp"
#include "../expansion.hpp"
#include "../hilbert.hpp"
#include "../koszul.hpp"
#include "../picard.hpp"
#include "../resolution.hpp"
#include "../supermatrix.hpp"
#include "parser.hpp"

namespace supergeom::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, table };

struct Options {
    Format format = Format::json;
    int max_degree = 12;
    std::uint64_t seed = 0;
};

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline int exit_code_for(ErrorKind k)
{
    switch (k) {
    case ErrorKind::parse: return 1;
    case ErrorKind::limit_exceeded: return 3;
    default: return 2;
    }
}

inline Json to_json(const DimPair &d) { return Json{{"even", d.even}, {"odd", d.odd}}; }
inline Json to_json(const Rational &q) { return to_string(q); }

inline Json to_json(const UPoly &p)
{
    Json a = Json::array();
    for (const auto &c : p.coefficients()) a.push_back(to_json(c));
    return a;
}

// Evaluates a parsed expression; `var` maps x/th/eta leaves to polynomials.
inline SuperPoly evaluate(const Expr &e, RingSignature sig, const std::function<SuperPoly(const Expr &)> &var)
{
    auto kid = [&](std::size_t k) { return evaluate(e.kids[k], sig, var); };
    switch (e.kind) {
    case Expr::Kind::number: return SuperPoly::constant(sig, e.value);
    case Expr::Kind::x:
    case Expr::Kind::theta:
    case Expr::Kind::eta: return var(e);
    case Expr::Kind::add: return kid(0) + kid(1);
    case Expr::Kind::sub: return kid(0) - kid(1);
    case Expr::Kind::mul: return kid(0) * kid(1);
    case Expr::Kind::neg: return -kid(0);
    case Expr::Kind::pow: return kid(0).pow(e.exponent);
    case Expr::Kind::div: {
        SuperPoly d = kid(1);
        const auto &t = d.terms();
        if (t.size() != 1 || t.begin()->first != SuperMonomial{}) parse_error(e.at, "can only divide by a nonzero constant");
        Rational c = t.begin()->second;
        return (1 / c) * kid(0);
    }
    }
    parse_error(e.at, "bad expression");
}

inline SuperPoly evaluate_in_ring(const Expr &e, RingSignature sig)
{
    return evaluate(e, sig, [&](const Expr &v) {
        return SuperPoly::variable(sig, v.kind == Expr::Kind::x ? Variable::x(v.index) : Variable::theta(v.index));
    });
}

// th<j> are the geometric generators, eta<k> the base ones.
struct GrassmannShape {
    int geometric = 0;
    int base = 0;

    void scan(const Expr &e)
    {
        if (e.kind == Expr::Kind::theta) geometric = std::max(geometric, e.index);
        if (e.kind == Expr::Kind::eta) base = std::max(base, e.index);
        for (const auto &k : e.kids) scan(k);
    }

    GrassmannAlgebra algebra(Location at) const
    {
        if (geometric + base > 16) parse_error(at, "at most 16 Grassmann generators are supported");
        return GrassmannAlgebra::split(geometric, base);
    }
};

inline GrassmannElement evaluate_grassmann(const Expr &e, GrassmannAlgebra alg, int geometric)
{
    auto sig = alg.signature();
    return {alg, evaluate(e, sig, [&](const Expr &v) {
                return SuperPoly::variable(sig, Variable::theta(v.kind == Expr::Kind::theta ? v.index : geometric + v.index));
            })};
}

inline Poly to_plane_poly(const SuperPoly &f)
{
    Poly out;
    for (const auto &[m, c] : f.terms()) {
        require(m.odd == 0, ErrorKind::precondition, "nested 0-cycles need purely even ideals; found " + f.to_string());
        out = out + Poly::monomial(m.even, c);
    }
    return out;
}

class Runner {
public:
    Runner(Session s, Options opt) : s_(std::move(s)), opt_(opt)
    {
        if (s_.ring) sig_ = RingSignature::projective(s_.ring->first, s_.ring->second);
        for (const auto &[name, decl] : s_.ideals) {
            std::vector<SuperPoly> gens;
            for (const auto &g : decl.gens) gens.push_back(evaluate_in_ring(g, sig_));
            ideals_[name] = std::move(gens);
        }
        for (const auto &c : s_.commands) {
            if (c.kind == CommandKind::koszul) {
                std::vector<SuperPoly> seq;
                for (const auto &e : c.exprs) seq.push_back(evaluate_in_ring(e, sig_));
                sequences_.push_back(std::move(seq));
            }
            if (c.kind == CommandKind::berezinian || c.kind == CommandKind::picfactor) {
                GrassmannShape shape;
                for (const auto &e : c.exprs) shape.scan(e);
                for (const auto &row : c.matrix)
                    for (const auto &e : row) shape.scan(e);
                auto alg = shape.algebra(c.at);
                std::vector<GrassmannElement> elems;
                for (const auto &e : c.exprs) elems.push_back(evaluate_grassmann(e, alg, shape.geometric));
                for (const auto &row : c.matrix)
                    for (const auto &e : row) elems.push_back(evaluate_grassmann(e, alg, shape.geometric));
                grassmann_.push_back({alg, std::move(elems)});
            }
        }
    }

    // Runs every command in order; the exit code is that of the first failure.
    RunResult run()
    {
        RunResult res;
        Json all = Json::array();
        std::size_t koszul_i = 0, grass_i = 0;
        for (const auto &c : s_.commands) {
            Json entry{{"command", c.name}, {"object", c.object}};
            try {
                entry["result"] = execute(c, koszul_i, grass_i);
            } catch (const Error &e) {
                entry["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
                if (res.exit_code == 0) res.exit_code = exit_code_for(e.kind());
            }
            if (c.kind == CommandKind::koszul) ++koszul_i;
            if (c.kind == CommandKind::berezinian || c.kind == CommandKind::picfactor) ++grass_i;
            all.push_back(std::move(entry));
        }
        res.out = opt_.format == Format::json ? all.dump(2) + "\n" : render_table(all);
        return res;
    }

private:
    BModulePresentation presentation(const std::string &name) const
    {
        if (name == "O") return BModulePresentation::structure_sheaf(s_.ring->first, s_.ring->second);
        return BModulePresentation::quotient(sig_, ideals_.at(s_.modules.at(name).ideal));
    }

    CohomologyEngine &engine(const std::string &name)
    {
        auto it = engines_.find(name);
        if (it == engines_.end()) it = engines_.emplace(name, CohomologyEngine(expand_module(presentation(name)))).first;
        return it->second;
    }

    void cap(std::int64_t v, const std::string &what) const
    {
        require(v >= -opt_.max_degree && v <= opt_.max_degree, ErrorKind::limit_exceeded,
                what + " " + std::to_string(v) + " exceeds --max-degree " + std::to_string(opt_.max_degree));
    }

    static int small(std::int64_t v, const std::string &what)
    {
        require(v >= -1000 && v <= 1000, ErrorKind::limit_exceeded, what + " out of range");
        return static_cast<int>(v);
    }

    Json execute(const Command &c, std::size_t koszul_i, std::size_t grass_i)
    {
        switch (c.kind) {
        case CommandKind::cohomology: {
            cap(c.ints[0], "twist");
            cap(c.ints[1], "twist");
            auto &E = engine(c.targets[0]);
            Json rows = Json::array();
            for (auto r = c.ints[0]; r <= c.ints[1]; ++r) {
                Json h = Json::array();
                for (int i = 0; i <= E.m(); ++i) h.push_back(to_json(E.sheaf(static_cast<int>(r), i)));
                rows.push_back(Json{{"twist", r}, {"cohomology", h}});
            }
            return Json{{"m", E.m()}, {"rows", rows}};
        }
        case CommandKind::hilbert: {
            auto P = presentation(c.targets[0]);
            auto &E = engine(c.targets[0]);
            auto filtered = super_hilbert_polynomial(P);
            auto expanded = hilbert_polynomial_pair(E.resolution());
            require(filtered == expanded.poly, ErrorKind::internal,
                    "filtration and expansion routes disagree on the Hilbert polynomial");
            // Exact least r0 with h(r) = P(r) for all r >= r0. Below the lowest
            // generator degree h vanishes, so a nonzero P disagrees within m + 2 steps.
            Json from = nullptr;
            const auto &F0 = E.resolution().modules.front();
            if (!F0.empty()) {
                int low = F0.front().degree;
                for (const auto &g : F0) low = std::min(low, g.degree);
                for (int r = expanded.stabilization - 1; r >= low - E.m() - 2; --r)
                    if (!(E.hilbert(r) == filtered.at(r))) {
                        from = r + 1;
                        break;
                    }
            }
            return Json{{"plus", to_json(filtered.plus)}, {"minus", to_json(filtered.minus)}, {"agrees_from", from}};
        }
        case CommandKind::betti: {
            auto t = betti_table(engine(c.targets[0]).resolution());
            std::map<std::pair<int, int>, DimPair> cells;
            for (const auto &[key, count] : t.entries) {
                auto [i, j, p] = key;
                cells[{i, j}][p] += count;
            }
            Json out = Json::array();
            for (const auto &[ij, d] : cells)
                out.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"even", d.even}, {"odd", d.odd}});
            return Json{{"betti", out}};
        }
        case CommandKind::regularity: return Json{{"regularity", engine(c.targets[0]).regularity()}};
        case CommandKind::castelnuovo: {
            int r = small(c.ints[0], "r");
            cap(r, "r");
            auto rep = castelnuovo_check(engine(c.targets[0]).module(), r);
            Json rows = Json::array();
            for (const auto &row : rep.rows)
                rows.push_back(Json{{"twist", row.twist},
                                    {"regular", row.regular},
                                    {"multiplication_surjective", row.multiplication_surjective},
                                    {"globally_generated", row.globally_generated}});
            return Json{{"passed", rep.passed()}, {"rows", rows}};
        }
        case CommandKind::serre: {
            int m = small(c.ints[0], "m"), n = small(c.ints[1], "n"), r = small(c.ints[2], "r");
            require(m <= 7 && n <= 16, ErrorKind::limit_exceeded, "serre supports m <= 7 and n <= 16");
            cap(r, "twist");
            return Json{{"holds", serre_duality_check(m, n, r)}};
        }
        case CommandKind::koszul: return koszul(c, sequences_[koszul_i]);
        case CommandKind::berezinian: return berezinian_cmd(c, grassmann_[grass_i]);
        case CommandKind::picfactor: {
            const auto &[alg, elems] = grassmann_[grass_i];
            auto f = even_unit_factorize(elems[0], alg.size);
            return Json{{"x0", f.x0.to_string()}, {"x1", f.x1.to_string()}};
        }
        case CommandKind::nested: {
            auto plane = [&](const std::string &name) {
                require(sig_.even >= 2, ErrorKind::precondition, "nested 0-cycles need at least the variables x0, x1");
                std::vector<Poly> out;
                for (const auto &g : ideals_.at(name)) out.push_back(to_plane_poly(g));
                return out;
            };
            auto r = nested_zero_cycle_check(plane(c.targets[0]), plane(c.targets[1]));
            Json out{{"contained", r.contained}, {"p", r.p}, {"q", r.q}};
            if (r.witness) out["witness"] = r.witness->to_string();
            if (r.contained && r.p <= 6 && r.q <= 6) out["monomial_pairs"] = nested_pair_count(r.p, r.q);
            return out;
        }
        case CommandKind::dims_grass: {
            int v[4];
            for (int k = 0; k < 4; ++k) v[k] = small(c.ints[static_cast<std::size_t>(k)], "rank");
            return to_json(supergrass_dim(v[0], v[1], v[2], v[3]));
        }
        case CommandKind::dims_flag:
            return to_json(flag_fibre_dim(small(c.ints[0], "rank"), small(c.ints[1], "rank")));
        case CommandKind::picard: {
            int m = small(c.ints[0], "m");
            std::vector<int> twists;
            for (std::size_t k = 1; k < c.ints.size(); ++k) {
                cap(c.ints[k], "twist");
                twists.push_back(static_cast<int>(c.ints[k]));
            }
            std::string plus = picard_plus_description(m, twists);
            return Json{{"odd_dimension", picard_odd_dimension(m, twists)},
                        {"plus", plus},
                        {"structure", pic_parity_structure(plus)}};
        }
        case CommandKind::selftest: return selftest(c);
        }
        fail(ErrorKind::internal, "unhandled command");
    }

    Json koszul(const Command &c, const std::vector<SuperPoly> &seq)
    {
        int D = small(*c.window, "window");
        require(D <= opt_.max_degree, ErrorKind::limit_exceeded,
                "window " + std::to_string(D) + " exceeds --max-degree " + std::to_string(opt_.max_degree));
        std::vector<SuperPoly> evens, odds;
        for (const auto &f : seq) {
            auto par = f.parity();
            require(par.has_value(), ErrorKind::parity, f.to_string() + " is not parity-homogeneous");
            (*par == Parity::even ? evens : odds).push_back(f);
        }
        KoszulComplex K(sig_, evens, odds, D);
        Json out{{"p", K.p()}, {"q", K.q()}, {"window", D}, {"d_squared_zero", K.squares_to_zero()}};
        Json hom = Json::array();
        for (int i = 0; i + 1 <= D; ++i)
            for (int d = 0; d <= D; ++d) {
                auto h = K.homology(i, d);
                if (!h.is_zero())
                    hom.push_back(Json{{"i", i}, {"degree", d}, {"even", h.even}, {"odd", h.odd}});
            }
        out["homology"] = hom;
        if (D >= K.p() + K.q() + 2) {
            auto v = regular_sequence_check(K);
            out["regular"] = v.verified;
            if (v.verified) {
                auto dc = dual_concentration_check(K);
                out["dual"] = Json{{"concentrated", dc.passed},
                                   {"degree", dc.p},
                                   {"shift", dc.shift},
                                   {"parity_flipped", dc.parity_flipped}};
            }
        } else {
            out["regular"] = nullptr;
        }
        return out;
    }

    Json berezinian_cmd(const Command &c, const std::pair<GrassmannAlgebra, std::vector<GrassmannElement>> &data)
    {
        const auto &[alg, elems] = data;
        SuperMatrix<GrassmannElement> M(c.even_rows, c.odd_rows, c.even_rows, c.odd_rows, GrassmannElement(alg));
        const int n = c.even_rows + c.odd_rows;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = elems[static_cast<std::size_t>(i * n + j)];
        auto b = berezinian(M, GrassmannElement::constant(alg, 1));
        return Json{{"berezinian", b.to_string()}, {"scalar", to_json(b.scalar_part())}};
    }

    // Randomized identity checks driven by --seed.
    Json selftest(const Command &c)
    {
        auto count = c.ints[0];
        require(count >= 0 && count <= 1000, ErrorKind::limit_exceeded, "selftest count must lie in [0, 1000]");
        std::mt19937_64 rng(opt_.seed);
        auto coef = [&]() -> Rational {
            std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
            return make_rational(num(rng), den(rng));
        };
        auto random_even = [&](GrassmannAlgebra alg, bool unit, std::optional<Parity> block) {
            GrassmannElement r(alg);
            for (OddMask s = 1; s < (OddMask{1} << alg.size); ++s) {
                if (std::popcount(s) % 2 != 0 || rng() % 2) continue;
                if (block && parity_of(std::popcount(s & alg.geometric)) != *block) continue;
                r += GrassmannElement::monomial(alg, s, coef());
            }
            if (unit) {
                Rational k = 0;
                while (sgn(k) == 0) k = coef();
                r += r.constant_like(k);
            }
            return r;
        };
        auto random_odd = [&](GrassmannAlgebra alg) {
            GrassmannElement r(alg);
            for (OddMask s = 1; s < (OddMask{1} << alg.size); ++s)
                if (std::popcount(s) % 2 == 1 && rng() % 2) r += GrassmannElement::monomial(alg, s, coef());
            return r;
        };
        std::int64_t passed = 0;
        if (c.targets[0] == "berezinian") {
            for (std::int64_t t = 0; t < count; ++t) {
                auto alg = GrassmannAlgebra::untagged(static_cast<int>(rng() % 5));
                int p = static_cast<int>(rng() % 3), q = static_cast<int>(rng() % 3);
                if (p + q == 0) p = 1;
                auto one = GrassmannElement::constant(alg, 1);
                auto random_matrix = [&]() {
                    for (;;) {
                        SuperMatrix<GrassmannElement> M(p, q, p, q, GrassmannElement(alg));
                        Matrix<Rational> a(static_cast<std::size_t>(p), static_cast<std::size_t>(p), Rational(0)),
                            d(static_cast<std::size_t>(q), static_cast<std::size_t>(q), Rational(0));
                        for (int i = 0; i < p + q; ++i)
                            for (int j = 0; j < p + q; ++j) {
                                bool odd = (i >= p) != (j >= p);
                                M(i, j) = odd ? random_odd(alg) : random_even(alg, false, std::nullopt) + one.constant_like(coef());
                                if (!odd && i < p) a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = M(i, j).scalar_part();
                                if (!odd && i >= p)
                                    d(static_cast<std::size_t>(i - p), static_cast<std::size_t>(j - p)) = M(i, j).scalar_part();
                            }
                        if (invert(a) && invert(d)) return M;
                    }
                };
                auto X = random_matrix(), Y = random_matrix();
                passed += berezinian(X * Y, one) == berezinian(X, one) * berezinian(Y, one);
            }
        } else {
            for (std::int64_t t = 0; t < count; ++t) {
                auto alg = GrassmannAlgebra::split(1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3));
                FactoredUnit u{random_even(alg, true, Parity::even), random_even(alg, false, Parity::odd)};
                auto back = even_unit_factorize(u.combine(), alg.size);
                passed += back.x0 == u.x0 && back.x1 == u.x1;
            }
        }
        require(passed == count, ErrorKind::internal,
                "selftest " + c.targets[0] + " failed " + std::to_string(count - passed) + " of " + std::to_string(count));
        return Json{{"seed", opt_.seed}, {"count", count}, {"passed", passed}};
    }

    static std::string scalar(const Json &v)
    {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_object() && v.contains("even") && v.contains("odd") && v.size() == 2)
            return "(" + v["even"].dump() + "," + v["odd"].dump() + ")";
        return v.dump();
    }

    static std::string render_table(const Json &all)
    {
        std::ostringstream os;
        for (const auto &e : all) {
            os << "== " << e["command"].get<std::string>() << " " << e["object"].get<std::string>() << "\n";
            if (e.contains("error")) {
                os << "error (" << e["error"]["kind"].get<std::string>() << "): " << e["error"]["message"].get<std::string>()
                   << "\n";
                continue;
            }
            const Json &r = e["result"];
            if (e["command"] == "cohomology") {
                os << "twist";
                for (int i = 0; i <= r["m"].get<int>(); ++i) os << "\tH^" << i;
                os << "\n";
                for (const auto &row : r["rows"]) {
                    os << row["twist"].get<std::int64_t>();
                    for (const auto &h : row["cohomology"]) os << "\t" << scalar(h);
                    os << "\n";
                }
                continue;
            }
            if (!r.is_object() || (r.contains("even") && r.size() == 2)) {
                os << scalar(r) << "\n";
                continue;
            }
            for (const auto &[k, v] : r.items()) {
                if (v.is_array() && !v.empty() && v.front().is_object()) {
                    os << k << ":\n";
                    for (const auto &row : v) {
                        os << " ";
                        for (const auto &[rk, rv] : row.items()) os << " " << rk << "=" << scalar(rv);
                        os << "\n";
                    }
                } else if (v.is_array()) {
                    os << k << ": [";
                    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
                    os << "]\n";
                } else {
                    os << k << ": " << scalar(v) << "\n";
                }
            }
        }
        return os.str();
    }

    Session s_;
    Options opt_;
    RingSignature sig_;
    std::map<std::string, std::vector<SuperPoly>> ideals_;
    std::vector<std::vector<SuperPoly>> sequences_;
    std::vector<std::pair<GrassmannAlgebra, std::vector<GrassmannElement>>> grassmann_;
    std::map<std::string, CohomologyEngine> engines_;
};

// Parse errors abort before any command runs.
inline RunResult run_source(const std::string &src, const Options &opt)
{
    try {
        Runner runner(parse(src), opt);
        return runner.run();
    } catch (const Error &e) {
        RunResult r;
        r.exit_code = exit_code_for(e.kind());
        r.err = "error: " + std::string(e.what()) + "\n";
        return r;
    }
}

} // namespace supergeom::cli
