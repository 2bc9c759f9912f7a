#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "module.hpp"

namespace supergeom {

// Quotients of a division: basis index → polynomial multiplier.
using Quotients = std::map<int, Poly>;

namespace detail {

inline int find_divisor(const ModTerm &t, const std::vector<ModVec> &basis)
{
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const ModTerm &l = basis[k].lead();
        if (l.comp == t.comp && l.mon.divides(t.mon)) return static_cast<int>(k);
    }
    return -1;
}

} // namespace detail

// Full reduction of f by `basis` (leads need not be distinct). When
// `quotients` is given, f = Σ q_k basis_k + remainder on return.
inline ModVec normal_form(ModVec f, const std::vector<ModVec> &basis, const ModuleOrder &ord,
                          Quotients *quotients = nullptr)
{
    std::vector<std::pair<ModTerm, Rational>> rem; // collected in descending order
    while (!f.is_zero()) {
        ModTerm t = f.lead();
        int k = detail::find_divisor(t, basis);
        if (k < 0) {
            rem.push_back(f.terms.back());
            f.terms.pop_back();
            continue;
        }
        const ModVec &g = basis[static_cast<std::size_t>(k)];
        Monomial mu = g.lead().mon.quotient_of(t.mon);
        Rational c = f.lead_coeff() / g.lead_coeff();
        if (quotients) {
            auto &q = (*quotients)[k];
            q.add_term(mu, c);
            if (q.is_zero()) quotients->erase(k);
        }
        f = add_mul(f, -c, mu, g, ord);
    }
    std::reverse(rem.begin(), rem.end());
    f.terms = std::move(rem);
    return f;
}

// S-vector of two monic elements sharing a lead component, together with the
// two monomial multipliers.
struct SPair {
    ModVec s;
    Monomial mi, mj;
};

inline SPair s_vector(const ModVec &gi, const ModVec &gj, const ModuleOrder &ord)
{
    Monomial l = gi.lead().mon.lcm(gj.lead().mon);
    Monomial mi = gi.lead().mon.quotient_of(l), mj = gj.lead().mon.quotient_of(l);
    ModVec s = add_mul(ModVec{}, 1 / gi.lead_coeff(), mi, gi, ord);
    s = add_mul(s, -1 / gj.lead_coeff(), mj, gj, ord);
    return {std::move(s), mi, mj};
}

// Reduced, monic Gröbner basis by Buchberger's algorithm with the chain
// criterion, pairs taken in order of increasing lcm degree. The result is
// sorted by lead term, ascending.
inline std::vector<ModVec> groebner_basis(std::vector<ModVec> gens, const ModuleOrder &ord)
{
    std::vector<ModVec> g;
    using Pair = std::pair<int, int>;
    std::set<Pair> pending;
    std::multimap<int, Pair> queue;

    auto add_element = [&](ModVec v) {
        v.make_monic();
        int n = static_cast<int>(g.size());
        for (int i = 0; i < n; ++i) {
            if (g[static_cast<std::size_t>(i)].lead().comp != v.lead().comp) continue;
            int deg = g[static_cast<std::size_t>(i)].lead().mon.lcm(v.lead().mon).degree();
            pending.insert({i, n});
            queue.emplace(deg, Pair{i, n});
        }
        g.push_back(std::move(v));
    };

    for (auto &v : gens) {
        v = normal_form(std::move(v), g, ord);
        if (!v.is_zero()) add_element(std::move(v));
    }

    while (!queue.empty()) {
        auto [i, j] = queue.begin()->second;
        queue.erase(queue.begin());
        pending.erase({i, j});
        const ModVec &gi = g[static_cast<std::size_t>(i)], &gj = g[static_cast<std::size_t>(j)];
        Monomial l = gi.lead().mon.lcm(gj.lead().mon);
        bool skip = false;
        for (int k = 0; k < static_cast<int>(g.size()) && !skip; ++k) {
            if (k == i || k == j) continue;
            const ModTerm &lk = g[static_cast<std::size_t>(k)].lead();
            if (lk.comp != gi.lead().comp || !lk.mon.divides(l)) continue;
            auto key = [](int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; };
            if (!pending.count(key(i, k)) && !pending.count(key(j, k))) skip = true;
        }
        if (skip) continue;
        ModVec s = normal_form(s_vector(gi, gj, ord).s, g, ord);
        if (!s.is_zero()) add_element(std::move(s));
    }

    // Minimalize, then tail-reduce.
    std::vector<ModVec> minimal;
    for (std::size_t a = 0; a < g.size(); ++a) {
        bool redundant = false;
        for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
            if (a == b || g[a].lead().comp != g[b].lead().comp) continue;
            if (!g[b].lead().mon.divides(g[a].lead().mon)) continue;
            redundant = g[a].lead().mon != g[b].lead().mon || b < a;
        }
        if (!redundant) minimal.push_back(g[a]);
    }
    std::vector<ModVec> reduced;
    for (std::size_t a = 0; a < minimal.size(); ++a) {
        std::vector<ModVec> others;
        for (std::size_t b = 0; b < minimal.size(); ++b)
            if (b != a) others.push_back(minimal[b]);
        ModVec head;
        head.terms.push_back(minimal[a].terms.back());
        ModVec tail = minimal[a];
        tail.terms.pop_back();
        tail = normal_form(std::move(tail), others, ord);
        tail.terms.push_back(head.terms.back());
        tail.make_monic();
        reduced.push_back(std::move(tail));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const ModVec &a, const ModVec &b) { return ord.compare(a.lead(), b.lead()) < 0; });
    return reduced;
}

inline std::vector<ModVec> groebner_basis(const std::vector<Column> &gens, const ModuleOrder &ord)
{
    std::vector<ModVec> v;
    for (const auto &c : gens)
        if (!c.empty()) v.push_back(ModVec::from_column(c, ord));
    return groebner_basis(std::move(v), ord);
}

inline Column normal_form(const Column &f, const std::vector<ModVec> &basis, const ModuleOrder &ord)
{
    return normal_form(ModVec::from_column(f, ord), basis, ord).to_column();
}

// Buchberger criterion: every S-vector reduces to zero.
inline bool is_groebner_basis(const std::vector<ModVec> &g, const ModuleOrder &ord)
{
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (g[i].lead().comp != g[j].lead().comp) continue;
            if (!normal_form(s_vector(g[i], g[j], ord).s, g, ord).is_zero()) return false;
        }
    return true;
}

} // namespace supergeom
