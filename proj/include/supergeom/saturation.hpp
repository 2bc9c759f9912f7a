#pragma once

#include <vector>

#include "groebner.hpp"
#include "module.hpp"

namespace supergeom {

namespace detail {

inline Column swap_vars(const Column &c, int i, int j)
{
    Column r;
    for (const auto &[k, f] : c) r.emplace(k, f.swapped(i, j));
    return r;
}

} // namespace detail

// Generators of N : x_j^∞ inside ⊕ S(-deg_i). With x_j moved to the last
// position, a Gröbner basis for the degree / reverse-lexicographic order has
// the property that x_last^k divides g exactly when it divides lead(g), so
// dividing each element by that power generates the colon module.
inline std::vector<Column> colon_by_variable_power(int nvars, const std::vector<GenInfo> &gens,
                                                   const std::vector<Column> &N, int j)
{
    const int last = nvars - 1;
    std::vector<Column> swapped;
    for (const auto &c : N)
        if (!c.empty()) swapped.push_back(detail::swap_vars(c, j, last));
    std::vector<int> degs;
    for (const auto &g : gens) degs.push_back(g.degree);
    auto ord = ModuleOrder::top(nvars, degs);
    std::vector<Column> out;
    for (const auto &v : groebner_basis(swapped, ord)) {
        int k = v.lead().mon[last];
        Monomial xk = Monomial::variable(last, k);
        Column c;
        for (const auto &[t, coeff] : v.terms) {
            require(xk.divides(t.mon), ErrorKind::internal, "revlex divisibility property violated");
            add_to(c, t.comp, Poly::monomial(xk.quotient_of(t.mon), coeff));
        }
        out.push_back(detail::swap_vars(c, j, last));
    }
    return out;
}

// K1 ∩ K2 via elimination in F ⊕ F: the module generated by (k1, k1) and
// (0, k2) meets F ⊕ 0 exactly in K1 ∩ K2. The second copy gets the lower
// indices so that position-over-term eliminates it.
inline std::vector<Column> intersect_submodules(int nvars, int rank, const std::vector<Column> &K1,
                                                const std::vector<Column> &K2)
{
    std::vector<Column> gens;
    for (const auto &k : K1) {
        if (k.empty()) continue;
        Column c;
        for (const auto &[i, f] : k) {
            c.emplace(i, f);
            c.emplace(i + rank, f);
        }
        gens.push_back(std::move(c));
    }
    for (const auto &k : K2)
        if (!k.empty()) gens.push_back(k);
    auto ord = ModuleOrder::pot(nvars);
    std::vector<Column> out;
    for (const auto &v : groebner_basis(gens, ord)) {
        if (v.lead().comp < rank) continue;
        Column c;
        for (const auto &[t, coeff] : v.terms) add_to(c, t.comp - rank, Poly::monomial(t.mon, coeff));
        out.push_back(std::move(c));
    }
    return out;
}

// N : (x_0..x_m)^∞ = ∩_j N : x_j^∞, returned as a reduced Gröbner basis in
// position-over-term order.
inline std::vector<Column> saturate_submodule(int nvars, const std::vector<GenInfo> &gens, const std::vector<Column> &N)
{
    std::vector<Column> acc;
    bool first = true;
    for (int j = 0; j < nvars; ++j) {
        auto cj = colon_by_variable_power(nvars, gens, N, j);
        acc = first ? cj : intersect_submodules(nvars, static_cast<int>(gens.size()), acc, cj);
        first = false;
    }
    std::vector<Column> out;
    for (const auto &v : groebner_basis(acc, ModuleOrder::pot(nvars))) out.push_back(v.to_column());
    return out;
}

// F / (N : m^∞), i.e. M modulo its m-torsion.
inline GradedSModule saturate(const GradedSModule &M)
{
    M.validate();
    return {M.m, M.gens, saturate_submodule(M.nvars(), M.gens, M.relations)};
}

} // namespace supergeom
