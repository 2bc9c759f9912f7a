#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "groebner.hpp"
#include "linalg.hpp"
#include "module.hpp"

namespace supergeom {

// F_0 ← F_1 ← ... ← F_L; maps[i] : F_{i+1} → F_i has one column per
// generator of F_{i+1}.
struct Resolution {
    int m = 0;
    std::vector<std::vector<GenInfo>> modules;
    std::vector<std::vector<Column>> maps;
    bool minimal = false;

    int nvars() const { return m + 1; }
    int length() const { return static_cast<int>(modules.size()) - 1; }

    std::vector<GenInfo> module(int i) const
    {
        if (i < 0 || i >= static_cast<int>(modules.size())) return {};
        return modules[static_cast<std::size_t>(i)];
    }
};

// Basis of the degree-d piece of a free module, optionally restricted to one
// parity: pairs (generator, monomial of degree d - deg generator).
class DegreeBasis {
public:
    DegreeBasis(int nvars, const std::vector<GenInfo> &gens, int d, std::optional<Parity> parity = std::nullopt)
    {
        for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
            const auto &info = gens[static_cast<std::size_t>(g)];
            if (parity && info.parity != *parity) continue;
            for_each_monomial(nvars, d - info.degree, [&](const Monomial &mu) {
                index_.emplace(ModTermKey{g, mu}, elems_.size());
                elems_.push_back({g, mu});
            });
        }
    }

    std::size_t size() const { return elems_.size(); }
    const ModTerm &operator[](std::size_t k) const { return elems_[k]; }

    std::size_t index(int g, const Monomial &mu) const
    {
        auto it = index_.find({g, mu});
        require(it != index_.end(), ErrorKind::internal, "term outside the degree basis");
        return it->second;
    }

    // Coordinates of μ·v for a homogeneous column v landing in this piece.
    SparseVec coordinates(const Column &v, const Monomial &mu) const
    {
        SparseVec out;
        for (const auto &[g, f] : v)
            for (const auto &[m, c] : f.terms()) {
                auto [it, inserted] = out.emplace(index(g, m * mu), c);
                if (!inserted) {
                    it->second += c;
                    if (sgn(it->second) == 0) out.erase(it);
                }
            }
        return out;
    }

private:
    struct ModTermKey {
        int g;
        Monomial mu;
        auto operator<=>(const ModTermKey &) const = default;
    };
    std::vector<ModTerm> elems_;
    std::map<ModTermKey, std::size_t> index_;
};

// Rank of the degree-d piece of the map sending generator h of the source to
// columns[h], restricted to one parity if requested.
inline std::size_t map_rank_in_degree(int nvars, const std::vector<GenInfo> &source, const std::vector<GenInfo> &target,
                                      const std::vector<Column> &columns, int d,
                                      std::optional<Parity> parity = std::nullopt)
{
    DegreeBasis dom(nvars, source, d, parity), cod(nvars, target, d, parity);
    Echelon e;
    for (std::size_t k = 0; k < dom.size(); ++k)
        e.add(cod.coordinates(columns[static_cast<std::size_t>(dom[k].comp)], dom[k].mon));
    return e.rank();
}

namespace detail {

// Within each lead component, leads in descending lex order.
inline void sort_for_schreyer(std::vector<ModVec> &g, int nvars)
{
    MonomialOrder lex{OrderKind::lex, nvars};
    std::stable_sort(g.begin(), g.end(), [&](const ModVec &a, const ModVec &b) {
        if (a.lead().comp != b.lead().comp) return a.lead().comp < b.lead().comp;
        return lex.compare(a.lead().mon, b.lead().mon) > 0;
    });
}

} // namespace detail

// Non-minimal resolution by Schreyer's algorithm: each level is a Gröbner
// basis for the induced order on the previous free module.
inline Resolution schreyer_resolution(const GradedSModule &M)
{
    M.validate();
    const int nv = M.nvars();
    Resolution R;
    R.m = M.m;
    R.modules.push_back(M.gens);

    auto ord = std::make_shared<const ModuleOrder>(ModuleOrder::pot(nv));
    std::vector<ModVec> g = groebner_basis(M.relations, *ord);
    detail::sort_for_schreyer(g, nv);

    while (!g.empty()) {
        require(static_cast<int>(R.modules.size()) <= nv + 2, ErrorKind::internal, "Schreyer resolution failed to terminate");
        const auto &prev = R.modules.back();
        std::vector<GenInfo> level;
        std::vector<Column> cols;
        std::vector<ModTerm> leads;
        for (const auto &v : g) {
            leads.push_back(v.lead());
            const auto &gen = prev[static_cast<std::size_t>(v.lead().comp)];
            level.push_back({gen.degree + v.lead().mon.degree(), gen.parity});
            cols.push_back(v.to_column());
        }
        R.modules.push_back(level);
        R.maps.push_back(cols);

        auto next = std::make_shared<const ModuleOrder>(ModuleOrder::schreyer(ord, leads));
        std::vector<ModVec> syz;
        for (std::size_t k = 0; k < g.size(); ++k)
            for (std::size_t l = k + 1; l < g.size(); ++l) {
                if (g[k].lead().comp != g[l].lead().comp) continue;
                SPair sp = s_vector(g[k], g[l], *ord);
                Quotients q;
                ModVec rem = normal_form(sp.s, g, *ord, &q);
                require(rem.is_zero(), ErrorKind::internal, "S-vector of a Gröbner basis did not reduce to zero");
                Column tau;
                add_to(tau, static_cast<int>(k), Poly::monomial(sp.mi, 1 / g[k].lead_coeff()));
                add_to(tau, static_cast<int>(l), Poly::monomial(sp.mj, -1 / g[l].lead_coeff()));
                for (const auto &[u, p] : q) add_to(tau, u, -p);
                ModVec t = ModVec::from_column(tau, *next);
                require(!t.is_zero() && t.lead() == ModTerm{static_cast<int>(k), sp.mi}, ErrorKind::internal,
                        "unexpected Schreyer lead term");
                t.make_monic();
                syz.push_back(std::move(t));
            }
        // Keep a minimal set of lead terms; the survivors remain a Gröbner basis.
        std::vector<ModVec> kept;
        for (auto &t : syz) {
            bool redundant = std::any_of(kept.begin(), kept.end(), [&](const ModVec &o) {
                return o.lead().comp == t.lead().comp && o.lead().mon.divides(t.lead().mon);
            });
            if (redundant) continue;
            std::erase_if(kept, [&](const ModVec &o) {
                return o.lead().comp == t.lead().comp && t.lead().mon.divides(o.lead().mon);
            });
            kept.push_back(std::move(t));
        }
        detail::sort_for_schreyer(kept, nv);
        g = std::move(kept);
        ord = next;
    }
    return R;
}

// Remove every unit entry by change of basis until no differential has a
// nonzero constant entry.
inline Resolution minimize(Resolution R)
{
    auto erase_row = [](std::vector<Column> &cols, int row) {
        for (auto &c : cols) {
            Column nc;
            for (auto &[i, f] : c)
                if (i != row) nc.emplace(i > row ? i - 1 : i, std::move(f));
            c = std::move(nc);
        }
    };
    for (;;) {
        bool found = false;
        for (std::size_t i = 0; i < R.maps.size() && !found; ++i) {
            auto &d = R.maps[i];
            for (int b = 0; b < static_cast<int>(d.size()) && !found; ++b)
                for (const auto &[row, f] : d[static_cast<std::size_t>(b)]) {
                    Rational c = f.constant_term();
                    if (sgn(c) == 0) continue;
                    const int a = row;
                    found = true;
                    Column pivot = d[static_cast<std::size_t>(b)];
                    for (int s = 0; s < static_cast<int>(d.size()); ++s) {
                        if (s == b) continue;
                        auto &col = d[static_cast<std::size_t>(s)];
                        auto it = col.find(a);
                        if (it == col.end()) continue;
                        Poly factor = (1 / c) * it->second;
                        for (const auto &[r, pr] : pivot) add_to(col, r, -(pr * factor));
                        require(!col.count(a), ErrorKind::internal, "pivot elimination left an entry");
                    }
                    d.erase(d.begin() + b);
                    erase_row(d, a);
                    if (i + 1 < R.maps.size()) erase_row(R.maps[i + 1], b);
                    if (i > 0) R.maps[i - 1].erase(R.maps[i - 1].begin() + a);
                    R.modules[i].erase(R.modules[i].begin() + a);
                    R.modules[i + 1].erase(R.modules[i + 1].begin() + b);
                    break;
                }
        }
        if (!found) break;
    }
    while (R.modules.size() > 1 && R.modules.back().empty()) {
        R.modules.pop_back();
        R.maps.pop_back();
    }
    R.minimal = true;
    return R;
}

inline Resolution free_resolution(const GradedSModule &M)
{
    Resolution R = minimize(schreyer_resolution(M));
    require(R.length() <= M.nvars(), ErrorKind::internal, "resolution longer than the number of variables");
    return R;
}

// maps[i] ∘ maps[i+1] = 0 exactly.
inline bool composes_to_zero(const Resolution &R)
{
    for (std::size_t i = 0; i + 1 < R.maps.size(); ++i)
        for (const auto &col : R.maps[i + 1]) {
            Column img;
            for (const auto &[r, f] : col)
                for (const auto &[s, g] : R.maps[i][static_cast<std::size_t>(r)]) add_to(img, s, f * g);
            if (!img.empty()) return false;
        }
    return true;
}

// dim ker(d_i)_d = dim im(d_{i+1})_d for i ≥ 1 and every degree up to d_max.
inline bool is_exact_up_to(const Resolution &R, int d_max)
{
    const int nv = R.nvars();
    for (int i = 1; i <= R.length(); ++i)
        for (int d = 0; d <= d_max; ++d) {
            auto Fi = R.module(i);
            std::size_t dim = DegreeBasis(nv, Fi, d).size();
            std::size_t rk_out = map_rank_in_degree(nv, Fi, R.module(i - 1), R.maps[static_cast<std::size_t>(i - 1)], d);
            std::size_t rk_in = i < R.length()
                                    ? map_rank_in_degree(nv, R.module(i + 1), Fi, R.maps[static_cast<std::size_t>(i)], d)
                                    : 0;
            if (dim - rk_out != rk_in) return false;
        }
    return true;
}

inline int max_twist(const Resolution &R)
{
    int t = 0;
    for (const auto &F : R.modules)
        for (const auto &g : F) t = std::max(t, g.degree);
    return t;
}

struct BettiTable {
    // (i, j, parity) → β
    std::map<std::tuple<int, int, Parity>, int> entries;

    int at(int i, int j, Parity p) const
    {
        auto it = entries.find({i, j, p});
        return it == entries.end() ? 0 : it->second;
    }
    bool empty() const { return entries.empty(); }
};

inline BettiTable betti_table(const Resolution &R)
{
    require(R.minimal, ErrorKind::precondition, "Betti numbers need a minimal resolution");
    BettiTable t;
    for (int i = 0; i <= R.length(); ++i)
        for (const auto &g : R.modules[static_cast<std::size_t>(i)]) ++t.entries[{i, g.degree, g.parity}];
    return t;
}

} // namespace supergeom
