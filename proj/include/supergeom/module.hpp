#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "monomial.hpp"
#include "poly.hpp"
#include "superpoly.hpp"

namespace supergeom {

struct GenInfo {
    int degree = 0;
    Parity parity = Parity::even;

    bool operator==(const GenInfo &) const = default;
};

// Sparse vector of a free S-module: generator index → coefficient.
using Column = std::map<int, Poly>;

inline void add_to(Column &c, int i, const Poly &p)
{
    if (p.is_zero()) return;
    auto [it, inserted] = c.emplace(i, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) c.erase(it);
    }
}

// Graded module over S = k[x_0..x_m], presented as the cokernel of the
// relation columns inside ⊕ S(-degree_i), each generator tagged with a parity.
struct GradedSModule {
    int m = 0;
    std::vector<GenInfo> gens;
    std::vector<Column> relations;

    int nvars() const { return m + 1; }

    static GradedSModule free(int m, std::vector<GenInfo> gens)
    {
        require(m >= 0 && m + 1 <= kMaxEvenVars, ErrorKind::limit_exceeded, "unsupported number of even variables");
        return {m, std::move(gens), {}};
    }

    // (degree, parity) of a nonzero homogeneous column; throws otherwise.
    GenInfo column_info(const Column &c) const
    {
        require(!c.empty(), ErrorKind::precondition, "zero relation has no degree");
        std::optional<GenInfo> info;
        for (const auto &[i, f] : c) {
            require(i >= 0 && i < static_cast<int>(gens.size()), ErrorKind::precondition,
                    "relation names a missing generator");
            auto d = f.degree();
            require(d.has_value(), ErrorKind::not_homogeneous, "relation entry " + f.to_string() + " is not homogeneous");
            GenInfo here{*d + gens[static_cast<std::size_t>(i)].degree, gens[static_cast<std::size_t>(i)].parity};
            if (!info)
                info = here;
            else {
                require(info->degree == here.degree, ErrorKind::not_homogeneous, "relation is not homogeneous");
                require(info->parity == here.parity, ErrorKind::parity, "relation mixes parities");
            }
        }
        return *info;
    }

    void validate() const
    {
        for (const auto &c : relations)
            if (!c.empty()) (void)column_info(c);
    }
};

struct ModTerm {
    int comp = 0;
    Monomial mon;

    bool operator==(const ModTerm &) const = default;
};

enum class ModuleOrderKind { pot, top, schreyer };

// Term orders on free modules.
//  pot:      position first (lower index greater), then the monomial order.
//  top:      total degree (monomial degree + generator degree), then pure
//            reverse lexicographic exponents, then lower index greater.
//  schreyer: compare images m·lead(g_i) in the previous order, ties broken by
//            lower index greater.
class ModuleOrder {
public:
    static ModuleOrder pot(MonomialOrder mo)
    {
        ModuleOrder o;
        o.kind_ = ModuleOrderKind::pot;
        o.mo_ = mo;
        return o;
    }

    static ModuleOrder pot(int nvars) { return pot(MonomialOrder{OrderKind::degrevlex, nvars}); }

    static ModuleOrder top(int nvars, std::vector<int> gen_degrees)
    {
        ModuleOrder o;
        o.kind_ = ModuleOrderKind::top;
        o.mo_ = {OrderKind::degrevlex, nvars};
        o.degrees_ = std::move(gen_degrees);
        return o;
    }

    static ModuleOrder schreyer(std::shared_ptr<const ModuleOrder> prev, std::vector<ModTerm> leads)
    {
        ModuleOrder o;
        o.kind_ = ModuleOrderKind::schreyer;
        o.mo_ = prev->mo_;
        o.prev_ = std::move(prev);
        o.leads_ = std::move(leads);
        return o;
    }

    ModuleOrderKind kind() const { return kind_; }
    int nvars() const { return mo_.nvars; }
    const MonomialOrder &monomial_order() const { return mo_; }

    int compare(const ModTerm &a, const ModTerm &b) const
    {
        switch (kind_) {
        case ModuleOrderKind::pot:
            if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
            return mo_.compare(a.mon, b.mon);
        case ModuleOrderKind::top: {
            int da = a.mon.degree() + degrees_[static_cast<std::size_t>(a.comp)];
            int db = b.mon.degree() + degrees_[static_cast<std::size_t>(b.comp)];
            if (da != db) return da > db ? 1 : -1;
            if (int c = mo_.revlex(a.mon, b.mon)) return c;
            if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
            return 0;
        }
        case ModuleOrderKind::schreyer: {
            const auto &la = leads_[static_cast<std::size_t>(a.comp)], &lb = leads_[static_cast<std::size_t>(b.comp)];
            if (int c = prev_->compare({la.comp, a.mon * la.mon}, {lb.comp, b.mon * lb.mon})) return c;
            if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
            return 0;
        }
        }
        return 0;
    }

private:
    ModuleOrderKind kind_ = ModuleOrderKind::pot;
    MonomialOrder mo_;
    std::vector<int> degrees_;
    std::shared_ptr<const ModuleOrder> prev_;
    std::vector<ModTerm> leads_;
};

// Module element as terms sorted ascending in a fixed order, so the lead term
// is the last entry. Every operation takes the order explicitly.
struct ModVec {
    std::vector<std::pair<ModTerm, Rational>> terms;

    bool is_zero() const { return terms.empty(); }
    const ModTerm &lead() const { return terms.back().first; }
    const Rational &lead_coeff() const { return terms.back().second; }

    static ModVec from_column(const Column &c, const ModuleOrder &ord)
    {
        ModVec v;
        for (const auto &[i, f] : c)
            for (const auto &[m, k] : f.terms()) v.terms.push_back({{i, m}, k});
        std::sort(v.terms.begin(), v.terms.end(),
                  [&](const auto &a, const auto &b) { return ord.compare(a.first, b.first) < 0; });
        return v;
    }

    Column to_column() const
    {
        Column c;
        for (const auto &[t, k] : terms) {
            Poly p = Poly::monomial(t.mon, k);
            add_to(c, t.comp, p);
        }
        return c;
    }

    void scale(const Rational &q)
    {
        for (auto &t : terms) t.second *= q;
    }

    void make_monic()
    {
        if (!terms.empty()) scale(1 / lead_coeff());
    }
};

// a + c·μ·b (μ a monomial), merging in the given order.
inline ModVec add_mul(const ModVec &a, const Rational &c, const Monomial &mu, const ModVec &b, const ModuleOrder &ord)
{
    ModVec r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size()) {
            r.terms.push_back(a.terms[i++]);
            continue;
        }
        ModTerm tb{b.terms[j].first.comp, b.terms[j].first.mon * mu};
        if (i == a.terms.size()) {
            r.terms.push_back({tb, c * b.terms[j++].second});
            continue;
        }
        int cmp = ord.compare(a.terms[i].first, tb);
        if (cmp < 0)
            r.terms.push_back(a.terms[i++]);
        else if (cmp > 0)
            r.terms.push_back({tb, c * b.terms[j++].second});
        else {
            Rational s = a.terms[i++].second + c * b.terms[j++].second;
            if (sgn(s) != 0) r.terms.push_back({tb, s});
        }
    }
    return r;
}

inline std::string column_to_string(const Column &c)
{
    std::string s = "[";
    bool first = true;
    for (const auto &[i, f] : c) {
        if (!first) s += ", ";
        first = false;
        s += std::to_string(i) + ": " + f.to_string();
    }
    return s + "]";
}

} // namespace supergeom
