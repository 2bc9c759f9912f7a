#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "expansion.hpp"
#include "groebner.hpp"
#include "resolution.hpp"

namespace supergeom {

// Pair (even, odd) of dimensions. Euler characteristics reuse the type with
// possibly negative entries.
struct DimPair {
    std::int64_t even = 0;
    std::int64_t odd = 0;

    DimPair operator+(const DimPair &o) const { return {even + o.even, odd + o.odd}; }
    DimPair operator-(const DimPair &o) const { return {even - o.even, odd - o.odd}; }
    DimPair &operator+=(const DimPair &o) { return *this = *this + o; }
    bool operator==(const DimPair &) const = default;

    std::int64_t &operator[](Parity p) { return p == Parity::even ? even : odd; }
    std::int64_t operator[](Parity p) const { return p == Parity::even ? even : odd; }

    bool is_zero() const { return even == 0 && odd == 0; }
    DimPair parity_flipped() const { return {odd, even}; }

    std::string to_string() const { return "(" + std::to_string(even) + "," + std::to_string(odd) + ")"; }
};

// (h0,h1) < (h0',h1') iff (h0 < h0' and h1 <= h1') or (h0 <= h0' and h1 < h1').
inline bool precedes(const DimPair &a, const DimPair &b)
{
    return (a.even < b.even && a.odd <= b.odd) || (a.even <= b.even && a.odd < b.odd);
}

// Univariate polynomial in r with rational coefficients, ascending.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static UPoly constant(const Rational &q) { return UPoly({q}); }
    static UPoly r() { return UPoly({Rational(0), Rational(1)}); }

    const std::vector<Rational> &coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    friend UPoly operator+(const UPoly &a, const UPoly &b)
    {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const Rational &q, const UPoly &a)
    {
        std::vector<Rational> c = a.c_;
        for (auto &x : c) x *= q;
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly &a, const UPoly &b) { return a + Rational(-1) * b; }
    friend UPoly operator*(const UPoly &a, const UPoly &b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(c));
    }
    UPoly &operator+=(const UPoly &o) { return *this = *this + o; }

    bool operator==(const UPoly &) const = default;

    Rational operator()(const Rational &x) const
    {
        Rational v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    std::string to_string() const
    {
        if (c_.empty()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const Rational &q = c_[static_cast<std::size_t>(k)];
            if (sgn(q) == 0) continue;
            Rational a = abs(q);
            s += s.empty() ? (sgn(q) < 0 ? "-" : "") : (sgn(q) < 0 ? " - " : " + ");
            std::string mon = k == 0 ? "" : (k == 1 ? "r" : "r^" + std::to_string(k));
            if (mon.empty())
                s += a.get_str();
            else if (a == 1)
                s += mon;
            else
                s += a.get_str() + "*" + mon;
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// C(m + r - j, m) as a polynomial in r.
inline UPoly binomial_poly(int m, int j)
{
    UPoly p = UPoly::constant(1);
    for (int t = 1; t <= m; ++t) p = p * UPoly({Rational(t - j), Rational(1)});
    return (1 / factorial_q(m)) * p;
}

struct PolyPair {
    UPoly plus, minus;

    bool operator==(const PolyPair &) const = default;
    PolyPair operator+(const PolyPair &o) const { return {plus + o.plus, minus + o.minus}; }
    UPoly &operator[](Parity p) { return p == Parity::even ? plus : minus; }
    const UPoly &operator[](Parity p) const { return p == Parity::even ? plus : minus; }

    // Values at an integer; throws if not integral.
    DimPair at(long r) const
    {
        Rational a = plus(r), b = minus(r);
        require(a.get_den() == 1 && b.get_den() == 1, ErrorKind::internal, "Hilbert polynomial value is not integral");
        return {a.get_num().get_si(), b.get_num().get_si()};
    }
};

// dim B(m,n)_r split by parity.
inline DimPair h_mn(int m, int n, int r)
{
    require(m >= 0 && n >= 0, ErrorKind::precondition, "h_mn needs m, n >= 0");
    DimPair h;
    for (int p = 0; p <= n && p <= r; ++p) h[parity_of(p)] += binomial(m + r - p, m) * binomial(n, p);
    return h;
}

// Dimensions of graded pieces of M through standard monomials of a Gröbner
// basis of its relations. Keeps the basis so repeated queries are cheap.
class HilbertFunction {
public:
    explicit HilbertFunction(const GradedSModule &M) : M_(M)
    {
        M.validate();
        for (const auto &v : groebner_basis(M.relations, ModuleOrder::pot(M.nvars()))) leads_.push_back(v.lead());
    }

    DimPair operator()(int r) const
    {
        DimPair out;
        for (int i = 0; i < static_cast<int>(M_.gens.size()); ++i) {
            const auto &g = M_.gens[static_cast<std::size_t>(i)];
            std::vector<Monomial> lead_mons;
            for (const auto &l : leads_)
                if (l.comp == i) lead_mons.push_back(l.mon);
            std::int64_t count = 0;
            for_each_monomial(M_.nvars(), r - g.degree, [&](const Monomial &mu) {
                for (const auto &l : lead_mons)
                    if (l.divides(mu)) return;
                ++count;
            });
            out[g.parity] += count;
        }
        return out;
    }

private:
    GradedSModule M_;
    std::vector<ModTerm> leads_;
};

inline DimPair hilbert_function(const GradedSModule &M, int r) { return HilbertFunction(M)(r); }

struct HilbertPolynomialResult {
    PolyPair poly;
    int stabilization = 0; // r₀: agreement for every r ≥ r₀ on the saturation
};

inline HilbertPolynomialResult hilbert_polynomial_pair(const Resolution &R)
{
    HilbertPolynomialResult out;
    bool any = false;
    int bound = 0;
    for (int i = 0; i <= R.length(); ++i)
        for (const auto &g : R.modules[static_cast<std::size_t>(i)]) {
            UPoly b = binomial_poly(R.m, g.degree);
            out.poly[g.parity] += (i % 2 ? Rational(-1) : Rational(1)) * b;
            bound = any ? std::max(bound, g.degree - i) : g.degree - i;
            any = true;
        }
    out.stabilization = any ? bound + 1 : 0;
    return out;
}

inline HilbertPolynomialResult hilbert_polynomial_pair(const GradedSModule &M)
{
    return hilbert_polynomial_pair(free_resolution(M));
}

// Numerator N(t) of the Hilbert series N(t)/(1-t)^{nvars} of S / (monomials).
inline std::vector<std::int64_t> monomial_hilbert_numerator(std::vector<Monomial> gens)
{
    auto minimalize = [](std::vector<Monomial> &g) {
        std::sort(g.begin(), g.end(), [](const Monomial &a, const Monomial &b) {
            if (a.degree() != b.degree()) return a.degree() < b.degree();
            return a < b;
        });
        g.erase(std::unique(g.begin(), g.end()), g.end());
        std::vector<Monomial> keep;
        for (const auto &m : g)
            if (std::none_of(keep.begin(), keep.end(), [&](const Monomial &k) { return k.divides(m); }))
                keep.push_back(m);
        g = std::move(keep);
    };
    auto add_shifted = [](std::vector<std::int64_t> &acc, const std::vector<std::int64_t> &p, int shift, int sign) {
        if (acc.size() < p.size() + static_cast<std::size_t>(shift)) acc.resize(p.size() + static_cast<std::size_t>(shift), 0);
        for (std::size_t k = 0; k < p.size(); ++k) acc[k + static_cast<std::size_t>(shift)] += sign * p[k];
    };
    minimalize(gens);
    if (gens.empty()) return {1};
    Monomial g = gens.back();
    gens.pop_back();
    std::vector<Monomial> colon;
    for (const auto &h : gens) colon.push_back(h.gcd(g).quotient_of(h));
    std::vector<std::int64_t> n = monomial_hilbert_numerator(gens);
    add_shifted(n, monomial_hilbert_numerator(colon), g.degree(), -1);
    return n;
}

// Quotients M^(p) of the θ-adic filtration of a B-module, as S-modules whose
// generator parities already include the shift by p.
struct FiltrationQuotients {
    std::vector<GradedSModule> quotients;
};

namespace detail {

struct LayeredBasis {
    GradedSModule expanded;
    std::vector<int> layer; // θ-count of each expanded generator
    std::vector<ModVec> gb;
};

inline LayeredBasis layered_basis(const BModulePresentation &P)
{
    LayeredBasis L{expand_module(P), {}, {}};
    const auto basis = theta_basis(P.m(), P.n());
    for (const auto &b : basis)
        for (std::size_t g = 0; g < P.gens.size(); ++g) L.layer.push_back(b.degree);
    L.gb = groebner_basis(L.expanded.relations, ModuleOrder::pot(L.expanded.nvars()));
    return L;
}

} // namespace detail

// Position-over-term with lower indices leading is compatible with the θ-count
// layers of the expansion, so a Gröbner basis element whose lead lies in layer
// p has no terms in lower layers; its layer-p part generates M^(p).
inline FiltrationQuotients total_filtration(const BModulePresentation &P)
{
    auto L = detail::layered_basis(P);
    FiltrationQuotients out;
    for (int p = 0; p <= P.n(); ++p) {
        GradedSModule Q = GradedSModule::free(P.m(), {});
        std::vector<int> renum(L.layer.size(), -1);
        for (std::size_t c = 0; c < L.layer.size(); ++c)
            if (L.layer[c] == p) {
                renum[c] = static_cast<int>(Q.gens.size());
                Q.gens.push_back(L.expanded.gens[c]);
            }
        for (const auto &v : L.gb) {
            if (L.layer[static_cast<std::size_t>(v.lead().comp)] != p) continue;
            Column c;
            for (const auto &[t, k] : v.terms)
                if (L.layer[static_cast<std::size_t>(t.comp)] == p)
                    add_to(c, renum[static_cast<std::size_t>(t.comp)], Poly::monomial(t.mon, k));
                else
                    require(L.layer[static_cast<std::size_t>(t.comp)] > p, ErrorKind::internal,
                            "Gröbner element reaches a lower filtration layer");
            Q.relations.push_back(std::move(c));
        }
        out.quotients.push_back(std::move(Q));
    }
    return out;
}

// Sum over the filtration quotients of their Hilbert polynomials, each read off
// the Hilbert series of its initial module.
inline PolyPair super_hilbert_polynomial(const BModulePresentation &P)
{
    PolyPair total;
    const int m = P.m();
    for (const auto &Q : total_filtration(P).quotients) {
        std::vector<std::vector<Monomial>> initial(Q.gens.size());
        for (const auto &c : Q.relations) {
            ModVec v = ModVec::from_column(c, ModuleOrder::pot(Q.nvars()));
            initial[static_cast<std::size_t>(v.lead().comp)].push_back(v.lead().mon);
        }
        for (std::size_t i = 0; i < Q.gens.size(); ++i) {
            auto num = monomial_hilbert_numerator(initial[i]);
            for (std::size_t k = 0; k < num.size(); ++k)
                if (num[k])
                    total[Q.gens[i].parity] +=
                        Rational(static_cast<long>(num[k])) * binomial_poly(m, Q.gens[i].degree + static_cast<int>(k));
        }
    }
    return total;
}

inline std::ostream &operator<<(std::ostream &os, const DimPair &d) { return os << d.to_string(); }
inline std::ostream &operator<<(std::ostream &os, const UPoly &p) { return os << p.to_string(); }
inline std::ostream &operator<<(std::ostream &os, const PolyPair &p)
{
    return os << "(" << p.plus.to_string() << ", " << p.minus.to_string() << ")";
}

// Relative dimension of the supergrassmannian of (p|q)-quotients of a rank
// (c+p | d+q) bundle.
inline DimPair supergrass_dim(int c, int d, int p, int q)
{
    require(c >= 0 && d >= 0 && p >= 0 && q >= 0, ErrorKind::precondition, "supergrassmannian ranks must be >= 0");
    return {std::int64_t{c} * p + std::int64_t{d} * q, std::int64_t{c} * q + std::int64_t{d} * p};
}

inline DimPair flag_fibre_dim(int a, int b)
{
    require(a >= 0 && b >= 0, ErrorKind::precondition, "flag ranks must be >= 0");
    return {0, std::int64_t{a} * b};
}

} // namespace supergeom
