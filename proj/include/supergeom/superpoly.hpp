#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "monomial.hpp"
#include "rational.hpp"

namespace supergeom {

inline constexpr int kMaxOddVars = 32;

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) noexcept
{
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

constexpr Parity parity_of(long k) noexcept { return (k % 2 == 0) ? Parity::even : Parity::odd; }

inline const char *to_string(Parity p) noexcept { return p == Parity::even ? "even" : "odd"; }

struct BiDegree {
    int z = 0;
    Parity parity = Parity::even;

    BiDegree operator+(const BiDegree &o) const { return {z + o.z, parity + o.parity}; }
    bool operator==(const BiDegree &) const = default;
};

// Variables of k[x_0..x_{even-1}, θ_1..θ_odd]. For the projective superspace
// P^{m,n} this is even = m+1, odd = n.
struct RingSignature {
    int even = 0;
    int odd = 0;

    static RingSignature projective(int m, int n)
    {
        require(m >= 0 && n >= 0, ErrorKind::precondition, "projective superspace needs m, n >= 0");
        return checked(m + 1, n);
    }

    static RingSignature checked(int even, int odd)
    {
        require(even >= 0 && odd >= 0, ErrorKind::precondition, "negative variable count");
        require(even <= kMaxEvenVars, ErrorKind::limit_exceeded,
                "at most " + std::to_string(kMaxEvenVars) + " even variables are supported");
        require(odd <= kMaxOddVars, ErrorKind::limit_exceeded,
                "at most " + std::to_string(kMaxOddVars) + " odd variables are supported");
        return {even, odd};
    }

    bool operator==(const RingSignature &) const = default;
};

struct Variable {
    bool odd = false;
    int index = 0; // x_index (0-based) or θ_index (1-based)

    static Variable x(int i) { return {false, i}; }
    static Variable theta(int j) { return {true, j}; }

    Parity parity() const { return odd ? Parity::odd : Parity::even; }
    std::string to_string() const { return (odd ? "th" : "x") + std::to_string(index); }
};

using OddMask = std::uint32_t;

inline OddMask odd_bit(int j) { return OddMask{1} << (j - 1); }

// Sign of θ_a · θ_b rewritten in ascending order, or 0 when the supports meet.
inline int odd_product_sign(OddMask a, OddMask b)
{
    if (a & b) return 0;
    int transpositions = 0;
    for (OddMask rest = b; rest; rest &= rest - 1) {
        int j = std::countr_zero(rest);
        transpositions += std::popcount(a >> (j + 1));
    }
    return (transpositions % 2) ? -1 : 1;
}

// x^a θ_{i1}...θ_{ip} with i1 < ... < ip; the odd support is a bitmask, so the
// canonical ascending form is structural.
struct SuperMonomial {
    Monomial even;
    OddMask odd = 0;

    int odd_count() const { return std::popcount(odd); }
    int z_degree() const { return even.degree() + odd_count(); }
    Parity parity() const { return parity_of(odd_count()); }

    auto operator<=>(const SuperMonomial &) const = default;
    bool operator==(const SuperMonomial &) const = default;

    std::string to_string() const
    {
        std::string s = even.is_one() ? "" : even.to_string();
        for (int j = 1; j <= kMaxOddVars; ++j) {
            if (!(odd & odd_bit(j))) continue;
            if (!s.empty()) s += '*';
            s += "th" + std::to_string(j);
        }
        return s.empty() ? "1" : s;
    }
};

// Sparse element of B = k[x..|θ..]; zero coefficients are never stored.
class SuperPoly {
public:
    using TermMap = std::map<SuperMonomial, Rational>;

    SuperPoly() = default;
    explicit SuperPoly(RingSignature sig) : sig_(sig) {}

    static SuperPoly constant(RingSignature sig, const Rational &c)
    {
        SuperPoly p(sig);
        p.add_term(SuperMonomial{}, c);
        return p;
    }

    static SuperPoly variable(RingSignature sig, Variable v)
    {
        check_variable(sig, v);
        SuperMonomial m;
        if (v.odd)
            m.odd = odd_bit(v.index);
        else
            m.even = Monomial::variable(v.index);
        SuperPoly p(sig);
        p.add_term(m, Rational(1));
        return p;
    }

    static SuperPoly monomial(RingSignature sig, const SuperMonomial &m, const Rational &c = 1)
    {
        SuperPoly p(sig);
        p.add_term(m, c);
        return p;
    }

    SuperPoly constant_like(const Rational &c) const { return constant(sig_, c); }

    const RingSignature &signature() const { return sig_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const SuperMonomial &m, const Rational &c)
    {
        if (is_zero_q(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_q(it->second)) terms_.erase(it);
        }
    }

    Rational coefficient(const SuperMonomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational scalar_part() const { return coefficient(SuperMonomial{}); }

    SuperPoly operator-() const
    {
        SuperPoly r = *this;
        for (auto &[m, c] : r.terms_) c = -c;
        return r;
    }

    SuperPoly &operator+=(const SuperPoly &o)
    {
        check_same_ring(o);
        for (const auto &[m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    SuperPoly &operator-=(const SuperPoly &o)
    {
        check_same_ring(o);
        for (const auto &[m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend SuperPoly operator+(SuperPoly a, const SuperPoly &b) { return a += b; }
    friend SuperPoly operator-(SuperPoly a, const SuperPoly &b) { return a -= b; }

    friend SuperPoly operator*(const SuperPoly &a, const SuperPoly &b)
    {
        a.check_same_ring(b);
        SuperPoly r(a.sig_);
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                int s = odd_product_sign(ma.odd, mb.odd);
                if (!s) continue;
                SuperMonomial m{ma.even * mb.even, ma.odd | mb.odd};
                r.add_term(m, s > 0 ? ca * cb : Rational(-(ca * cb)));
            }
        }
        return r;
    }

    friend SuperPoly operator*(const Rational &q, const SuperPoly &a)
    {
        SuperPoly r(a.sig_);
        if (is_zero_q(q)) return r;
        for (const auto &[m, c] : a.terms_) r.terms_.emplace(m, q * c);
        return r;
    }

    SuperPoly &operator*=(const SuperPoly &o) { return *this = *this * o; }

    bool operator==(const SuperPoly &o) const { return sig_ == o.sig_ && terms_ == o.terms_; }

    SuperPoly pow(int e) const
    {
        require(e >= 0, ErrorKind::precondition, "negative power");
        SuperPoly r = constant(sig_, 1);
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    // Left derivation. Even variables act classically; ∂/∂θ_j removes θ_j with
    // sign (-1)^(number of odd factors standing before it).
    SuperPoly partial(Variable v) const
    {
        check_variable(sig_, v);
        SuperPoly r(sig_);
        for (const auto &[m, c] : terms_) {
            if (v.odd) {
                OddMask bit = odd_bit(v.index);
                if (!(m.odd & bit)) continue;
                int before = std::popcount(m.odd & (bit - 1));
                SuperMonomial d{m.even, m.odd & ~bit};
                r.add_term(d, (before % 2) ? Rational(-c) : c);
            } else {
                int e = m.even[v.index];
                if (!e) continue;
                SuperMonomial d = m;
                d.even.set(v.index, e - 1);
                r.add_term(d, c * e);
            }
        }
        return r;
    }

    bool is_homogeneous() const { return z_degree().has_value(); }

    // Common Z-degree of all terms; nullopt if mixed. The zero element is
    // homogeneous of every degree and reports 0.
    std::optional<int> z_degree() const
    {
        if (terms_.empty()) return 0;
        int d = terms_.begin()->first.z_degree();
        for (const auto &[m, c] : terms_)
            if (m.z_degree() != d) return std::nullopt;
        return d;
    }

    std::optional<Parity> parity() const
    {
        if (terms_.empty()) return Parity::even;
        Parity p = terms_.begin()->first.parity();
        for (const auto &[m, c] : terms_)
            if (m.parity() != p) return std::nullopt;
        return p;
    }

    bool is_parity_homogeneous() const { return parity().has_value(); }

    // Terms free of odd variables (reduction modulo the odd-generated ideal).
    SuperPoly body() const
    {
        SuperPoly r(sig_);
        for (const auto &[m, c] : terms_)
            if (!m.odd) r.terms_.emplace(m, c);
        return r;
    }

    // Nilpotent exactly when the body vanishes.
    bool is_nilpotent() const
    {
        return std::none_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.first.odd == 0; });
    }

    // Value with θ = 0 and x_i = point[i].
    Rational evaluate_body(std::span<const Rational> point) const
    {
        require(static_cast<int>(point.size()) == sig_.even, ErrorKind::precondition,
                "point must give a value for every even variable");
        Rational total = 0;
        for (const auto &[m, c] : terms_) {
            if (m.odd) continue;
            Rational v = c;
            for (int i = 0; i < sig_.even; ++i)
                for (int e = 0; e < m.even[i]; ++e) v *= point[static_cast<std::size_t>(i)];
            total += v;
        }
        return total;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::vector<std::pair<SuperMonomial, Rational>> ts(terms_.begin(), terms_.end());
        std::stable_sort(ts.begin(), ts.end(), [](const auto &a, const auto &b) {
            int da = a.first.z_degree(), db = b.first.z_degree();
            if (da != db) return da > db;
            if (a.first.even != b.first.even) return a.first.even > b.first.even;
            return a.first.odd < b.first.odd;
        });
        std::string s;
        for (const auto &[m, c] : ts) {
            Rational a = abs(c);
            bool neg = sgn(c) < 0;
            if (s.empty())
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            bool unit = (a == 1);
            std::string ms = m.to_string();
            if (ms == "1")
                s += a.get_str();
            else if (unit)
                s += ms;
            else
                s += a.get_str() + "*" + ms;
        }
        return s;
    }

    static void check_variable(RingSignature sig, Variable v)
    {
        bool ok = v.odd ? (v.index >= 1 && v.index <= sig.odd) : (v.index >= 0 && v.index < sig.even);
        require(ok, ErrorKind::unknown_variable, "unknown variable " + v.to_string());
    }

private:
    static bool is_zero_q(const Rational &q) { return sgn(q) == 0; }

    void check_same_ring(const SuperPoly &o) const
    {
        require(sig_ == o.sig_, ErrorKind::ring_mismatch, "operands live in different rings");
    }

    RingSignature sig_;
    TermMap terms_;
};

// Every super-monomial of Z-degree d in the given ring.
inline std::vector<SuperMonomial> super_monomials_of_degree(RingSignature sig, int d)
{
    std::vector<SuperMonomial> out;
    if (d < 0) return out;
    for (OddMask mask = 0; mask < (OddMask{1} << sig.odd); ++mask) {
        int k = std::popcount(mask);
        if (k > d) continue;
        for_each_monomial(sig.even, d - k, [&](const Monomial &m) { out.push_back({m, mask}); });
    }
    return out;
}

} // namespace supergeom
