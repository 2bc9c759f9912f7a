#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace supergeom {

// Element of the even polynomial ring S = k[x_0..x_m].
class Poly {
public:
    using TermMap = std::map<Monomial, Rational>;

    Poly() = default;

    static Poly constant(const Rational &c)
    {
        Poly p;
        p.add_term(Monomial{}, c);
        return p;
    }

    static Poly monomial(const Monomial &m, const Rational &c = 1)
    {
        Poly p;
        p.add_term(m, c);
        return p;
    }

    static Poly variable(int i) { return monomial(Monomial::variable(i)); }

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial &m, const Rational &c)
    {
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Monomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coefficient(Monomial{}); }

    Poly &operator+=(const Poly &o)
    {
        for (const auto &[m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly &operator-=(const Poly &o)
    {
        for (const auto &[m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    Poly operator-() const { return Rational(-1) * *this; }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        Poly r;
        for (const auto &[ma, ca] : a.terms_)
            for (const auto &[mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend Poly operator*(const Rational &q, const Poly &a)
    {
        Poly r;
        if (sgn(q) == 0) return r;
        for (const auto &[m, c] : a.terms_) r.terms_.emplace(m, q * c);
        return r;
    }

    Poly times_monomial(const Monomial &mu, const Rational &c = 1) const
    {
        Poly r;
        if (sgn(c) == 0) return r;
        for (const auto &[m, k] : terms_) r.terms_.emplace(m * mu, c * k);
        return r;
    }

    bool operator==(const Poly &) const = default;

    // Common degree of all terms; nullopt when mixed, 0 for the zero polynomial.
    std::optional<int> degree() const
    {
        if (terms_.empty()) return 0;
        int d = terms_.begin()->first.degree();
        for (const auto &[m, c] : terms_)
            if (m.degree() != d) return std::nullopt;
        return d;
    }

    Poly swapped(int i, int j) const
    {
        Poly r;
        for (const auto &[m, c] : terms_) r.terms_.emplace(m.swapped(i, j), c);
        return r;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[m, c] = *it;
            Rational a = abs(c);
            s += s.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
            if (m.is_one())
                s += a.get_str();
            else if (a == 1)
                s += m.to_string();
            else
                s += a.get_str() + "*" + m.to_string();
        }
        return s;
    }

private:
    TermMap terms_;
};

} // namespace supergeom
