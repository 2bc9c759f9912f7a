#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "error.hpp"

namespace supergeom {

inline constexpr int kMaxEvenVars = 8;

// Exponent vector over at most kMaxEvenVars commuting variables. Unused
// slots stay zero, so the number of variables is carried by context.
class Monomial {
public:
    using Exponent = std::uint16_t;

    Monomial() { exps_.fill(0); }

    static Monomial variable(int i, int power = 1)
    {
        Monomial m;
        m.set(i, power);
        return m;
    }

    int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }

    void set(int i, int e)
    {
        require(i >= 0 && i < kMaxEvenVars, ErrorKind::limit_exceeded, "too many even variables");
        require(e >= 0 && e <= 0xffff, ErrorKind::limit_exceeded, "exponent out of range");
        exps_[static_cast<std::size_t>(i)] = static_cast<Exponent>(e);
    }

    int degree() const
    {
        int d = 0;
        for (auto e : exps_) d += e;
        return d;
    }

    bool is_one() const
    {
        return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
    }

    Monomial operator*(const Monomial &o) const
    {
        Monomial r;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            unsigned s = unsigned(exps_[i]) + o.exps_[i];
            require(s <= 0xffff, ErrorKind::limit_exceeded, "exponent overflow");
            r.exps_[i] = static_cast<Exponent>(s);
        }
        return r;
    }

    bool divides(const Monomial &o) const
    {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > o.exps_[i]) return false;
        return true;
    }

    // o / *this; caller guarantees divisibility.
    Monomial quotient_of(const Monomial &o) const
    {
        Monomial r;
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = static_cast<Exponent>(o.exps_[i] - exps_[i]);
        return r;
    }

    Monomial lcm(const Monomial &o) const
    {
        Monomial r;
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], o.exps_[i]);
        return r;
    }

    Monomial gcd(const Monomial &o) const
    {
        Monomial r;
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::min(exps_[i], o.exps_[i]);
        return r;
    }

    bool coprime(const Monomial &o) const
    {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] && o.exps_[i]) return false;
        return true;
    }

    Monomial swapped(int i, int j) const
    {
        Monomial r = *this;
        std::swap(r.exps_[static_cast<std::size_t>(i)], r.exps_[static_cast<std::size_t>(j)]);
        return r;
    }

    // Plain lexicographic comparison on the raw array; used as a canonical
    // container order, not as a term order.
    auto operator<=>(const Monomial &) const = default;
    bool operator==(const Monomial &) const = default;

    std::size_t hash() const
    {
        std::size_t h = 1469598103934665603ull;
        for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
        return h;
    }

    // x0^2*x1, or "1".
    std::string to_string(const std::string &prefix = "x", int first_index = 0) const
    {
        std::string s;
        for (int i = 0; i < kMaxEvenVars; ++i) {
            int e = (*this)[i];
            if (!e) continue;
            if (!s.empty()) s += '*';
            s += prefix + std::to_string(i + first_index);
            if (e > 1) s += '^' + std::to_string(e);
        }
        return s.empty() ? "1" : s;
    }

private:
    std::array<Exponent, kMaxEvenVars> exps_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const { return m.hash(); }
};

enum class OrderKind { degrevlex, lex };

// Term order on monomials in nvars variables, x0 > x1 > ... > x_{nvars-1}.
struct MonomialOrder {
    OrderKind kind = OrderKind::degrevlex;
    int nvars = 0;

    // Negative, zero or positive as a is smaller, equal or greater than b.
    int compare(const Monomial &a, const Monomial &b) const
    {
        if (kind == OrderKind::lex) {
            for (int i = 0; i < nvars; ++i)
                if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
            return 0;
        }
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db ? 1 : -1;
        return revlex(a, b);
    }

    // Reverse lexicographic tie-break without the degree test: the monomial
    // with the smaller exponent in the last differing variable is greater.
    int revlex(const Monomial &a, const Monomial &b) const
    {
        for (int i = nvars - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        return 0;
    }
};

// Enumerate every monomial of total degree d in nvars variables, in
// lexicographic order (x0 highest first).
inline void for_each_monomial(int nvars, int d, const std::function<void(const Monomial &)> &fn)
{
    if (d < 0) return;
    if (nvars == 0) {
        if (d == 0) fn(Monomial{});
        return;
    }
    Monomial m;
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == nvars - 1) {
            m.set(var, left);
            fn(m);
            return;
        }
        for (int e = left; e >= 0; --e) {
            m.set(var, e);
            rec(var + 1, left - e);
        }
        m.set(var, 0);
    };
    rec(0, d);
}

inline std::int64_t count_monomials(int nvars, int d)
{
    if (d < 0) return 0;
    if (nvars == 0) return d == 0 ? 1 : 0;
    // C(d + nvars - 1, nvars - 1)
    std::int64_t r = 1;
    for (int i = 1; i <= nvars - 1; ++i) r = r * (d + i) / i;
    return r;
}

} // namespace supergeom
