#pragma once

#include <bit>
#include <ostream>
#include <string>

#include "superpoly.hpp"

namespace supergeom {

enum class FactorTag { geometric, base };

// Finite Grassmann algebra on `size` odd generators, each tagged as coming
// from the geometric factor (odd functions on X) or the base factor (odd
// constants of the coefficient superring).
struct GrassmannAlgebra {
    int size = 0;
    OddMask geometric = 0;

    static GrassmannAlgebra untagged(int size) { return make(size, 0); }

    static GrassmannAlgebra make(int size, OddMask geometric)
    {
        require(size >= 0 && size <= kMaxOddVars, ErrorKind::limit_exceeded, "too many Grassmann generators");
        OddMask all = size == 32 ? ~OddMask{0} : ((OddMask{1} << size) - 1);
        require((geometric & ~all) == 0, ErrorKind::precondition, "tag mask names a missing generator");
        return {size, geometric};
    }

    // geometric generators first, then base generators.
    static GrassmannAlgebra split(int geometric_count, int base_count)
    {
        OddMask g = geometric_count == 0 ? 0 : ((OddMask{1} << geometric_count) - 1);
        return make(geometric_count + base_count, g);
    }

    FactorTag tag(int j) const { return (geometric & odd_bit(j)) ? FactorTag::geometric : FactorTag::base; }
    RingSignature signature() const { return RingSignature::checked(0, size); }

    bool operator==(const GrassmannAlgebra &) const = default;
};

class GrassmannElement {
public:
    GrassmannElement() = default;
    explicit GrassmannElement(GrassmannAlgebra alg) : alg_(alg), poly_(alg.signature()) {}
    GrassmannElement(GrassmannAlgebra alg, SuperPoly poly) : alg_(alg), poly_(std::move(poly))
    {
        require(poly_.signature() == alg_.signature(), ErrorKind::ring_mismatch,
                "polynomial does not live in this Grassmann algebra");
    }

    static GrassmannElement constant(GrassmannAlgebra alg, const Rational &c)
    {
        return {alg, SuperPoly::constant(alg.signature(), c)};
    }

    static GrassmannElement generator(GrassmannAlgebra alg, int j)
    {
        return {alg, SuperPoly::variable(alg.signature(), Variable::theta(j))};
    }

    static GrassmannElement monomial(GrassmannAlgebra alg, OddMask subset, const Rational &c = 1)
    {
        return {alg, SuperPoly::monomial(alg.signature(), SuperMonomial{Monomial{}, subset}, c)};
    }

    const GrassmannAlgebra &algebra() const { return alg_; }
    const SuperPoly &poly() const { return poly_; }

    GrassmannElement constant_like(const Rational &c) const { return constant(alg_, c); }

    bool is_zero() const { return poly_.is_zero(); }
    Rational scalar_part() const { return poly_.scalar_part(); }
    bool is_nilpotent() const { return sgn(scalar_part()) == 0; }
    std::optional<Parity> parity() const { return poly_.parity(); }

    Rational coefficient(OddMask subset) const { return poly_.coefficient(SuperMonomial{Monomial{}, subset}); }

    int geometric_count(OddMask subset) const { return std::popcount(subset & alg_.geometric); }

    // Terms whose number of geometric generators has the given parity. For an
    // even element this is the (even⊗even) / (odd⊗odd) block decomposition.
    GrassmannElement geometric_block(Parity p) const
    {
        GrassmannElement r(alg_);
        for (const auto &[m, c] : poly_.terms())
            if (parity_of(geometric_count(m.odd)) == p) r.poly_.add_term(m, c);
        return r;
    }

    GrassmannElement operator-() const { return {alg_, -poly_}; }
    friend GrassmannElement operator+(const GrassmannElement &a, const GrassmannElement &b)
    {
        a.check(b);
        return {a.alg_, a.poly_ + b.poly_};
    }
    friend GrassmannElement operator-(const GrassmannElement &a, const GrassmannElement &b)
    {
        a.check(b);
        return {a.alg_, a.poly_ - b.poly_};
    }
    friend GrassmannElement operator*(const GrassmannElement &a, const GrassmannElement &b)
    {
        a.check(b);
        return {a.alg_, a.poly_ * b.poly_};
    }
    friend GrassmannElement operator*(const Rational &q, const GrassmannElement &a) { return {a.alg_, q * a.poly_}; }

    GrassmannElement &operator+=(const GrassmannElement &o) { return *this = *this + o; }
    GrassmannElement &operator-=(const GrassmannElement &o) { return *this = *this - o; }
    GrassmannElement &operator*=(const GrassmannElement &o) { return *this = *this * o; }

    bool operator==(const GrassmannElement &o) const { return alg_ == o.alg_ && poly_ == o.poly_; }

    // Generators print as th<j> when geometric and eta<k> when base, with k
    // counted among base generators only.
    std::string to_string() const
    {
        if (poly_.is_zero()) return "0";
        std::string s;
        for (const auto &[m, c] : poly_.terms()) {
            Rational a = abs(c);
            s += s.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
            std::string ms;
            int geo = 0, base = 0;
            for (int j = 1; j <= alg_.size; ++j) {
                bool g = alg_.tag(j) == FactorTag::geometric;
                g ? ++geo : ++base;
                if (!(m.odd & odd_bit(j))) continue;
                if (!ms.empty()) ms += '*';
                ms += g ? "th" + std::to_string(geo) : "eta" + std::to_string(base);
            }
            if (ms.empty())
                s += a.get_str();
            else if (a == 1)
                s += ms;
            else
                s += a.get_str() + "*" + ms;
        }
        return s;
    }

private:
    void check(const GrassmannElement &o) const
    {
        require(alg_ == o.alg_, ErrorKind::ring_mismatch, "operands live in different Grassmann algebras");
    }

    GrassmannAlgebra alg_;
    SuperPoly poly_;
};

inline std::ostream &operator<<(std::ostream &os, const GrassmannElement &x) { return os << x.to_string(); }

} // namespace supergeom
