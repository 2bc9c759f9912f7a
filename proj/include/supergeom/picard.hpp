#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "grassmann.hpp"
#include "groebner.hpp"
#include "supermatrix.hpp"

namespace supergeom {

namespace detail {

// Σ c_k y^k for k ≥ 1, stopping once y^k vanishes.
inline GrassmannElement nilpotent_series(const GrassmannElement &y, const std::function<Rational(int)> &coeff,
                                         bool with_constant)
{
    GrassmannElement sum = y.constant_like(with_constant ? coeff(0) : Rational(0));
    GrassmannElement power = y.constant_like(1);
    for (int k = 1;; ++k) {
        power = power * y;
        if (power.is_zero()) return sum;
        require(k <= 64, ErrorKind::limit_exceeded, "nilpotency order too large");
        sum += coeff(k) * power;
    }
}

inline void require_even(const GrassmannElement &x, const char *what)
{
    auto p = x.parity();
    require(p && *p == Parity::even, ErrorKind::parity, std::string(what) + " must be even");
}

// Least k with y^(k+1) = 0.
inline int nilpotency_order(const GrassmannElement &y)
{
    GrassmannElement power = y;
    int k = 0;
    while (!power.is_zero()) {
        power = power * y;
        ++k;
    }
    return k;
}

} // namespace detail

inline GrassmannElement exp_even_nilpotent(const GrassmannElement &x)
{
    detail::require_even(x, "exponent");
    require(x.is_nilpotent(), ErrorKind::precondition, "exponential needs a nilpotent element");
    return detail::nilpotent_series(x, [](int k) -> Rational { return 1 / factorial_q(k); }, true);
}

// Inverse of exp on units with scalar part 1.
inline GrassmannElement log_even_unit(const GrassmannElement &u)
{
    detail::require_even(u, "logarithm argument");
    require(u.scalar_part() == 1, ErrorKind::precondition, "logarithm needs scalar part 1");
    GrassmannElement y = u - u.constant_like(1);
    return detail::nilpotent_series(y, [](int k) -> Rational { return Rational(k % 2 ? 1 : -1, 1) / k; }, false);
}

inline GrassmannElement cosh_nilpotent(const GrassmannElement &x)
{
    return detail::nilpotent_series(x, [](int k) -> Rational { return k % 2 ? Rational(0) : 1 / factorial_q(k); }, true);
}

inline GrassmannElement atanh_nilpotent(const GrassmannElement &t)
{
    return detail::nilpotent_series(t, [](int k) -> Rational { return k % 2 ? Rational(1) / k : Rational(0); }, false);
}

struct FactoredUnit {
    GrassmannElement x0; // even⊗even block, invertible
    GrassmannElement x1; // odd⊗odd block, nilpotent

    GrassmannElement combine() const { return x0 * exp_even_nilpotent(x1); }
};

// f = f0 + f1 with f0 in the even⊗even and f1 in the odd⊗odd block;
// x1 = atanh(f0⁻¹ f1) and x0 = f0 / cosh(x1), so f = x0 exp(x1).
inline FactoredUnit even_unit_factorize(const GrassmannElement &f, int N)
{
    detail::require_even(f, "unit");
    require(sgn(f.scalar_part()) != 0, ErrorKind::precondition, "element is not invertible: scalar part is zero");
    GrassmannElement nil = f - f.constant_like(f.scalar_part());
    require(detail::nilpotency_order(nil) <= N, ErrorKind::precondition,
            "nilpotency order exceeds N = " + std::to_string(N));
    GrassmannElement f0 = f.geometric_block(Parity::even), f1 = f.geometric_block(Parity::odd);
    GrassmannElement x1 = atanh_nilpotent(invert_element(f0) * f1);
    GrassmannElement x0 = f0 * invert_element(cosh_nilpotent(x1));
    FactoredUnit out{x0, x1};
    require(out.combine() == f, ErrorKind::internal, "factorization does not reproduce the unit");
    return out;
}

// Odd dimension of SPic₊ for split data O₋ = ⊕ O_{P^m}(d_j): Σ h¹(P^m, O(d_j)).
inline std::int64_t picard_odd_dimension(int m, const std::vector<int> &twists)
{
    require(m >= 1, ErrorKind::precondition, "Picard odd dimension needs m >= 1");
    std::int64_t n = 0;
    for (int d : twists) n += line_bundle_cohomology_bott(m, 0, d, 1).even;
    return n;
}

// Pic = Pic₊ ⊔ Π·Pic₊ for a description of Pic₊.
inline std::string pic_parity_structure(const std::string &plus)
{
    std::string g = plus;
    auto eq = g.find('=');
    if (eq != std::string::npos) g = g.substr(eq + 1);
    auto first = g.find_first_not_of(' ');
    auto last = g.find_last_not_of(' ');
    g = first == std::string::npos ? "" : g.substr(first, last - first + 1);
    if (g.empty() || g == "0" || g == "1" || g == "pt" || g == "trivial") return "Pic = pt ⊔ Π·pt (two points)";
    bool compound = g.find_first_of(" ×x*") != std::string::npos && !(g.front() == '(' && g.back() == ')');
    if (compound) g = "(" + g + ")";
    return "Pic = " + g + " ⊔ Π·" + g;
}

// SPic₊ for P^m with split odd part: Z × A^{0,n}.
inline std::string picard_plus_description(int m, const std::vector<int> &twists)
{
    std::int64_t n = picard_odd_dimension(m, twists);
    return n == 0 ? "Z" : "Z × A^{0," + std::to_string(n) + "}";
}

// Ideals in k[u, v] are Polys in two variables, u = x0 and v = x1.
struct NestedCheck {
    bool contained = false;
    int p = 0; // colength of I0
    int q = 0; // colength of I1
    std::optional<Poly> witness; // generator of I0 outside I1
};

namespace detail {

inline std::vector<ModVec> ideal_basis(const std::vector<Poly> &gens, const ModuleOrder &ord)
{
    std::vector<Column> cols;
    for (const auto &g : gens) {
        for (const auto &[m, c] : g.terms())
            for (int i = 2; i < kMaxEvenVars; ++i)
                require(m[i] == 0, ErrorKind::precondition, "nested 0-cycles live in k[u, v]; found " + g.to_string());
        if (!g.is_zero()) cols.push_back({{0, g}});
    }
    return groebner_basis(cols, ord);
}

// Number of standard monomials, or an error when it is infinite.
inline int colength(const std::vector<ModVec> &gb, const std::string &name)
{
    int a = -1, b = -1;
    for (const auto &g : gb) {
        const Monomial &m = g.lead().mon;
        if (m[1] == 0 && (a < 0 || m[0] < a)) a = m[0];
        if (m[0] == 0 && (b < 0 || m[1] < b)) b = m[1];
    }
    require(a >= 0 && b >= 0, ErrorKind::precondition, "ideal " + name + " has infinite colength");
    int count = 0;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            Monomial mu;
            mu.set(0, i);
            mu.set(1, j);
            bool standard = std::none_of(gb.begin(), gb.end(), [&](const ModVec &g) { return g.lead().mon.divides(mu); });
            count += standard;
        }
    return count;
}

} // namespace detail

inline NestedCheck nested_zero_cycle_check(const std::vector<Poly> &I0, const std::vector<Poly> &I1)
{
    ModuleOrder ord = ModuleOrder::pot(2);
    auto g0 = detail::ideal_basis(I0, ord), g1 = detail::ideal_basis(I1, ord);
    NestedCheck out;
    out.p = detail::colength(g0, "I0");
    out.q = detail::colength(g1, "I1");
    for (const auto &f : I0) {
        if (f.is_zero()) continue;
        if (!normal_form(Column{{0, f}}, g1, ord).empty()) {
            out.witness = f;
            return out;
        }
    }
    out.contained = true;
    require(out.p >= out.q, ErrorKind::internal, "nested ideals with p < q");
    return out;
}

// Monomial ideal of k[u, v] whose standard monomials form the Young diagram
// λ (row j holds u^0..u^{λ_j - 1} times v^j).
inline std::vector<Poly> partition_ideal(const std::vector<int> &lambda)
{
    std::vector<Poly> gens;
    const int k = static_cast<int>(lambda.size());
    for (int j = 0; j < k; ++j) {
        Monomial m;
        m.set(0, lambda[static_cast<std::size_t>(j)]);
        m.set(1, j);
        gens.push_back(Poly::monomial(m, 1));
    }
    Monomial top;
    top.set(1, k);
    gens.push_back(Poly::monomial(top, 1));
    return gens;
}

inline std::vector<std::vector<int>> partitions(int n, int max_part = -1)
{
    if (max_part < 0) max_part = n;
    if (n == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (int first = std::min(n, max_part); first >= 1; --first)
        for (auto rest : partitions(n - first, first)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    return out;
}

// Pairs of monomial ideals I0 ⊆ I1 of colengths (p, q), by ideal membership.
inline std::int64_t nested_pair_count(int p, int q, bool monomial_only = true)
{
    require(monomial_only, ErrorKind::precondition, "only monomial ideals are enumerated");
    require(p >= 0 && q >= 0, ErrorKind::precondition, "colengths must be nonnegative");
    require(p <= 6 && q <= 6, ErrorKind::limit_exceeded, "nested pair counts are enumerated for colengths <= 6");
    std::int64_t count = 0;
    for (const auto &l0 : partitions(p)) {
        auto I0 = partition_ideal(l0);
        for (const auto &l1 : partitions(q)) {
            auto I1 = partition_ideal(l1);
            bool contained = std::all_of(I0.begin(), I0.end(), [&](const Poly &f) {
                const Monomial &m = f.terms().begin()->first;
                return std::any_of(I1.begin(), I1.end(),
                                   [&](const Poly &g) { return g.terms().begin()->first.divides(m); });
            });
            count += contained;
        }
    }
    return count;
}

} // namespace supergeom
