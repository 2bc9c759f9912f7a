#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "hilbert.hpp"
#include "linalg.hpp"
#include "supermatrix.hpp"
#include "superpoly.hpp"

namespace supergeom {

// ξ^S t^α: ξ_k = a_k^Π are odd, t_j = η_j^Π are even. Bit k-1 of xi is ξ_k.
struct KoszulSymbol {
    OddMask xi = 0;
    std::vector<int> t;

    int hom() const { return std::popcount(xi) + std::accumulate(t.begin(), t.end(), 0); }
    Parity parity() const { return parity_of(std::popcount(xi)); }
    auto operator<=>(const KoszulSymbol &) const = default;
};

// Scalar combination of symbols, used for chain maps between Koszul complexes.
using SymbolChain = std::map<KoszulSymbol, Rational>;

// K = B[ξ_1..ξ_p, t_1..t_q] with d(ξ_i) = a_i, d(t_j) = η_j extended as an odd
// derivation. Elements are written e·b with the symbol on the left, so d is
// right B-linear: d(e·b) = d(e)·b.
class KoszulComplex {
public:
    KoszulComplex(RingSignature sig, std::vector<SuperPoly> evens, std::vector<SuperPoly> odds, int window)
        : sig_(sig), evens_(std::move(evens)), odds_(std::move(odds)), window_(window)
    {
        require(p() <= kMaxOddVars, ErrorKind::limit_exceeded, "too many even elements in the sequence");
        require(window_ >= p() + q(), ErrorKind::precondition,
                "Koszul window " + std::to_string(window_) + " is smaller than the sequence length " +
                    std::to_string(p() + q()));
        auto check = [&](const SuperPoly &f, Parity want, const char *what) {
            require(f.signature() == sig_, ErrorKind::ring_mismatch, "sequence element lives in another ring");
            auto par = f.parity();
            require(par && (f.is_zero() || *par == want), ErrorKind::parity,
                    std::string(what) + " sequence element " + f.to_string() + " is not " + to_string(want));
            auto d = f.z_degree();
            require(d.has_value(), ErrorKind::not_homogeneous, "sequence element " + f.to_string() + " is not homogeneous");
            return *d;
        };
        for (const auto &a : evens_) even_deg_.push_back(check(a, Parity::even, "even"));
        for (const auto &e : odds_) odd_deg_.push_back(check(e, Parity::odd, "odd"));
    }

    const RingSignature &signature() const { return sig_; }
    const std::vector<SuperPoly> &evens() const { return evens_; }
    const std::vector<SuperPoly> &odds() const { return odds_; }
    int p() const { return static_cast<int>(evens_.size()); }
    int q() const { return static_cast<int>(odds_.size()); }
    int window() const { return window_; }

    int max_generator_degree() const
    {
        int g = 0;
        for (int d : even_deg_) g = std::max(g, d);
        for (int d : odd_deg_) g = std::max(g, d);
        return g;
    }

    int degree(const KoszulSymbol &s) const
    {
        int d = 0;
        for (int k = 0; k < p(); ++k)
            if (s.xi & (OddMask{1} << k)) d += even_deg_[static_cast<std::size_t>(k)];
        for (int j = 0; j < q(); ++j) d += s.t[static_cast<std::size_t>(j)] * odd_deg_[static_cast<std::size_t>(j)];
        return d;
    }

    const std::vector<KoszulSymbol> &symbols(int i) const
    {
        require(i >= 0 && i <= window_, ErrorKind::limit_exceeded,
                "homological degree " + std::to_string(i) + " is outside the window 0.." + std::to_string(window_));
        auto it = symbols_.find(i);
        if (it != symbols_.end()) return it->second;
        std::vector<KoszulSymbol> out;
        for (OddMask xi = 0; xi < (OddMask{1} << p()); ++xi) {
            int rest = i - std::popcount(xi);
            if (rest < 0) continue;
            std::vector<int> t(static_cast<std::size_t>(q()), 0);
            enumerate_exponents(t, 0, rest, [&](const std::vector<int> &a) { out.push_back({xi, a}); });
        }
        return symbols_.emplace(i, std::move(out)).first->second;
    }

    // d(ξ_{s1}..ξ_{sk} t^α) = Σ_l (-1)^{l-1} ξ^{S∖s_l} t^α a_{s_l} + Σ_j ξ^S t^{α-e_j} (-1)^{|S|} α_j η_j.
    std::vector<std::pair<KoszulSymbol, SuperPoly>> boundary(const KoszulSymbol &s) const
    {
        std::vector<std::pair<KoszulSymbol, SuperPoly>> out;
        int l = 0;
        for (int k = 0; k < p(); ++k) {
            OddMask bit = OddMask{1} << k;
            if (!(s.xi & bit)) continue;
            const auto &a = evens_[static_cast<std::size_t>(k)];
            if (!a.is_zero()) out.push_back({KoszulSymbol{s.xi & ~bit, s.t}, l % 2 == 0 ? a : -a});
            ++l;
        }
        const int sign = std::popcount(s.xi) % 2 == 0 ? 1 : -1;
        for (int j = 0; j < q(); ++j) {
            int e = s.t[static_cast<std::size_t>(j)];
            const auto &eta = odds_[static_cast<std::size_t>(j)];
            if (e == 0 || eta.is_zero()) continue;
            KoszulSymbol t = s;
            --t.t[static_cast<std::size_t>(j)];
            out.push_back({t, Rational(sign * e) * eta});
        }
        return out;
    }

    // d∘d vanishes on every symbol of homological degree ≤ window.
    bool squares_to_zero() const
    {
        for (int i = 2; i <= window_; ++i)
            for (const auto &s : symbols(i)) {
                std::map<KoszulSymbol, SuperPoly> acc;
                for (const auto &[s1, c1] : boundary(s))
                    for (const auto &[s2, c2] : boundary(s1)) {
                        auto [it, inserted] = acc.emplace(s2, c2 * c1);
                        if (!inserted) it->second += c2 * c1;
                    }
                for (const auto &[sym, c] : acc)
                    if (!c.is_zero()) return false;
            }
        return true;
    }

    DimPair chain_dimension(int i, int d) const
    {
        check_internal(d);
        DimPair out;
        for (const auto &e : chain_piece(i, d).elems) ++(element_parity(e) == Parity::even ? out.even : out.odd);
        return out;
    }

    // H_i in internal degree d, needs i + 1 ≤ window.
    DimPair homology(int i, int d) const
    {
        require(i >= 0 && i + 1 <= window_, ErrorKind::limit_exceeded,
                "homology H_" + std::to_string(i) + " needs homological degree " + std::to_string(i + 1) +
                    " but the window is " + std::to_string(window_));
        check_internal(d);
        DimPair out;
        for (Parity par : {Parity::even, Parity::odd}) {
            const Piece &P = chain_piece(i, d);
            std::int64_t dim = std::count_if(P.elems.begin(), P.elems.end(),
                                             [&](const auto &e) { return element_parity(e) == par; });
            dim -= static_cast<std::int64_t>(chain_rank(i, d, par));
            dim -= static_cast<std::int64_t>(chain_rank(i + 1, d, par + Parity::odd));
            (par == Parity::even ? out.even : out.odd) = dim;
        }
        return out;
    }

    // Cohomology of Hom_B(K, B) in cohomological degree i and internal degree e:
    // a cochain of degree e sends a symbol s to B_{deg s + e}.
    DimPair dual_cohomology(int i, int e) const
    {
        require(i >= 0 && i + 1 <= window_, ErrorKind::limit_exceeded,
                "dual cohomology H^" + std::to_string(i) + " needs degree " + std::to_string(i + 1) +
                    " but the window is " + std::to_string(window_));
        DimPair out;
        for (Parity par : {Parity::even, Parity::odd}) {
            const Piece &P = cochain_piece(i, e);
            std::int64_t dim = std::count_if(P.elems.begin(), P.elems.end(),
                                             [&](const auto &x) { return element_parity(x) == par; });
            dim -= static_cast<std::int64_t>(cochain_rank(i, e, par));
            if (i > 0) dim -= static_cast<std::int64_t>(cochain_rank(i - 1, e, par + Parity::odd));
            (par == Parity::even ? out.even : out.odd) = dim;
        }
        return out;
    }

    // Coordinates in K*^i_e of the cochain with the given values on symbols.
    SparseVec cochain(int i, int e, const std::map<KoszulSymbol, SuperPoly> &values) const
    {
        const Piece &P = cochain_piece(i, e);
        SparseVec v;
        for (const auto &[s, f] : values)
            for (const auto &[mu, c] : f.terms()) v.emplace(P.index_of(s, mu), c);
        return v;
    }

    SparseVec coboundary(int i, int e, const SparseVec &v) const
    {
        const Piece &P = cochain_piece(i, e);
        SparseVec out;
        for (const auto &[k, c] : v) axpy(out, c, cochain_column(i, e, P.elems[k]));
        return out;
    }

    // Echelon form of the coboundaries landing in K*^i_e.
    Echelon coboundaries(int i, int e) const
    {
        Echelon E;
        if (i == 0) return E;
        const Piece &P = cochain_piece(i - 1, e);
        for (const auto &x : P.elems) E.add(cochain_column(i - 1, e, x));
        return E;
    }

private:
    using Element = std::pair<KoszulSymbol, SuperMonomial>;

    struct Piece {
        std::vector<Element> elems;
        std::map<Element, std::size_t> index;

        std::size_t index_of(const KoszulSymbol &s, const SuperMonomial &mu) const
        {
            auto it = index.find({s, mu});
            require(it != index.end(), ErrorKind::internal, "Koszul term outside its degree piece");
            return it->second;
        }
    };

    static Parity element_parity(const Element &e) { return e.first.parity() + e.second.parity(); }

    template <class Fn>
    static void enumerate_exponents(std::vector<int> &a, std::size_t j, int left, Fn &&fn)
    {
        if (j == a.size()) {
            if (left == 0) fn(a);
            return;
        }
        for (int e = left; e >= 0; --e) {
            a[j] = e;
            enumerate_exponents(a, j + 1, left - e, fn);
        }
        a[j] = 0;
    }

    void check_internal(int d) const
    {
        require(d <= window_ + max_generator_degree(), ErrorKind::limit_exceeded,
                "internal degree " + std::to_string(d) + " exceeds the Koszul window");
    }

    // Chain pieces pair s with B_{d - deg s}; cochain pieces with B_{e + deg s}.
    Piece build_piece(int i, int d, bool dual) const
    {
        Piece P;
        for (const auto &s : symbols(i))
            for (const auto &mu : super_monomials_of_degree(sig_, dual ? d + degree(s) : d - degree(s))) {
                P.index.emplace(Element{s, mu}, P.elems.size());
                P.elems.push_back({s, mu});
            }
        return P;
    }

    const Piece &chain_piece(int i, int d) const
    {
        auto key = std::make_pair(i, d);
        auto it = chain_.find(key);
        if (it != chain_.end()) return it->second;
        return chain_.emplace(key, build_piece(i, d, false)).first->second;
    }

    const Piece &cochain_piece(int i, int e) const
    {
        auto key = std::make_pair(i, e);
        auto it = cochain_.find(key);
        if (it != cochain_.end()) return it->second;
        return cochain_.emplace(key, build_piece(i, e, true)).first->second;
    }

    std::size_t chain_rank(int i, int d, Parity par) const
    {
        if (i == 0) return 0;
        auto key = std::make_tuple(i, d, par);
        auto it = chain_rank_.find(key);
        if (it != chain_rank_.end()) return it->second;
        const Piece &src = chain_piece(i, d);
        const Piece &dst = chain_piece(i - 1, d);
        Echelon E;
        for (const auto &x : src.elems) {
            if (element_parity(x) != par) continue;
            SparseVec col;
            SuperPoly mu = SuperPoly::monomial(sig_, x.second);
            for (const auto &[s, c] : boundary(x.first)) {
                SuperPoly term = c * mu;
                for (const auto &[m, v] : term.terms()) axpy(col, v, SparseVec{{dst.index_of(s, m), Rational(1)}});
            }
            E.add(std::move(col));
        }
        return chain_rank_.emplace(key, E.rank()).first->second;
    }

    // Symbols of degree i+1 whose boundary meets s, with the coefficient.
    const std::vector<std::pair<KoszulSymbol, SuperPoly>> &coboundary_terms(int i, const KoszulSymbol &s) const
    {
        auto it = cob_.find(i);
        if (it == cob_.end()) {
            std::map<KoszulSymbol, std::vector<std::pair<KoszulSymbol, SuperPoly>>> table;
            for (const auto &t : symbols(i + 1))
                for (const auto &[u, c] : boundary(t)) table[u].push_back({t, c});
            it = cob_.emplace(i, std::move(table)).first;
        }
        static const std::vector<std::pair<KoszulSymbol, SuperPoly>> none;
        auto jt = it->second.find(s);
        return jt == it->second.end() ? none : jt->second;
    }

    // δ of the cochain sending s to μ: (δφ)(t) = φ(d t) = Σ φ(s)·c.
    SparseVec cochain_column(int i, int e, const Element &x) const
    {
        const Piece &dst = cochain_piece(i + 1, e);
        SparseVec col;
        SuperPoly mu = SuperPoly::monomial(sig_, x.second);
        for (const auto &[t, c] : coboundary_terms(i, x.first)) {
            SuperPoly term = mu * c;
            for (const auto &[m, v] : term.terms()) axpy(col, v, SparseVec{{dst.index_of(t, m), Rational(1)}});
        }
        return col;
    }

    std::size_t cochain_rank(int i, int e, Parity par) const
    {
        auto key = std::make_tuple(i, e, par);
        auto it = cochain_rank_.find(key);
        if (it != cochain_rank_.end()) return it->second;
        const Piece &src = cochain_piece(i, e);
        Echelon E;
        for (const auto &x : src.elems)
            if (element_parity(x) == par) E.add(cochain_column(i, e, x));
        return cochain_rank_.emplace(key, E.rank()).first->second;
    }

    RingSignature sig_;
    std::vector<SuperPoly> evens_, odds_;
    std::vector<int> even_deg_, odd_deg_;
    int window_;
    mutable std::map<int, std::vector<KoszulSymbol>> symbols_;
    mutable std::map<std::pair<int, int>, Piece> chain_, cochain_;
    mutable std::map<std::tuple<int, int, Parity>, std::size_t> chain_rank_, cochain_rank_;
    mutable std::map<int, std::map<KoszulSymbol, std::vector<std::pair<KoszulSymbol, SuperPoly>>>> cob_;
};

inline KoszulComplex koszul_complex(RingSignature sig, std::vector<SuperPoly> evens, std::vector<SuperPoly> odds,
                                    int window)
{
    return KoszulComplex(sig, std::move(evens), std::move(odds), window);
}

// table[i][d] = dim H_i in internal degree d, for i ≤ max_hom, d ≤ max_internal.
inline std::vector<std::vector<DimPair>> koszul_homology(const KoszulComplex &K, int max_hom, int max_internal)
{
    std::vector<std::vector<DimPair>> table;
    for (int i = 0; i <= max_hom; ++i) {
        table.emplace_back();
        for (int d = 0; d <= max_internal; ++d) table.back().push_back(K.homology(i, d));
    }
    return table;
}

struct RegularSequenceVerdict {
    bool verified = false;
    int window = 0;
    // First nonvanishing H_i (i ≥ 1) and its internal degree when not verified.
    int hom = 0;
    int degree = 0;
};

inline RegularSequenceVerdict regular_sequence_check(const KoszulComplex &K)
{
    const int D = K.window();
    require(D >= K.p() + K.q() + 2, ErrorKind::precondition,
            "regular sequence check needs window >= " + std::to_string(K.p() + K.q() + 2));
    for (int i = 1; i + 1 <= D; ++i)
        for (int d = 0; d <= D; ++d)
            if (!K.homology(i, d).is_zero()) return {false, D, i, d};
    return {true, D, 0, 0};
}

inline RegularSequenceVerdict regular_sequence_check(RingSignature sig, std::vector<SuperPoly> evens,
                                                     std::vector<SuperPoly> odds, int window)
{
    return regular_sequence_check(KoszulComplex(sig, std::move(evens), std::move(odds), window));
}

struct DualConcentration {
    bool passed = false;
    int p = 0;
    // H^p_e ≅ (B/I)_{e + shift}, with parity flipped when the flag is set.
    int shift = 0;
    bool parity_flipped = false;
    // Every nonzero H^i_e found in the window.
    std::map<std::pair<int, int>, DimPair> nonzero;
    std::string failure;
};

inline DualConcentration dual_concentration_check(const KoszulComplex &K)
{
    auto verdict = regular_sequence_check(K);
    require(verdict.verified, ErrorKind::precondition,
            "sequence is not regular: H_" + std::to_string(verdict.hom) + " is nonzero in degree " +
                std::to_string(verdict.degree));
    DualConcentration out;
    out.p = K.p();
    int shift = 0;
    for (const auto &a : K.evens()) shift += *a.z_degree();
    for (const auto &h : K.odds()) shift -= *h.z_degree();
    out.shift = shift;

    const int D = K.window();
    std::optional<bool> flip;
    bool ok = true;
    for (int i = 0; i + 1 <= D && ok; ++i) {
        const auto &syms = K.symbols(i);
        if (syms.empty()) continue;
        int top = 0;
        for (const auto &s : syms) top = std::max(top, K.degree(s));
        for (int e = -top; e <= D - top && ok; ++e) {
            DimPair h = K.dual_cohomology(i, e);
            if (!h.is_zero()) out.nonzero[{i, e}] = h;
            if (i != out.p) {
                if (!h.is_zero()) {
                    ok = false;
                    out.failure = "H^" + std::to_string(i) + " is nonzero in degree " + std::to_string(e);
                }
                continue;
            }
            int d = e + shift;
            DimPair quotient = d >= 0 && d <= D ? K.homology(0, d) : DimPair{};
            bool same = h == quotient, flipped = h == quotient.parity_flipped();
            if (!flip && same != flipped) flip = flipped;
            bool good = flip ? (*flip ? flipped : same) : (same || flipped);
            if (!good) {
                ok = false;
                out.failure = "H^" + std::to_string(i) + " in degree " + std::to_string(e) + " is " + h.to_string() +
                              ", expected a rank-one copy of B/I";
            }
        }
    }
    bool found = std::any_of(out.nonzero.begin(), out.nonzero.end(), [&](const auto &kv) { return kv.first.first == out.p; });
    if (ok && !found) {
        ok = false;
        out.failure = "H^" + std::to_string(out.p) + " vanishes in the window";
    }
    out.parity_flipped = flip.value_or(false);
    out.passed = ok;
    return out;
}

namespace detail {

// Image of the symbol ξ'^S t'^α under ξ'_i ↦ Σ_k A0(k,i) ξ_k, t'_j ↦ Σ_l A1(l,j) t_l.
inline SymbolChain transform_symbol(const KoszulSymbol &s, const Matrix<Rational> &A0, const Matrix<Rational> &A1)
{
    const int p = static_cast<int>(A0.rows()), q = static_cast<int>(A1.rows());
    SymbolChain acc;
    acc[KoszulSymbol{0, std::vector<int>(static_cast<std::size_t>(q), 0)}] = 1;
    auto multiply = [&](const SymbolChain &lin) {
        SymbolChain next;
        for (const auto &[a, ca] : acc)
            for (const auto &[b, cb] : lin) {
                int sign = odd_product_sign(a.xi, b.xi);
                if (!sign) continue;
                KoszulSymbol c{a.xi | b.xi, a.t};
                for (int j = 0; j < q; ++j) c.t[static_cast<std::size_t>(j)] += b.t[static_cast<std::size_t>(j)];
                Rational v = sign * ca * cb;
                auto [it, inserted] = next.emplace(c, v);
                if (!inserted) {
                    it->second += v;
                    if (sgn(it->second) == 0) next.erase(it);
                }
            }
        acc = std::move(next);
    };
    for (int i = 0; i < p; ++i) {
        if (!(s.xi & (OddMask{1} << i))) continue;
        SymbolChain lin;
        for (int k = 0; k < p; ++k)
            if (sgn(A0(static_cast<std::size_t>(k), static_cast<std::size_t>(i))) != 0)
                lin[KoszulSymbol{OddMask{1} << k, std::vector<int>(static_cast<std::size_t>(q), 0)}] =
                    A0(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
        multiply(lin);
    }
    for (int j = 0; j < q; ++j)
        for (int r = 0; r < s.t[static_cast<std::size_t>(j)]; ++r) {
            SymbolChain lin;
            for (int l = 0; l < q; ++l) {
                std::vector<int> t(static_cast<std::size_t>(q), 0);
                t[static_cast<std::size_t>(l)] = 1;
                if (sgn(A1(static_cast<std::size_t>(l), static_cast<std::size_t>(j))) != 0)
                    lin[KoszulSymbol{0, t}] = A1(static_cast<std::size_t>(l), static_cast<std::size_t>(j));
            }
            multiply(lin);
        }
    return acc;
}

inline SuperPoly product_of(RingSignature sig, const std::vector<SuperPoly> &fs)
{
    SuperPoly r = SuperPoly::constant(sig, 1);
    for (const auto &f : fs) r *= f;
    return r;
}

} // namespace detail

// Scalar λ by which the chain map K(a·A0, η·A1) → K(a, η) acts on the
// canonical generators (ξ_1..ξ_p)^* ⊗ η_1..η_q of the top dual cohomology.
inline Rational berezinian_transform_scalar(RingSignature sig, const std::vector<SuperPoly> &evens,
                                            const std::vector<SuperPoly> &odds, const Matrix<Rational> &A0,
                                            const Matrix<Rational> &A1, int window)
{
    const std::size_t p = evens.size(), q = odds.size();
    require(A0.rows() == p && A0.cols() == p && A1.rows() == q && A1.cols() == q, ErrorKind::precondition,
            "change-of-basis blocks must be p x p and q x q");
    require(invert(A0).has_value() && invert(A1).has_value(), ErrorKind::precondition,
            "change-of-basis matrix is not invertible");
    std::vector<SuperPoly> evens2, odds2;
    for (std::size_t i = 0; i < p; ++i) {
        SuperPoly a(sig);
        for (std::size_t k = 0; k < p; ++k) a += A0(k, i) * evens[k];
        evens2.push_back(a);
    }
    for (std::size_t j = 0; j < q; ++j) {
        SuperPoly h(sig);
        for (std::size_t l = 0; l < q; ++l) h += A1(l, j) * odds[l];
        odds2.push_back(h);
    }
    KoszulComplex K(sig, evens, odds, window), K2(sig, evens2, odds2, window);
    auto verdict = regular_sequence_check(K);
    require(verdict.verified, ErrorKind::precondition, "sequence is not regular in the window");

    const int ip = static_cast<int>(p);
    KoszulSymbol top{static_cast<OddMask>((OddMask{1} << p) - 1), std::vector<int>(q, 0)};
    const int e0 = *detail::product_of(sig, odds).z_degree() - K.degree(top);
    const SuperPoly eta = detail::product_of(sig, odds), eta2 = detail::product_of(sig, odds2);

    SparseVec z = K.cochain(ip, e0, {{top, eta}});
    require(K.coboundary(ip, e0, z).empty(), ErrorKind::internal, "canonical dual class is not a cocycle");
    require(!K.coboundaries(ip, e0).contains(z), ErrorKind::internal, "canonical dual class is trivial");

    // Pull z back along the chain map: (φ*z)(s') = z(φ(s')).
    std::map<KoszulSymbol, SuperPoly> pulled;
    for (const auto &s : K2.symbols(ip)) {
        auto image = detail::transform_symbol(s, A0, A1);
        auto it = image.find(top);
        if (it != image.end()) pulled.emplace(s, it->second * eta);
    }
    SparseVec zphi = K2.cochain(ip, e0, pulled);
    SparseVec z2 = K2.cochain(ip, e0, {{top, eta2}});
    require(K2.coboundary(ip, e0, z2).empty() && K2.coboundary(ip, e0, zphi).empty(), ErrorKind::internal,
            "transformed dual class is not a cocycle");

    Echelon B2 = K2.coboundaries(ip, e0);
    SparseVec r2 = B2.reduce(z2), r = B2.reduce(zphi);
    require(!r2.empty(), ErrorKind::internal, "canonical dual class is trivial");
    Rational lambda = r.count(r2.begin()->first) ? r.at(r2.begin()->first) / r2.begin()->second : Rational(0);
    SparseVec diff = r;
    axpy(diff, -lambda, r2);
    require(diff.empty(), ErrorKind::internal, "dual classes are not proportional");
    return lambda;
}

// Chain-map property d∘φ = φ∘d' for the scalar change of basis, checked on
// every symbol of degree ≤ window.
inline bool transform_is_chain_map(const KoszulComplex &K, const KoszulComplex &K2, const Matrix<Rational> &A0,
                                   const Matrix<Rational> &A1)
{
    auto apply = [&](const KoszulComplex &C, const std::map<KoszulSymbol, SuperPoly> &v) {
        std::map<KoszulSymbol, SuperPoly> out;
        for (const auto &[s, c] : v)
            for (const auto &[u, b] : C.boundary(s)) {
                auto [it, inserted] = out.emplace(u, b * c);
                if (!inserted) it->second += b * c;
            }
        return out;
    };
    auto phi = [&](const std::map<KoszulSymbol, SuperPoly> &v) {
        std::map<KoszulSymbol, SuperPoly> out;
        for (const auto &[s, c] : v)
            for (const auto &[u, a] : detail::transform_symbol(s, A0, A1)) {
                auto [it, inserted] = out.emplace(u, a * c);
                if (!inserted) it->second += a * c;
            }
        return out;
    };
    auto same = [](std::map<KoszulSymbol, SuperPoly> a, std::map<KoszulSymbol, SuperPoly> b) {
        std::erase_if(a, [](const auto &kv) { return kv.second.is_zero(); });
        std::erase_if(b, [](const auto &kv) { return kv.second.is_zero(); });
        return a == b;
    };
    for (int i = 1; i <= K.window(); ++i)
        for (const auto &s : K2.symbols(i)) {
            std::map<KoszulSymbol, SuperPoly> v{{s, SuperPoly::constant(K.signature(), 1)}};
            if (!same(apply(K, phi(v)), phi(apply(K2, v)))) return false;
        }
    return true;
}

} // namespace supergeom
