#pragma once

#include <algorithm>
#include <bit>
#include <utility>
#include <vector>

#include "module.hpp"
#include "superpoly.hpp"

namespace supergeom {

struct ThetaBasisElement {
    OddMask subset = 0;
    int degree = 0;
    Parity parity = Parity::even;
};

// The 2^n square-free θ-monomials ordered by size, then lexicographically by
// index list.
inline std::vector<ThetaBasisElement> theta_basis(int m, int n)
{
    require(m >= 0 && n >= 0, ErrorKind::precondition, "theta_basis needs m, n >= 0");
    require(n <= 16, ErrorKind::limit_exceeded, "theta basis limited to 16 odd variables");
    std::vector<OddMask> subsets;
    for (OddMask s = 0; s < (OddMask{1} << n); ++s) subsets.push_back(s);
    // Bit j-1 stands for θ_j; reversing the bits makes integer order agree with
    // lexicographic order of the ascending index lists within a size class.
    auto lex_key = [n](OddMask s) {
        OddMask r = 0;
        for (int j = 0; j < n; ++j)
            if (s & (OddMask{1} << j)) r |= OddMask{1} << (n - 1 - j);
        return r;
    };
    std::stable_sort(subsets.begin(), subsets.end(), [&](OddMask a, OddMask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return lex_key(a) > lex_key(b);
    });
    std::vector<ThetaBasisElement> out;
    for (OddMask s : subsets) {
        int p = std::popcount(s);
        out.push_back({s, p, parity_of(p)});
    }
    return out;
}

// A finitely presented bigraded B(m,n)-module: free generators with
// bidegrees, relations given as columns of SuperPolys (one entry per generator).
struct BModulePresentation {
    RingSignature sig;
    std::vector<BiDegree> gens;
    std::vector<std::vector<SuperPoly>> relations;

    int m() const { return sig.even - 1; }
    int n() const { return sig.odd; }

    static BModulePresentation structure_sheaf(int m, int n)
    {
        return {RingSignature::projective(m, n), {BiDegree{}}, {}};
    }

    // B / (f_1, ..., f_k)
    static BModulePresentation quotient(RingSignature sig, const std::vector<SuperPoly> &ideal)
    {
        BModulePresentation P{sig, {BiDegree{}}, {}};
        for (const auto &f : ideal) P.relations.push_back({f});
        return P;
    }

    // Bidegree of a relation column; throws unless it is bihomogeneous.
    std::optional<BiDegree> relation_degree(const std::vector<SuperPoly> &rel) const
    {
        require(rel.size() == gens.size(), ErrorKind::precondition, "relation length differs from generator count");
        std::optional<BiDegree> deg;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const auto &f = rel[g];
            require(f.signature() == sig, ErrorKind::ring_mismatch, "relation lives in a different ring");
            if (f.is_zero()) continue;
            auto z = f.z_degree();
            auto p = f.parity();
            require(z.has_value(), ErrorKind::not_homogeneous, f.to_string() + " is not homogeneous");
            require(p.has_value(), ErrorKind::not_homogeneous, f.to_string() + " is not parity-homogeneous");
            BiDegree here = BiDegree{*z, *p} + gens[g];
            if (!deg)
                deg = here;
            else
                require(*deg == here, ErrorKind::not_homogeneous, "relation is not bihomogeneous");
        }
        return deg;
    }

    void validate() const
    {
        require(sig.even >= 1, ErrorKind::precondition, "ring needs at least one even variable");
        for (const auto &r : relations) (void)relation_degree(r);
    }
};

// S-generator (α, g) of the expansion sits at index α_index · #gens + g.
inline GradedSModule expand_module(const BModulePresentation &P)
{
    P.validate();
    const auto basis = theta_basis(P.m(), P.n());
    const int G = static_cast<int>(P.gens.size());
    std::vector<int> position(std::size_t{1} << P.n());
    for (std::size_t a = 0; a < basis.size(); ++a) position[basis[a].subset] = static_cast<int>(a);

    GradedSModule M = GradedSModule::free(P.m(), {});
    for (const auto &b : basis)
        for (const auto &g : P.gens) M.gens.push_back({g.z + b.degree, g.parity + b.parity});

    for (const auto &rel : P.relations) {
        if (!P.relation_degree(rel)) continue;
        for (const auto &beta : basis) {
            SuperPoly tb = SuperPoly::monomial(P.sig, SuperMonomial{Monomial{}, beta.subset});
            Column col;
            for (int g = 0; g < G; ++g) {
                SuperPoly prod = tb * rel[static_cast<std::size_t>(g)];
                for (const auto &[mono, c] : prod.terms())
                    add_to(col, position[mono.odd] * G + g, Poly::monomial(mono.even, c));
            }
            if (!col.empty()) M.relations.push_back(std::move(col));
        }
    }
    return M;
}

// Restriction of a module to the generators of one parity. Relations never mix
// parities, so M is the direct sum of the two pieces.
inline GradedSModule parity_part(const GradedSModule &M, Parity p)
{
    M.validate();
    GradedSModule out = GradedSModule::free(M.m, {});
    std::vector<int> renum(M.gens.size(), -1);
    for (std::size_t i = 0; i < M.gens.size(); ++i)
        if (M.gens[i].parity == p) {
            renum[i] = static_cast<int>(out.gens.size());
            out.gens.push_back(M.gens[i]);
        }
    for (const auto &c : M.relations) {
        if (c.empty() || M.gens[static_cast<std::size_t>(c.begin()->first)].parity != p) continue;
        Column nc;
        for (const auto &[i, f] : c) nc.emplace(renum[static_cast<std::size_t>(i)], f);
        out.relations.push_back(std::move(nc));
    }
    return out;
}

inline std::pair<GradedSModule, GradedSModule> parity_components(const GradedSModule &M)
{
    return {parity_part(M, Parity::even), parity_part(M, Parity::odd)};
}

} // namespace supergeom
