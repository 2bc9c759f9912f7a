#pragma once

#include <span>
#include <vector>

#include "supermatrix.hpp"
#include "superpoly.hpp"

namespace supergeom {

// Standard smoothness at a point: with c even equations f_i and d odd
// equations φ_i, the Jacobians (∂f_i/∂x_j)_{i,j<c} and (∂φ_i/∂θ_j)_{i,j≤d},
// evaluated at the point with all θ = 0, must both be invertible over Q.
// Even variables are taken as x_0..x_{c-1}, odd ones as θ_1..θ_d.
inline bool standard_smooth_check(std::span<const SuperPoly> even_eqs, std::span<const SuperPoly> odd_eqs,
                                  std::span<const Rational> point)
{
    const std::size_t c = even_eqs.size(), d = odd_eqs.size();
    if (c + d == 0) return true;
    RingSignature sig = c ? even_eqs[0].signature() : odd_eqs[0].signature();
    require(static_cast<int>(c) <= sig.even && static_cast<int>(d) <= sig.odd, ErrorKind::precondition,
            "more equations than variables of the matching parity");
    for (const auto &f : even_eqs) {
        require(f.signature() == sig, ErrorKind::ring_mismatch, "equations live in different rings");
        auto par = f.parity();
        require(par && *par == Parity::even, ErrorKind::parity, "even equation " + f.to_string() + " is not even");
        require(sgn(f.evaluate_body(point)) == 0, ErrorKind::precondition,
                "point is not on the zero locus of " + f.to_string());
    }
    for (const auto &phi : odd_eqs) {
        require(phi.signature() == sig, ErrorKind::ring_mismatch, "equations live in different rings");
        auto par = phi.parity();
        require(par && *par == Parity::odd, ErrorKind::parity, "odd equation " + phi.to_string() + " is not odd");
        // The body of an odd element vanishes identically.
    }

    Matrix<Rational> je(c, c, Rational(0));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            je(i, j) = even_eqs[i].partial(Variable::x(static_cast<int>(j))).evaluate_body(point);
    Matrix<Rational> jo(d, d, Rational(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            jo(i, j) = odd_eqs[i].partial(Variable::theta(static_cast<int>(j) + 1)).evaluate_body(point);
    return invert(je).has_value() && invert(jo).has_value();
}

} // namespace supergeom
