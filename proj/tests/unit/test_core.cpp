#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "supergeom/smooth.hpp"
#include "supergeom/supermatrix.hpp"

using namespace supergeom;

namespace {

const RingSignature B23{3, 3};

SuperPoly th(RingSignature s, int j) { return SuperPoly::variable(s, Variable::theta(j)); }
SuperPoly x(RingSignature s, int i) { return SuperPoly::variable(s, Variable::x(i)); }
SuperPoly cst(RingSignature s, long c) { return SuperPoly::constant(s, c); }

// Sign of sorting a word of distinct odd indices by adjacent swaps.
int bubble_sign(std::vector<int> w)
{
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
            if (w[j] > w[j + 1]) {
                std::swap(w[j], w[j + 1]);
                sign = -sign;
            }
    return sign;
}

std::vector<int> indices(OddMask m)
{
    std::vector<int> v;
    for (int j = 1; j <= 32; ++j)
        if (m & odd_bit(j)) v.push_back(j);
    return v;
}

std::vector<SuperMonomial> monomials_up_to(RingSignature s, int d)
{
    std::vector<SuperMonomial> all;
    for (int k = 0; k <= d; ++k) {
        auto v = super_monomials_of_degree(s, k);
        all.insert(all.end(), v.begin(), v.end());
    }
    return all;
}

} // namespace

TEST(SuperPoly, OddVariablesAnticommute)
{
    EXPECT_EQ(th(B23, 2) * th(B23, 1), -(th(B23, 1) * th(B23, 2)));
    EXPECT_TRUE((th(B23, 1) * th(B23, 1)).is_zero());
    auto t12 = th(B23, 1) * th(B23, 2);
    EXPECT_EQ((x(B23, 0) + t12) * (x(B23, 0) - t12), x(B23, 0) * x(B23, 0));
}

TEST(SuperPoly, ProductSignMatchesBubbleSort)
{
    for (OddMask a = 0; a < 32; ++a)
        for (OddMask b = 0; b < 32; ++b) {
            int expect = 0;
            if (!(a & b)) {
                auto w = indices(a), wb = indices(b);
                w.insert(w.end(), wb.begin(), wb.end());
                expect = bubble_sign(w);
            }
            EXPECT_EQ(odd_product_sign(a, b), expect) << a << " " << b;
        }
}

TEST(SuperPoly, Supercommutativity)
{
    auto mons = monomials_up_to(B23, 4);
    for (const auto &a : mons)
        for (const auto &b : mons) {
            if (a.z_degree() + b.z_degree() > 4) continue;
            auto u = SuperPoly::monomial(B23, a), v = SuperPoly::monomial(B23, b);
            int s = (a.parity() == Parity::odd && b.parity() == Parity::odd) ? -1 : 1;
            EXPECT_EQ(u * v, Rational(s) * (v * u));
        }
}

TEST(SuperPoly, Associativity)
{
    std::mt19937 rng(7);
    auto mons = monomials_up_to(B23, 2);
    auto random_poly = [&] {
        SuperPoly p(B23);
        for (int k = 0; k < 4; ++k) p.add_term(mons[rng() % mons.size()], Rational(int(rng() % 7) - 3));
        return p;
    };
    for (int t = 0; t < 50; ++t) {
        auto a = random_poly(), b = random_poly(), c = random_poly();
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(SuperPoly, Partials)
{
    RingSignature s{2, 2};
    auto t12 = th(s, 1) * th(s, 2);
    EXPECT_EQ(t12.partial(Variable::theta(1)), th(s, 2));
    EXPECT_EQ(t12.partial(Variable::theta(2)), -th(s, 1));
    auto f = x(s, 0) * x(s, 0) * th(s, 1);
    EXPECT_EQ(f.partial(Variable::x(0)), cst(s, 2) * x(s, 0) * th(s, 1));
    EXPECT_THROW((void)f.partial(Variable::theta(3)), Error);
    EXPECT_THROW((void)f.partial(Variable::x(2)), Error);
}

TEST(SuperPoly, OddPartialsAnticommuteAndSquareToZero)
{
    for (const auto &m : monomials_up_to(B23, 4)) {
        auto f = SuperPoly::monomial(B23, m);
        for (int i = 1; i <= 3; ++i) {
            EXPECT_TRUE(f.partial(Variable::theta(i)).partial(Variable::theta(i)).is_zero());
            for (int j = 1; j <= 3; ++j) {
                auto ij = f.partial(Variable::theta(j)).partial(Variable::theta(i));
                auto ji = f.partial(Variable::theta(i)).partial(Variable::theta(j));
                EXPECT_EQ(ij, -ji);
            }
        }
    }
}

TEST(SuperPoly, LeibnizRule)
{
    std::mt19937 rng(11);
    std::vector<SuperMonomial> mons = monomials_up_to(B23, 3);
    for (int t = 0; t < 300; ++t) {
        const auto &ma = mons[rng() % mons.size()];
        SuperPoly f = SuperPoly::monomial(B23, ma, int(rng() % 5) + 1);
        // a parity-homogeneous f with two terms
        for (const auto &mb : mons)
            if (mb.parity() == ma.parity() && mb != ma && rng() % 8 == 0) {
                f.add_term(mb, -2);
                break;
            }
        SuperPoly g(B23);
        for (int k = 0; k < 3; ++k) g.add_term(mons[rng() % mons.size()], int(rng() % 5) - 2);
        for (int v = 0; v < 6; ++v) {
            Variable var = v < 3 ? Variable::x(v) : Variable::theta(v - 2);
            int s = (var.odd && *f.parity() == Parity::odd) ? -1 : 1;
            EXPECT_EQ((f * g).partial(var), f.partial(var) * g + Rational(s) * (f * g.partial(var)));
        }
    }
}

TEST(SuperPoly, DegreeAndParity)
{
    auto f = x(B23, 0) * th(B23, 1) + th(B23, 2) * th(B23, 3);
    EXPECT_EQ(f.z_degree(), 2);
    EXPECT_FALSE(f.parity().has_value());
    EXPECT_FALSE((x(B23, 0) + cst(B23, 1)).is_homogeneous());
    EXPECT_EQ(th(B23, 1).parity(), Parity::odd);
    EXPECT_THROW((void)(x(B23, 0) * x(RingSignature{2, 2}, 0)), Error);
    EXPECT_EQ(BiDegree({1, Parity::odd}) + BiDegree({2, Parity::odd}), BiDegree({3, Parity::even}));
}

namespace {

GrassmannAlgebra G4 = GrassmannAlgebra::untagged(4);

GrassmannElement g_even(std::mt19937 &rng, int scalar)
{
    GrassmannElement e = GrassmannElement::constant(G4, scalar);
    for (OddMask m = 1; m < 16; ++m)
        if (std::popcount(m) % 2 == 0 && rng() % 2) e += GrassmannElement::monomial(G4, m, int(rng() % 7) - 3);
    return e;
}

GrassmannElement g_odd(std::mt19937 &rng)
{
    GrassmannElement e(G4);
    for (OddMask m = 1; m < 16; ++m)
        if (std::popcount(m) % 2 == 1 && rng() % 2) e += GrassmannElement::monomial(G4, m, int(rng() % 7) - 3);
    return e;
}

SuperMatrix<GrassmannElement> random_supermatrix(std::mt19937 &rng, int p, int q)
{
    GrassmannElement zero(G4);
    for (;;) {
        SuperMatrix<GrassmannElement> m(p, q, p, q, zero);
        for (int i = 0; i < p + q; ++i)
            for (int j = 0; j < p + q; ++j)
                m(i, j) = ((i < p) == (j < p)) ? g_even(rng, int(rng() % 7) - 3) : g_odd(rng);
        Matrix<Rational> a0(p, p, 0), d0(q, q, 0);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) a0(i, j) = m(i, j).scalar_part();
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) d0(i, j) = m(p + i, p + j).scalar_part();
        if (invert(a0) && invert(d0)) return m;
    }
}

// Ber = det(A) / det(D - C A^{-1} B), valid when A is invertible.
GrassmannElement ber_via_a(const SuperMatrix<GrassmannElement> &m)
{
    GrassmannElement one = GrassmannElement::constant(G4, 1), zero(G4);
    auto a = m.block(false, false), b = m.block(false, true), c = m.block(true, false), d = m.block(true, true);
    auto ainv = invert_nilpotent_perturbation(a, one);
    auto cab = multiply(multiply(c, ainv, zero), b, zero);
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = d(i, j) - cab(i, j);
    return determinant(a, one) * invert_element(determinant(d, one));
}

} // namespace

TEST(Berezinian, Examples)
{
    RingSignature s{1, 0};
    SuperMatrix<SuperPoly> diag(1, 1, 1, 1, cst(s, 0));
    diag(0, 0) = cst(s, 2);
    diag(1, 1) = cst(s, 3);
    EXPECT_EQ(berezinian(diag, cst(s, 1)), SuperPoly::constant(s, Rational(2, 3)));

    GrassmannAlgebra g = GrassmannAlgebra::untagged(2);
    auto one = GrassmannElement::constant(g, 1);
    auto beta = GrassmannElement::generator(g, 1), gamma = GrassmannElement::generator(g, 2);
    SuperMatrix<GrassmannElement> m(1, 1, 1, 1, GrassmannElement(g));
    m(0, 0) = one;
    m(0, 1) = beta;
    m(1, 0) = gamma;
    m(1, 1) = one;
    EXPECT_EQ(berezinian(m, one), one - beta * gamma);

    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) EXPECT_EQ(berezinian(SuperMatrix<GrassmannElement>::identity(p, q, one), one), one);
}

TEST(Berezinian, Errors)
{
    GrassmannAlgebra g = GrassmannAlgebra::untagged(2);
    auto one = GrassmannElement::constant(g, 1);
    SuperMatrix<GrassmannElement> m(1, 1, 1, 1, GrassmannElement(g));
    m(0, 0) = one;
    m(1, 1) = GrassmannElement::generator(g, 1) * GrassmannElement::generator(g, 2);
    try {
        (void)berezinian(m, one);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::singular_block);
    }
    m(1, 1) = one;
    m(0, 1) = one; // even entry in an odd block
    EXPECT_THROW((void)berezinian(m, one), Error);
}

TEST(Berezinian, Multiplicative)
{
    std::mt19937 rng(2024);
    auto one = GrassmannElement::constant(G4, 1);
    for (int t = 0; t < 100; ++t) {
        int p = 1 + t % 2, q = 1 + (t / 2) % 2;
        auto m = random_supermatrix(rng, p, q), n = random_supermatrix(rng, p, q);
        auto bm = berezinian(m, one), bn = berezinian(n, one);
        EXPECT_EQ(berezinian(m * n, one), bm * bn);
        EXPECT_EQ(bm, ber_via_a(m));
    }
}

TEST(Grassmann, InverseAndBlocks)
{
    std::mt19937 rng(5);
    for (int t = 0; t < 50; ++t) {
        auto u = g_even(rng, 1 + int(rng() % 4));
        EXPECT_EQ(u * invert_element(u), GrassmannElement::constant(G4, 1));
    }
    auto alg = GrassmannAlgebra::split(1, 1);
    auto f = GrassmannElement::constant(alg, 1) +
             GrassmannElement::generator(alg, 1) * GrassmannElement::generator(alg, 2);
    EXPECT_EQ(f.geometric_block(Parity::odd).to_string(), "th1*eta1");
    EXPECT_EQ(f.geometric_block(Parity::even).to_string(), "1");
}

TEST(Smooth, StandardCheck)
{
    RingSignature s{2, 1};
    std::vector<Rational> pt{0, 1};
    std::vector<SuperPoly> none;
    std::vector<SuperPoly> ev{x(s, 0)};
    EXPECT_TRUE(standard_smooth_check(ev, none, pt));
    std::vector<SuperPoly> od{th(s, 1)};
    EXPECT_TRUE(standard_smooth_check(none, od, pt));
    std::vector<SuperPoly> od2{x(s, 0) * th(s, 1)};
    EXPECT_FALSE(standard_smooth_check(none, od2, pt));
    std::vector<Rational> off{1, 1};
    EXPECT_THROW((void)standard_smooth_check(ev, none, off), Error);
}
