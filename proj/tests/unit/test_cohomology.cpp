#include <gtest/gtest.h>

#include "../corpus.hpp"
#include "../oracles.hpp"
#include "supergeom/cohomology.hpp"

using namespace supergeom;

namespace {

GradedSModule free_B(int m, int n) { return expand_module(BModulePresentation::structure_sheaf(m, n)); }

GradedSModule cyclic(int m, const std::vector<Poly> &ideal)
{
    GradedSModule M = GradedSModule::free(m, {{0, Parity::even}});
    for (const auto &f : ideal) M.relations.push_back({{0, f}});
    return M;
}

Poly X(int i) { return Poly::variable(i); }

Poly power(const Poly &p, int e)
{
    Poly r = Poly::constant(1);
    for (int k = 0; k < e; ++k) r = r * p;
    return r;
}

} // namespace

TEST(LineBundles, BottExamples)
{
    EXPECT_EQ(line_bundle_cohomology_bott(1, 2, 0, 1), (DimPair{1, 0}));
    EXPECT_EQ(line_bundle_cohomology_bott(1, 1, -1, 1), (DimPair{0, 1}));
    EXPECT_EQ(line_bundle_cohomology_bott(1, 1, -3, 1), (DimPair{2, 3}));
    EXPECT_THROW((void)line_bundle_cohomology_bott(1, 1, 0, 2), Error);
}

TEST(LineBundles, RecursiveExamples)
{
    EXPECT_EQ(line_bundle_cohomology_recursive(1, 2, 0, 1), (DimPair{1, 0}));
    EXPECT_EQ(line_bundle_cohomology_recursive(1, 1, -1, 1), (DimPair{0, 1}));
    for (int n = 0; n <= 3; ++n)
        for (int r = n - 1; r <= n + 3; ++r)
            for (int m = 1; m <= 3; ++m)
                for (int i = 1; i <= m; ++i) EXPECT_TRUE(line_bundle_cohomology_recursive(m, n, r, i).is_zero());
    for (int n = 1; n <= 4; ++n)
        for (int r = -4; r <= 4; ++r)
            EXPECT_EQ(line_bundle_cohomology_recursive(0, n, r, 0), (DimPair{1 << (n - 1), 1 << (n - 1)}));
}

TEST(LineBundles, AgreeWithLaurentMonomialCount)
{
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            for (int r = -8; r <= 8; ++r)
                for (int i = 0; i <= m; ++i) {
                    auto [e, o] = oracle::pmn_line_bundle(m, n, r, i);
                    DimPair want{e, o};
                    EXPECT_EQ(line_bundle_cohomology_bott(m, n, r, i), want);
                    EXPECT_EQ(line_bundle_cohomology_recursive(m, n, r, i), want) << m << n << " r=" << r << " i=" << i;
                }
}

TEST(SheafCohomology, Examples)
{
    RingSignature s11 = RingSignature::projective(1, 1);
    auto O_P1 = expand_module(BModulePresentation::quotient(s11, {corpus::th(s11, 1)}));
    EXPECT_EQ(sheaf_cohomology(O_P1, -2, 1), (DimPair{1, 0}));

    CohomologyEngine E(free_B(1, 2));
    for (int r = -8; r <= 8; ++r)
        for (int i = 0; i <= 1; ++i) EXPECT_EQ(E.sheaf(r, i), line_bundle_cohomology_bott(1, 2, r, i));

    CohomologyEngine fin(cyclic(1, {X(0), X(1)}));
    for (int r = 0; r <= 6; ++r) {
        EXPECT_EQ(fin.sheaf(r, 0), DimPair{});
        EXPECT_EQ(fin.sheaf(r, 1), DimPair{});
    }
    EXPECT_EQ(fin.sheaf(0, 3), DimPair{});
    EXPECT_THROW((void)fin.sheaf(0, -1), Error);
}

TEST(SheafCohomology, SkyscraperAtEveryTwist)
{
    // S/(x0^a) on P^1 is a length-a point: h^0 = a and h^1 = 0 for every twist.
    for (int a = 1; a <= 4; ++a) {
        CohomologyEngine E(cyclic(1, {power(X(0), a)}));
        for (int r = -6; r <= 6; ++r) {
            EXPECT_EQ(E.sheaf(r, 0), (DimPair{a, 0}));
            EXPECT_EQ(E.sheaf(r, 1), DimPair{});
        }
    }
    // P^0 with n = 0: one point, h^0 = 1 at every twist.
    CohomologyEngine pt(GradedSModule::free(0, {{0, Parity::even}}));
    for (int r = -5; r <= 5; ++r) EXPECT_EQ(pt.sheaf(r, 0), (DimPair{1, 0}));
}

TEST(SheafCohomology, PlaneCurve)
{
    // A plane cubic: h^0(O_C(r)) = 3r and h^1 = 0 for r > 0; h^0 = h^1 = 1 at r = 0.
    auto cubic = X(0) * X(0) * X(0) + X(1) * X(1) * X(1) + X(2) * X(2) * X(2);
    CohomologyEngine E(cyclic(2, {cubic}));
    EXPECT_EQ(E.sheaf(0, 0), (DimPair{1, 0}));
    EXPECT_EQ(E.sheaf(0, 1), (DimPair{1, 0}));
    for (int r = 1; r <= 4; ++r) {
        EXPECT_EQ(E.sheaf(r, 0), (DimPair{3 * r, 0}));
        EXPECT_EQ(E.sheaf(r, 1), DimPair{});
        EXPECT_EQ(E.sheaf(-r, 1), (DimPair{3 * r, 0}));
    }
}

TEST(SheafCohomology, EulerCharacteristicIsPolynomial)
{
    for (const auto &e : corpus::modules()) {
        auto M = expand_module(e.P);
        CohomologyEngine E(M);
        auto hp = hilbert_polynomial_pair(M).poly;
        EXPECT_EQ(super_hilbert_polynomial(e.P), hp) << e.name;
        for (int r = -6; r <= 6; ++r) {
            EXPECT_EQ(E.euler(r), hp.at(r)) << e.name << " r=" << r;
            for (int i = E.m() + 1; i <= E.m() + 2; ++i) EXPECT_TRUE(E.sheaf(r, i).is_zero());
        }
    }
    auto r = UPoly::r();
    EXPECT_EQ(euler_characteristic(free_B(1, 2), 0), DimPair{});
    EXPECT_EQ(euler_characteristic(free_B(1, 1), -1), (DimPair{0, -1}));
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(euler_characteristic(free_B(m, n), n + 2), h_mn(m, n, n + 2));
    (void)r;
}

TEST(Regularity, Examples)
{
    EXPECT_TRUE(is_r_regular(free_B(1, 2), 2));
    EXPECT_FALSE(is_r_regular(free_B(1, 2), 1));
    EXPECT_TRUE(is_r_regular(free_B(1, 1), 1));
    EXPECT_FALSE(is_r_regular(free_B(1, 1), 0));
    EXPECT_FALSE(is_r_regular(GradedSModule::free(2, {{0, Parity::even}, {1, Parity::even}}), 0));
    EXPECT_TRUE(is_r_regular(GradedSModule::free(2, {{0, Parity::even}, {1, Parity::even}}), 1));

    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(regularity(free_B(m, n)), n) << m << " " << n;
    for (int a = 1; a <= 5; ++a) EXPECT_EQ(regularity(cyclic(1, {power(X(0), a)})), a - 1);
    EXPECT_EQ(regularity(GradedSModule::free(1, {{0, Parity::even}})), 0);
    EXPECT_THROW((void)regularity(cyclic(1, {Poly::constant(1)})), Error);
}

TEST(Regularity, MonotoneOnCorpus)
{
    for (const auto &e : corpus::modules()) {
        CohomologyEngine E(expand_module(e.P));
        for (int r = -4; r <= 6; ++r)
            if (E.is_r_regular(r)) EXPECT_TRUE(E.is_r_regular(r + 1)) << e.name << " r=" << r;
    }
}

TEST(Castelnuovo, Examples)
{
    EXPECT_TRUE(castelnuovo_check(free_B(1, 1), 1).passed());
    EXPECT_TRUE(castelnuovo_check(free_B(1, 2), 2).passed());
    try {
        (void)castelnuovo_check(free_B(1, 2), 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::precondition);
        EXPECT_NE(std::string(e.what()).find("H^1(M(0))"), std::string::npos);
    }
    for (const auto &e : corpus::modules()) {
        auto M = expand_module(e.P);
        CohomologyEngine E(M);
        if (E.resolution().modules[0].empty()) continue;
        EXPECT_TRUE(castelnuovo_check(M, E.regularity()).passed()) << e.name;
    }
}

TEST(Serre, Grid)
{
    EXPECT_TRUE(serre_duality_check(1, 1, 0));
    EXPECT_TRUE(serre_duality_check(1, 2, 2));
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            for (int r = -8; r <= 8; ++r) EXPECT_TRUE(serre_duality_check(m, n, r));
}

// The saturation has no H^0_m, so its degree-r piece is H^0(M~(r)) wherever
// H^1_m of the saturation vanishes.
TEST(SheafCohomology, SaturationRealizesGlobalSectionsWhereExpected)
{
    for (const auto &e : corpus::modules()) {
        auto M = expand_module(e.P);
        auto sat = saturate(M);
        CohomologyEngine E(M), S(sat);
        HilbertFunction hs(sat);
        int agreeing = 0;
        for (int r = -4; r <= 6; ++r) {
            EXPECT_TRUE(S.local_cohomology(0, r).is_zero()) << e.name << " r=" << r;
            EXPECT_EQ(S.sheaf(r, 0), E.sheaf(r, 0)) << e.name << " r=" << r;
            if (S.local_cohomology(1, r).is_zero()) {
                EXPECT_EQ(hs(r), E.sheaf(r, 0)) << e.name << " r=" << r;
                ++agreeing;
            }
        }
        EXPECT_GT(agreeing, 0) << e.name;
    }
}
