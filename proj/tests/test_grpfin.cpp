#include "cusptype/grpfin.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

using namespace cusptype;
using grpfin::SubgroupSpec;
using matlin::FracMat;
using matlin::Mat;
using orders::Order;
using orders::OrderKind;
using ring::AdditiveValue;
using ring::Elem;
using ring::Kind;
using ring::Ring;
using ring::RingPtr;

namespace {

RingPtr equal_ring(int p, int f, int rw) { return Ring::make({Kind::Equal, p, f, rw, {}}); }
RingPtr mixed_ring(int p, int rw) { return Ring::make({Kind::Mixed, p, 1, rw, {}}); }

std::vector<std::uint64_t> keys(const std::vector<Mat>& v, int prec) {
    std::vector<std::uint64_t> k;
    k.reserve(v.size());
    for (const Mat& m : v) k.push_back(matlin::mat_key(m.reduced(prec), prec));
    return k;
}

} // namespace

TEST(Grpfin, FullLinearGroupOrders) {
    EXPECT_EQ(grpfin::subgroup_elements(grpfin::full_gl(equal_ring(2, 1, 1), 2, 1)).size(),
              6u); // |GL_2(F_2)|
    EXPECT_EQ(grpfin::subgroup_elements(grpfin::full_gl(mixed_ring(2, 2), 2, 2)).size(),
              96u); // |GL_2(Z/4)|
    EXPECT_EQ(grpfin::subgroup_elements(grpfin::full_gl(equal_ring(3, 1, 2), 2, 2)).size(),
              3888u); // |GL_2(F_3[t]/t^2)|
}

TEST(Grpfin, UnitFiltrationOrders) {
    RingPtr R = equal_ring(2, 1, 2);
    Order M{OrderKind::M, 2}, I{OrderKind::I, 2};
    EXPECT_EQ(grpfin::subgroup_elements(grpfin::unit_filtration(R, M, 1, 2)).size(), 16u);
    // Iwahori units mod p^2: diagonal units, integral top, divisible bottom
    EXPECT_EQ(grpfin::subgroup_elements(grpfin::unit_filtration(R, I, 0, 2)).size(),
              2u * 2u * 4u * 2u);
    // U^1 of the Iwahori order mod p^2: the (0,1) slot is free at depth 0
    EXPECT_EQ(grpfin::subgroup_elements(grpfin::unit_filtration(R, I, 1, 2)).size(),
              2u * 2u * 4u * 2u);
}

TEST(Grpfin, ElementsAreSortedUniqueAndClosed) {
    RingPtr R = equal_ring(2, 1, 2);
    auto elems = grpfin::subgroup_elements(grpfin::stab_span(R, 2));
    auto k = keys(elems, 2);
    EXPECT_TRUE(std::is_sorted(k.begin(), k.end()));
    EXPECT_TRUE(std::adjacent_find(k.begin(), k.end()) == k.end());
    EXPECT_NO_THROW(grpfin::verify_closure(elems, 2));
}

TEST(Grpfin, ClosureRejectsNonGroups) {
    RingPtr R = equal_ring(2, 1, 1);
    // [[1, *], [*, 1]] mod p is not multiplicatively closed
    SubgroupSpec broken = grpfin::from_entries(
        R, 2, 1, {{1, 1, false}, {0, 0, false}, {0, 0, false}, {1, 1, false}});
    EXPECT_THROW(grpfin::subgroup_elements(broken), NotAGroup);
}

TEST(Grpfin, EnumerationGuard) {
    RingPtr R = equal_ring(2, 1, 4);
    EXPECT_THROW(grpfin::subgroup_elements(grpfin::full_gl(R, 2, 4), 100), SizeGuard);
}

TEST(Grpfin, StabilizerBruteForceMatchesFormula) {
    for (const RingPtr& R : {equal_ring(2, 1, 2), mixed_ring(2, 2)}) {
        Mat beta = Mat::zero(R, 2, 2);
        beta.at(0, 1) = Elem::one(R, 2); // nilpotent leading term
        auto brute = grpfin::stabilizer_bruteforce(beta.reduced(1), 2);
        auto formula = grpfin::stabilizer_formula(beta, 2);
        EXPECT_EQ(brute.size(), 32u);
        EXPECT_EQ(keys(brute, 2), keys(formula, 2));
        EXPECT_NO_THROW(grpfin::verify_closure(brute, 2));
        // Lagrange: the stabilizer order divides the group order
        auto gl = grpfin::subgroup_elements(grpfin::full_gl(R, 2, 2));
        EXPECT_EQ(gl.size() % brute.size(), 0u);
        // the principal congruence subgroup always stabilizes
        auto k1 = grpfin::subgroup_elements(
            grpfin::unit_filtration(R, Order{OrderKind::M, 2}, 1, 2));
        auto bk = keys(brute, 2);
        for (std::uint64_t key : keys(k1, 2))
            EXPECT_TRUE(std::binary_search(bk.begin(), bk.end(), key));
    }
}

TEST(Grpfin, ConjugationByTheIdentityIsPlainIntersection) {
    RingPtr R = mixed_ring(2, 2);
    SubgroupSpec u1 = grpfin::unit_filtration(R, Order{OrderKind::M, 2}, 1, 2);
    SubgroupSpec upper = grpfin::upper_unipotent(R, 2, 0);
    auto got = grpfin::conj_intersect(u1, matlin::frac(Mat::identity(R, 2, 2), 0), upper);
    EXPECT_EQ(got.size(), 2u); // [[1, 2Z/4], [0, 1]]
    for (const Mat& m : got) {
        EXPECT_TRUE(m.at(0, 0).same_value(Elem::one(R, 2)));
        EXPECT_EQ(m.at(0, 1).digit(0), 0);
    }
}

TEST(Grpfin, ThetaReportsPassOnTheWorkedRings) {
    for (const RingPtr& R : {equal_ring(2, 1, 3), equal_ring(3, 1, 3), mixed_ring(2, 3)}) {
        auto [rep1, rep2] = grpfin::theta_checks(R);
        EXPECT_TRUE(rep1.pass()) << R->token();
        EXPECT_TRUE(rep2.pass()) << R->token();
    }
}

TEST(Grpfin, ThetaRejectsArgumentsOutsideItsDomain) {
    RingPtr R = equal_ring(2, 1, 3);
    grpfin::Character theta = grpfin::theta_build(1, R);
    Mat swap = Mat::zero(R, 2, 2);
    swap.at(0, 1) = Elem::one(R, 2);
    swap.at(1, 0) = Elem::one(R, 2);
    EXPECT_THROW(theta(swap), NotInSubgroup); // (0,0) entry is not a unit
}

TEST(Grpfin, CharacterTrivialityScan) {
    RingPtr R = equal_ring(2, 1, 3);
    grpfin::Character trivial = [&](const Mat&) { return AdditiveValue::zero(R->p); };
    EXPECT_TRUE(grpfin::char_trivial_on(trivial, grpfin::stab_span(R, 2)));
    grpfin::Character theta1 = grpfin::theta_build(1, R);
    SubgroupSpec u1 = grpfin::unit_filtration(R, Order{OrderKind::M, 2}, 1, 2);
    EXPECT_FALSE(grpfin::char_trivial_on(theta1, u1)); // conductor two
    SubgroupSpec u2 = grpfin::unit_filtration(R, Order{OrderKind::M, 2}, 2, 2);
    EXPECT_TRUE(grpfin::char_trivial_on(theta1, u2)); // only the identity mod p^2
}

TEST(Grpfin, SmallConductorCheckNeedsAnEisensteinTerm) {
    RingPtr R = equal_ring(2, 1, 3);
    grpfin::Character theta = grpfin::theta_build(1, R);
    // pi * Id fails the precondition: its charpoly (x - pi)^2 is not Eisenstein
    FracMat flat = matlin::frac(Mat::identity(R, 2, 3), 0);
    EXPECT_THROW(grpfin::gl2_small_conductor_check(flat, theta, 2), BadArgument);
    // the genuine datum passes at r = 2
    EXPECT_TRUE(grpfin::gl2_small_conductor_check(grpfin::theta_beta(1, R), theta, 2));
}

TEST(Grpfin, FiltrationContainmentAndItsSharpEdge) {
    EXPECT_TRUE(grpfin::verify_containment(2, 0, 3));
    EXPECT_TRUE(grpfin::verify_containment(3, 0, 3));
    EXPECT_TRUE(grpfin::containment_sharpness_probe(2, 0));
    EXPECT_TRUE(grpfin::containment_sharpness_probe(3, 1));
}

TEST(Grpfin, DetFactoringCharactersAreScalarAtTheFirstStep) {
    EXPECT_TRUE(grpfin::det_character_scalar_check(equal_ring(2, 1, 3), OrderKind::M, 2, 1));
    EXPECT_TRUE(grpfin::det_character_scalar_check(equal_ring(2, 1, 3), OrderKind::I, 2, 1));
}

TEST(Grpfin, WorkedExampleSeparatesTheTwoCharacters) {
    auto lines = grpfin::example4(equal_ring(2, 1, 3));
    ASSERT_EQ(lines.size(), 7u);
    for (const auto& line : lines) EXPECT_TRUE(line.pass()) << line.claim;
    // the separation content: one datum passes the small-conductor test, one fails
    EXPECT_TRUE(lines[5].expected);
    EXPECT_FALSE(lines[6].expected);
}
