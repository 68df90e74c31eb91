#include "cusptype/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

using namespace cusptype;
using matlin::FracMat;
using matlin::Mat;
using orders::Order;
using orders::OrderKind;
using ring::Elem;
using ring::Kind;
using ring::Ring;
using ring::RingPtr;

namespace {

RingPtr equal_ring(int p, int f, int rw) { return Ring::make({Kind::Equal, p, f, rw, {}}); }

Mat companion_mod2(const RingPtr& R, int prec) {
    // companion matrix of x^2 + x + 1
    Mat c = Mat::zero(R, 2, prec);
    c.at(0, 1) = Elem::one(R, prec);
    c.at(1, 0) = Elem::one(R, prec);
    c.at(1, 1) = Elem::one(R, prec);
    return c;
}

} // namespace

TEST(Oracle, PartitionOfScalarsIsAllSingletons) {
    auto blocks = oracle::brute_conjugacy_partition(equal_ring(2, 1, 2), 1, 2);
    ASSERT_EQ(blocks.size(), 4u);
    for (std::uint64_t k = 0; k < 4; ++k) {
        ASSERT_EQ(blocks[k].size(), 1u);
        EXPECT_EQ(blocks[k][0], k);
    }
}

TEST(Oracle, PartitionMatchesTheClassEnumerator) {
    RingPtr R = equal_ring(3, 1, 1);
    auto blocks = oracle::brute_conjugacy_partition(R, 2, 1);
    ASSERT_EQ(blocks.size(), 12u);

    std::size_t covered = 0;
    std::vector<std::uint64_t> least;
    for (const auto& b : blocks) {
        ASSERT_FALSE(b.empty());
        EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
        // orbit sizes divide |GL_2(F_3)| = 48
        EXPECT_EQ(48u % b.size(), 0u) << b.size();
        covered += b.size();
        least.push_back(b.front());
    }
    EXPECT_EQ(covered, 81u);
    EXPECT_TRUE(std::is_sorted(least.begin(), least.end()));

    auto classes = orbits::enumerate_classes(R, 2, 1);
    ASSERT_EQ(classes.size(), blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        EXPECT_EQ(classes[i].canon, blocks[i].front());
        EXPECT_EQ(classes[i].members, blocks[i]);
    }
}

TEST(Oracle, PartitionGuardsItsEnumerationSize) {
    EXPECT_THROW(oracle::brute_conjugacy_partition(equal_ring(2, 1, 2), 2, 2, 100), SizeGuard);
    EXPECT_THROW(oracle::brute_conjugacy_partition(equal_ring(2, 1, 2), 2, 3), BadArgument);
}

TEST(Oracle, CosetIntersection) {
    RingPtr R = equal_ring(2, 1, 4);
    Mat pi = orders::uniformizer_mat(R, Order{OrderKind::I, 2}, 2);
    orbits::Orbit pi_class = orbits::orbit_of(pi, 4);
    EXPECT_TRUE(oracle::brute_coset_intersect(pi_class, 1));

    orbits::Orbit id_class = orbits::orbit_of(Mat::identity(R, 2, 2), 4);
    EXPECT_FALSE(oracle::brute_coset_intersect(id_class, 1));

    EXPECT_THROW(oracle::brute_coset_intersect(pi_class, 0), BadArgument);
    EXPECT_THROW(oracle::brute_coset_intersect(pi_class, 2), BadArgument);
}

TEST(Oracle, MinimalityByLatticeResidue) {
    RingPtr R = equal_ring(2, 1, 3);
    // pi^{-1} C with C the companion of an irreducible quadratic: residue
    // generates the quadratic extension, decided by the unramified route
    EXPECT_TRUE(oracle::brute_minimality(matlin::frac(companion_mod2(R, 3), 1)));
}

TEST(Oracle, MinimalityByIwahoriValuation) {
    RingPtr R = equal_ring(2, 1, 3);
    Order io{OrderKind::I, 2};
    // pi^{-1} Pi has odd Iwahori valuation: the ramified route says minimal
    EXPECT_TRUE(oracle::brute_minimality(
        matlin::frac(orders::uniformizer_mat(R, io, 3), 1)));
    // pi^{-1} Pi^2 is the identity: even valuation, not minimal
    EXPECT_FALSE(oracle::brute_minimality(matlin::frac(Mat::identity(R, 2, 3), 0)));
}

TEST(Oracle, MinimalityCanBeUndecidable) {
    RingPtr R = equal_ring(2, 1, 3);
    Mat ones = Mat::zero(R, 2, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ones.at(i, j) = Elem::one(R, 3);
    // residue minimal polynomial x^2 is reducible, and Pi^3 (pi^{-1} ones) is
    // not an Iwahori unit: neither route decides
    EXPECT_THROW(oracle::brute_minimality(matlin::frac(ones, 1)), InconclusiveFieldData);
}
