#include "cusptype/orders.hpp"

#include <gtest/gtest.h>

#include <algorithm>
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
using ring::Val;

namespace {

RingPtr equal_ring(int p, int f, int rw) { return Ring::make({Kind::Equal, p, f, rw, {}}); }

// The order is spanned over O by E_kl scaled by pi^{bound(o,0,k,l)}, and
// P^m = Pi^m * order.  The minimal valuation of entry (i,j) over that finite
// spanning set is an independent recomputation of entry_bound.
int bound_from_span(const RingPtr& R, const Order& o, int m, int i, int j) {
    const int prec = R->rw;
    Mat pim = matlin::integral_part(orders::pi_power(R, o, m, prec));
    int best = prec;
    for (int k = 0; k < o.dim; ++k)
        for (int l = 0; l < o.dim; ++l) {
            Mat basis = Mat::zero(R, o.dim, prec);
            basis.at(k, l) = Elem::one(R, prec).shifted_up(orders::entry_bound(o, 0, k, l));
            Val v = mul(pim, basis).at(i, j).valuation();
            int val = v.exact ? v.v : prec;
            best = std::min(best, val);
        }
    return best;
}

} // namespace

TEST(Orders, RamificationAndUniformizer) {
    RingPtr R = equal_ring(2, 1, 3);
    EXPECT_EQ(orders::ramification({OrderKind::M, 3}), 1);
    EXPECT_EQ(orders::ramification({OrderKind::I, 3}), 3);
    Mat pi2 = orders::uniformizer_mat(R, {OrderKind::I, 2}, 3);
    EXPECT_TRUE(pi2.at(0, 1).same_value(Elem::one(R, 3)));
    EXPECT_TRUE(pi2.at(1, 0).same_value(Elem::one(R, 3).shifted_up(1)));
    EXPECT_TRUE(pi2.at(0, 0).is_visibly_zero());
    EXPECT_TRUE(pi2.at(1, 1).is_visibly_zero());
    // Pi^e = pi * Id for both orders
    for (int dim : {2, 3}) {
        Order io{OrderKind::I, dim};
        Mat pe = matlin::integral_part(orders::pi_power(R, io, dim, 3));
        EXPECT_TRUE(pe.same_value(
            Mat::scalar(R, dim, Elem::one(R, 3).shifted_up(1)).reduced(pe.prec())));
    }
}

TEST(Orders, EntryBoundsMatchTheSpanOracle) {
    RingPtr R = equal_ring(2, 1, 8);
    for (OrderKind kind : {OrderKind::M, OrderKind::I})
        for (int dim : {2, 3}) {
            Order o{kind, dim};
            for (int m = 0; m <= 2 * dim; ++m)
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j)
                        EXPECT_EQ(orders::entry_bound(o, m, i, j), bound_from_span(R, o, m, i, j))
                            << "kind=" << (kind == OrderKind::M ? "M" : "I") << " dim=" << dim
                            << " m=" << m << " (" << i << "," << j << ")";
        }
}

TEST(Orders, PiPowersSitExactlyAtTheirFiltrationStep) {
    RingPtr R = equal_ring(3, 1, 6);
    for (OrderKind kind : {OrderKind::M, OrderKind::I}) {
        Order o{kind, 2};
        for (int m = -3; m <= 3; ++m) {
            FracMat x = orders::pi_power(R, o, m, 6);
            EXPECT_TRUE(orders::in_P(x, o, m));
            EXPECT_FALSE(orders::in_P(x, o, m + 1));
            Val v = orders::nu(x, o);
            EXPECT_TRUE(v.exact);
            EXPECT_EQ(v.v, m);
        }
    }
}

TEST(Orders, NuOfHiddenDataIsOnlyALowerBound) {
    RingPtr R = equal_ring(2, 1, 2);
    Val v = orders::nu(matlin::frac(Mat::zero(R, 2, 2), 0), {OrderKind::I, 2});
    EXPECT_FALSE(v.exact);
}

TEST(Orders, UnitMembershipAtLevelZero) {
    RingPtr R = equal_ring(2, 1, 2);
    auto fm = [&](std::vector<int> vals) {
        std::vector<Elem> e;
        for (int x : vals) e.push_back(Elem::from_int(R, x, 2));
        return matlin::frac(Mat(R, 2, std::move(e)), 0);
    };
    Order M{OrderKind::M, 2}, I{OrderKind::I, 2};
    EXPECT_TRUE(orders::in_U(fm({1, 1, 0, 1}), M, 0));
    EXPECT_TRUE(orders::in_U(fm({0, 1, 1, 0}), M, 0)); // antidiagonal: full residue rank
    EXPECT_FALSE(orders::in_U(fm({0, 1, 1, 0}), I, 0)); // but its diagonal residues vanish
    EXPECT_TRUE(orders::in_U(fm({1, 1, 0, 1}), I, 0));
    EXPECT_FALSE(orders::in_U(fm({1, 1, 1, 1}), M, 0)); // singular residue
    // integrality is part of membership
    Mat g = Mat::identity(R, 2, 2);
    EXPECT_FALSE(orders::in_U(matlin::frac(g, 1), M, 0));
}

TEST(Orders, HigherUnitFiltrationSteps) {
    RingPtr R = equal_ring(2, 1, 3);
    Mat x = Mat::identity(R, 2, 3);
    x.at(0, 1) = Elem::one(R, 3).shifted_up(2); // 1 + pi^2 E_{01}
    FracMat fx = matlin::frac(x, 0);
    Order M{OrderKind::M, 2}, I{OrderKind::I, 2};
    EXPECT_TRUE(orders::in_U(fx, M, 2));
    EXPECT_FALSE(orders::in_U(fx, M, 3));
    // in the minimal order the (0,1) slot only needs valuation ceil((m-1)/2)
    EXPECT_TRUE(orders::in_U(fx, I, 4));
    EXPECT_TRUE(orders::in_U(fx, I, 5));
    EXPECT_FALSE(orders::in_U(fx, I, 6));
}

TEST(Orders, DecomposeRoundTrip) {
    RingPtr R = equal_ring(3, 1, 5);
    Mat u = Mat::identity(R, 2, 5);
    u.at(0, 1) = Elem::from_int(R, 2, 5);
    u.at(1, 1) = Elem::from_int(R, 2, 5); // diag residues 1, 2: unit of both orders
    for (OrderKind kind : {OrderKind::M, OrderKind::I}) {
        Order o{kind, 2};
        for (int j = -2; j <= 3; ++j) {
            FracMat x = matlin::frac_mul(orders::pi_power(R, o, j, 5), matlin::frac(u, 0));
            orders::PiDecomp d = orders::decompose(x, o);
            EXPECT_EQ(d.j, j);
            const int p = d.unit.prec();
            ASSERT_GE(p, 1);
            EXPECT_TRUE(d.unit.reduced(p).same_value(u.reduced(p)));
        }
    }
}

TEST(Orders, DecomposeRejections) {
    RingPtr R = equal_ring(2, 1, 3);
    Order M{OrderKind::M, 2}, I{OrderKind::I, 2};
    // diag(1, pi) has exact order valuation but is not Pi^j * unit for either order
    Mat g = Mat::identity(R, 2, 3);
    g.at(1, 1) = Elem::one(R, 3).shifted_up(1);
    EXPECT_THROW(orders::decompose(matlin::frac(g, 0), M), NotInNormalizer);
    EXPECT_THROW(orders::decompose(matlin::frac(g, 0), I), NotInNormalizer);
    // visibly singular residue in the maximal order
    Mat s = Mat::zero(R, 2, 3);
    s.at(0, 0) = Elem::one(R, 3);
    EXPECT_THROW(orders::decompose(matlin::frac(s, 0), M), NotInNormalizer);
    // all-hidden input cannot even fix the valuation
    EXPECT_THROW(orders::decompose(matlin::frac(Mat::zero(R, 2, 1), 0), I),
                 InsufficientPrecision);
}
