#include "cusptype/ring.hpp"

#include <gtest/gtest.h>

#include <cstdint>

using namespace cusptype;
using ring::AdditiveValue;
using ring::Elem;
using ring::FracElem;
using ring::Kind;
using ring::Ring;
using ring::RingPtr;
using ring::Val;

namespace {

RingPtr equal_ring(int p, int f, int rw) { return Ring::make({Kind::Equal, p, f, rw, {}}); }
RingPtr mixed_ring(int p, int rw) { return Ring::make({Kind::Mixed, p, 1, rw, {}}); }

std::uint64_t upow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

TEST(Ring, ConstructionGuards) {
    EXPECT_THROW(Ring::make({Kind::Equal, 6, 1, 2, {}}), NotPrime);
    EXPECT_THROW(Ring::make({Kind::Mixed, 2, 2, 2, {}}), MixedNeedsPrimeField);
    EXPECT_THROW(Ring::make({Kind::Equal, 2, 2, 2, {1, 0, 1}}), BadModulus); // x^2+1 = (x+1)^2
}

TEST(Ring, TokenAndSizes) {
    EXPECT_EQ(equal_ring(3, 1, 4)->token(), "equal:p3:f1:r4");
    RingPtr F4 = equal_ring(2, 2, 2);
    EXPECT_EQ(F4->q, 4);
    EXPECT_EQ(F4->modulus, (std::vector<int>{1, 1, 1})); // x^2+x+1, constant first
    EXPECT_EQ(mixed_ring(5, 2)->q, 5);
}

TEST(Ring, ResidueFieldAxiomsExhaustive) {
    RingPtr R = equal_ring(2, 2, 1); // F_4 multiplication tables
    const int q = R->q;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            EXPECT_EQ(R->radd(a, b), R->radd(b, a));
            EXPECT_EQ(R->rmul(a, b), R->rmul(b, a));
            for (int c = 0; c < q; ++c) {
                EXPECT_EQ(R->radd(R->radd(a, b), c), R->radd(a, R->radd(b, c)));
                EXPECT_EQ(R->rmul(R->rmul(a, b), c), R->rmul(a, R->rmul(b, c)));
                EXPECT_EQ(R->rmul(a, R->radd(b, c)), R->radd(R->rmul(a, b), R->rmul(a, c)));
            }
        }
    for (int a = 1; a < q; ++a) EXPECT_EQ(R->rmul(a, R->rinv(a)), 1);
    EXPECT_THROW(R->rinv(0), NonUnit);
}

TEST(Ring, AbsoluteTraceOverF4) {
    RingPtr R = equal_ring(2, 2, 1);
    EXPECT_EQ(R->rtrace(0), 0);
    EXPECT_EQ(R->rtrace(1), 0); // Tr(1) = 1 + 1 = 0
    EXPECT_EQ(R->rtrace(2), 1); // Tr(x) = x + x^2 = 1 mod x^2+x+1
    EXPECT_EQ(R->rtrace(3), 1);
}

TEST(Ring, RankRoundTripExhaustive) {
    for (const RingPtr& R : {equal_ring(3, 1, 2), equal_ring(2, 2, 2), mixed_ring(2, 3)}) {
        const std::uint64_t total = upow(static_cast<std::uint64_t>(R->q), R->rw);
        for (std::uint64_t k = 0; k < total; ++k) {
            Elem e = ring::elem_from_rank(R, k, R->rw);
            EXPECT_EQ(e.rank(), k);
            EXPECT_EQ(e.prec(), R->rw);
        }
    }
}

TEST(Ring, InversesExhaustiveAgainstProductScan) {
    for (const RingPtr& R : {equal_ring(2, 1, 3), equal_ring(3, 1, 2), equal_ring(2, 2, 2),
                             mixed_ring(2, 3), mixed_ring(3, 2)}) {
        const std::uint64_t total = upow(static_cast<std::uint64_t>(R->q), R->rw);
        const Elem one = Elem::one(R, R->rw);
        for (std::uint64_t k = 0; k < total; ++k) {
            Elem e = ring::elem_from_rank(R, k, R->rw);
            if (e.digit(0) == 0) {
                EXPECT_THROW(e.inv(), NonUnit);
                continue;
            }
            Elem i = e.inv();
            EXPECT_TRUE(mul(e, i).same_value(one));
            // independent check: i is the unique rank whose product is 1
            std::uint64_t hits = 0;
            for (std::uint64_t m = 0; m < total; ++m)
                if (mul(e, ring::elem_from_rank(R, m, R->rw)).same_value(one)) {
                    ++hits;
                    EXPECT_EQ(m, i.rank());
                }
            EXPECT_EQ(hits, 1u);
        }
    }
}

TEST(Ring, SpecificInverses) {
    RingPtr Z8 = mixed_ring(2, 3);
    EXPECT_TRUE(Elem::from_int(Z8, 3).inv().same_value(Elem::from_int(Z8, 3))); // 3*3 = 9 = 1
    RingPtr R = equal_ring(2, 1, 2);
    Elem e = Elem::from_digits(R, {1, 1}); // 1 + t
    EXPECT_TRUE(e.inv().same_value(e));    // (1+t)^2 = 1 + t^2 = 1
}

TEST(Ring, ValuationAndPrecision) {
    RingPtr R = equal_ring(2, 1, 3);
    EXPECT_EQ(Elem::zero(R, 2).valuation(), Val::AtLeast(2));
    EXPECT_EQ(Elem::from_digits(R, {0, 1}).valuation(), Val::Exact(1));
    EXPECT_EQ(Elem::one(R, 3).valuation(), Val::Exact(0));
    EXPECT_TRUE(Elem::zero(R, 2).is_visibly_zero());
    // addition and multiplication keep the shared precision
    Elem a = Elem::from_digits(R, {1, 1});    // prec 2
    Elem b = Elem::from_digits(R, {1, 0, 1}); // prec 3
    EXPECT_EQ(add(a, b).prec(), 2);
    EXPECT_EQ(mul(a, b).prec(), 2);
}

TEST(Ring, ShiftSemantics) {
    RingPtr R = equal_ring(2, 1, 3);
    Elem a = Elem::from_digits(R, {1, 1});
    Elem up = a.shifted_up(2);
    EXPECT_EQ(up.prec(), 3); // capped at the working precision
    EXPECT_EQ(up.digits(), (std::vector<int>{0, 0, 1}));
    Elem down = Elem::from_digits(R, {0, 1, 1}).shifted_down(1);
    EXPECT_EQ(down.digits(), (std::vector<int>{1, 1}));
    EXPECT_THROW(Elem::from_digits(R, {1, 1}).shifted_down(1), BadArgument);
    EXPECT_THROW(Elem::zero(R, 1).shifted_down(2), InsufficientPrecision);
}

TEST(Ring, MixedValueAndEmbedding) {
    RingPtr Z8 = mixed_ring(2, 3);
    Elem five = Elem::from_int(Z8, 5);
    EXPECT_EQ(five.digits(), (std::vector<int>{1, 0, 1}));
    EXPECT_EQ(five.mixed_value(), 5u);
    RingPtr Z9 = mixed_ring(3, 2);
    EXPECT_EQ(Elem::from_int(Z9, 5).mixed_value(), 5u);
    EXPECT_TRUE(Elem::from_int(Z9, 5).inv().same_value(Elem::from_int(Z9, 2))); // 5*2 = 10 = 1
}

TEST(Ring, AdditiveValueCanonicalization) {
    EXPECT_EQ(AdditiveValue::make(2, 2, 2), AdditiveValue::make(1, 1, 2)); // 2/4 = 1/2
    EXPECT_EQ(AdditiveValue::make(3, 2, 3), AdditiveValue::make(1, 1, 3)); // 3/9 = 1/3
    EXPECT_TRUE(AdditiveValue::make(0, 5, 3).is_zero());
    EXPECT_TRUE((AdditiveValue::make(1, 1, 2) + AdditiveValue::make(1, 1, 2)).is_zero());
    EXPECT_EQ(AdditiveValue::make(1, 2, 3).scaled(3), AdditiveValue::make(1, 1, 3));
    EXPECT_EQ(AdditiveValue::make(1, 1, 2).str(), "1/2");
    EXPECT_EQ(AdditiveValue::zero(2).str(), "0");
}

TEST(Ring, PsiFrozenValues) {
    // equal characteristic, q = 2: psi(1) = Tr(1)/2 = 1/2
    RingPtr R2 = equal_ring(2, 1, 2);
    EXPECT_EQ(psi(Elem::one(R2, 2)), AdditiveValue::make(1, 1, 2));
    // psi kills the maximal ideal
    EXPECT_TRUE(psi(Elem::from_digits(R2, {0, 1})).is_zero());
    // q = 4: Tr(1) = 0 but Tr(x) = 1
    RingPtr F4 = equal_ring(2, 2, 2);
    EXPECT_TRUE(psi(Elem::one(F4, 2)).is_zero());
    EXPECT_EQ(psi(Elem::from_digits(F4, {2, 0})), AdditiveValue::make(1, 1, 2));
    // mixed, p = 2: psi(1) = 1/2 and psi factors through the residue for s = 0
    RingPtr Z4 = mixed_ring(2, 2);
    EXPECT_EQ(psi(Elem::from_int(Z4, 1)), AdditiveValue::make(1, 1, 2));
    EXPECT_EQ(psi(Elem::from_int(Z4, 3)), psi(Elem::from_int(Z4, 1)));
    // mixed, p = 3, one step of denominator: psi(1/3) = 1/9 with x = pi^{-1} * 1
    RingPtr Z9 = mixed_ring(3, 2);
    EXPECT_EQ(psi(FracElem{1, Elem::from_int(Z9, 1)}), AdditiveValue::make(1, 2, 3));
    // dividing pi out of both slots changes nothing: psi(3/3) = psi(1) = 1/3
    EXPECT_EQ(psi(FracElem{1, Elem::from_int(Z9, 3)}), AdditiveValue::make(1, 1, 3));
}

TEST(Ring, PsiNeedsOneDigitBeyondTheDenominator) {
    RingPtr Z9 = mixed_ring(3, 2);
    EXPECT_THROW(psi(FracElem{1, Elem::from_int(Z9, 1).reduced(1)}), InsufficientPrecision);
    RingPtr R = equal_ring(2, 1, 3);
    EXPECT_THROW(psi(FracElem{2, Elem::one(R, 2)}), InsufficientPrecision);
    EXPECT_NO_THROW(psi(FracElem{2, Elem::one(R, 3)}));
}

TEST(Ring, PsiIsAdditiveExhaustive) {
    for (const RingPtr& R : {equal_ring(3, 1, 2), mixed_ring(3, 2), equal_ring(2, 2, 1)}) {
        const std::uint64_t total = upow(static_cast<std::uint64_t>(R->q), R->rw);
        for (std::uint64_t i = 0; i < total; ++i)
            for (std::uint64_t j = 0; j < total; ++j) {
                Elem a = ring::elem_from_rank(R, i, R->rw);
                Elem b = ring::elem_from_rank(R, j, R->rw);
                EXPECT_EQ(psi(add(a, b)), psi(a) + psi(b));
            }
    }
}

TEST(Ring, FracHelpers) {
    RingPtr R = equal_ring(2, 1, 3);
    Elem u = Elem::from_digits(R, {1, 1, 0});
    Elem v = Elem::from_digits(R, {1, 0, 1});
    FracElem prod = frac_mul(frac(u, 1), frac(v, 2));
    EXPECT_EQ(prod.s, 3);
    EXPECT_TRUE(prod.u.same_value(mul(u, v)));
    FracElem sum = frac_add(frac(u, 1), frac(v, 1));
    EXPECT_EQ(sum.s, 1);
    EXPECT_TRUE(sum.u.same_value(add(u, v)));
    FracElem norm = ring::frac_normalized(FracElem{2, Elem::from_digits(R, {0, 1, 1})});
    EXPECT_EQ(norm.s, 1);
    EXPECT_EQ(norm.u.digits(), (std::vector<int>{1, 1}));
}
