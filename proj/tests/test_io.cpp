#include "cusptype/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

using namespace cusptype;
using io::json;
using matlin::Mat;
using ring::Elem;
using ring::Kind;
using ring::Ring;
using ring::RingPtr;

namespace {

RingPtr equal_ring(int p, int f, int rw) { return Ring::make({Kind::Equal, p, f, rw, {}}); }
RingPtr mixed_ring(int p, int rw) { return Ring::make({Kind::Mixed, p, 1, rw, {}}); }

} // namespace

TEST(Io, RingRoundTripPreservesEveryField) {
    for (const RingPtr& R : {equal_ring(3, 1, 4), equal_ring(2, 2, 2), mixed_ring(5, 2)}) {
        json j = io::ring_to_json(R);
        RingPtr back = io::ring_from_json(j);
        EXPECT_EQ(back->token(), R->token());
        EXPECT_EQ(back->modulus, R->modulus);
    }
}

TEST(Io, RingInputAcceptsOmittedDefaults) {
    // "f" defaults to 1, and the residue-field modulus may be left out
    RingPtr plain = io::ring_from_json(json{{"kind", "mixed"}, {"p", 2}, {"r", 3}});
    EXPECT_EQ(plain->token(), mixed_ring(2, 3)->token());
    RingPtr f4 = io::ring_from_json(json{{"kind", "equal"}, {"p", 2}, {"f", 2}, {"r", 2}});
    EXPECT_EQ(f4->modulus, (std::vector<int>{1, 1, 1}));
}

TEST(Io, RingInputRejectsUnknownKinds) {
    EXPECT_THROW(io::ring_from_json(json::array()), BadArgument);
    EXPECT_THROW(io::ring_from_json(json{{"kind", "padic"}, {"p", 2}, {"r", 1}}), BadArgument);
}

TEST(Io, ElementEncodingsByRingKind) {
    // equal characteristic always serializes as a digit array, even at f = 1
    Elem t = Elem::one(equal_ring(2, 1, 3), 3).shifted_up(1);
    EXPECT_EQ(io::elem_to_json(t), json::array({0, 1, 0}));
    // mixed characteristic serializes as a plain integer
    Elem five = Elem::from_int(mixed_ring(2, 3), 5, 3);
    EXPECT_EQ(io::elem_to_json(five), json(5));
}

TEST(Io, ElementInputPadsAndValidates) {
    RingPtr R = equal_ring(2, 1, 3);
    // short arrays are zero-padded up to the working precision
    Elem e = io::elem_from_json(R, json::array({1}));
    EXPECT_EQ(e.prec(), 3);
    EXPECT_TRUE(e.same_value(Elem::one(R, 3)));
    // integers are accepted when the residue field is prime, and land in the
    // prime subfield: 3 = 1 in characteristic two
    EXPECT_TRUE(io::elem_from_json(R, json(3)).same_value(Elem::one(R, 3)));
    EXPECT_THROW(io::elem_from_json(R, json::array({1, 0, 1, 0})), BadArgument);
    EXPECT_THROW(io::elem_from_json(equal_ring(2, 2, 2), json(3)), BadArgument);
    EXPECT_THROW(io::elem_from_json(R, json("t")), BadArgument);
}

TEST(Io, MatrixRoundTrip) {
    for (const RingPtr& R : {equal_ring(2, 2, 2), mixed_ring(3, 2)}) {
        Mat m = Mat::zero(R, 2, R->rw);
        std::uint64_t c = 1; // distinct small ranks, within every ring here
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j, ++c) m.at(i, j) = ring::elem_from_rank(R, c, R->rw);
        Mat back = io::mat_from_json(io::mat_to_json(m));
        EXPECT_TRUE(back.same_value(m));
        EXPECT_EQ(back.ring()->token(), R->token());
    }
}

TEST(Io, MatrixInputValidation) {
    RingPtr R = equal_ring(2, 1, 2);
    json good = io::mat_to_json(Mat::identity(R, 2, 2));
    json bad_rows = good;
    bad_rows["entries"].erase(1);
    EXPECT_THROW(io::mat_from_json(bad_rows), BadArgument);
    json bad_n = good;
    bad_n["n"] = 9;
    EXPECT_THROW(io::mat_from_json(bad_n), BadArgument);
    EXPECT_THROW(io::mat_from_json(json("[]")), BadArgument);
}

TEST(Io, StratumRoundTrip) {
    RingPtr R = equal_ring(2, 1, 3);
    Mat u = orders::uniformizer_mat(R, orders::Order{orders::OrderKind::I, 2}, 3);
    strata::Stratum st{orders::Order{orders::OrderKind::I, 2}, 1, matlin::frac(u, 1)};
    strata::Stratum back = io::stratum_from_json(io::stratum_to_json(st));
    EXPECT_EQ(back.order.kind, st.order.kind);
    EXPECT_EQ(back.order.dim, st.order.dim);
    EXPECT_EQ(back.level, st.level);
    EXPECT_EQ(back.beta.s, st.beta.s);
    EXPECT_TRUE(back.beta.m.same_value(st.beta.m));

    json neg = io::stratum_to_json(st);
    neg["beta"]["s"] = -1;
    EXPECT_THROW(io::stratum_from_json(neg), BadArgument);
}

TEST(Io, FlatEncodings) {
    RingPtr R = equal_ring(2, 1, 2);
    Mat id = Mat::identity(R, 2, 2);
    EXPECT_EQ(io::encode_mat(id, 2), "1.0;0.0;0.0;1.0");
    EXPECT_EQ(io::encode_mat(id, 1), "1;0;0;1");
    // (x - 1)^2 = 1 + 0 x + x^2 over residue characteristic two
    EXPECT_EQ(io::encode_opoly(matlin::charpoly(id), 2), "1.0;0.0;1.0");
    EXPECT_THROW(io::encode_mat(id.reduced(1), 2), InsufficientPrecision);
}

TEST(Io, AtlasCsvShapeAndDeterminism) {
    RingPtr R = equal_ring(2, 1, 1);
    auto rows = orbits::atlas(R, 2, 2);
    std::string csv = io::atlas_csv(rows);
    std::string again = io::atlas_csv(orbits::atlas(R, 2, 2));
    EXPECT_EQ(csv, again);

    std::vector<std::string> lines;
    std::string cur;
    for (char ch : csv) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    EXPECT_TRUE(cur.empty()); // trailing newline
    ASSERT_EQ(lines.size(), 1u + rows.size());
    EXPECT_EQ(lines[0],
              "ring,n,r,l,lp,class_id,canonical_rep,charpoly,label,j,twist_c,verdict,regular,"
              "class_size");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), ','), 13);
        const std::string prefix = "equal:p2:f1:r1,2,2,1,1," + std::to_string(i - 1) + ",";
        EXPECT_EQ(lines[i].rfind(prefix, 0), 0u) << lines[i];
    }
}

TEST(Io, ReportFieldOrderIsStable) {
    json plain = io::report("closure", json{{"q", 2}}, true);
    EXPECT_EQ(plain.dump(), R"({"check":"closure","params":{"q":2},"pass":true})");
    json with = io::report("closure", json{{"q", 2}}, false, json{{"key", 7}});
    EXPECT_EQ(with.dump(), R"({"check":"closure","params":{"q":2},"pass":false,"witness":{"key":7}})");
}
