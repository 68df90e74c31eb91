#pragma once

#include "cusptype/matlin.hpp"

// The two principal hereditary orders in M_n(F) up to conjugacy: the maximal
// order M = M_n(O) and the Iwahori-type order I (integral entries, lower
// triangle divisible by pi).  Everything here is phrased through the radical
// filtration P^m and the prime element Pi, with Pi_M = pi*Id and Pi_I the
// cyclic-shift matrix; Pi^e = pi*Id where e is the ramification index.
namespace cusptype::orders {

using ring::Elem;
using ring::RingPtr;
using ring::Val;
using matlin::FracMat;
using matlin::Mat;

enum class OrderKind { M, I };

struct Order {
    OrderKind kind = OrderKind::M;
    int dim = 1;
};

// ramification index e: 1 for M, dim for I
int ramification(const Order& o);

// the prime element Pi as an integral matrix at the given precision
Mat uniformizer_mat(const RingPtr& R, const Order& o, int prec);

// Pi^k for any integer k, as a fractional matrix
FracMat pi_power(const RingPtr& R, const Order& o, int k, int prec);

// minimal valuation required of entry (i, j) for membership in P^m
int entry_bound(const Order& o, int m, int i, int j);

// x in P^m, decided at the available precision: throws InsufficientPrecision
// when some entry is too shallow to certify either way
bool in_P(const FracMat& x, const Order& o, int m);

// m = 0: x a unit of the order; m >= 1: x in U^m = 1 + P^m
bool in_U(const FracMat& x, const Order& o, int m);

// the order valuation: largest m with x in P^m; AtLeast when every visible
// digit is zero somewhere critical
Val nu(const FracMat& x, const Order& o);

// x = Pi^j * unit with unit in U; the canonical form of an element of the
// normalizer K(A) = U ⋊ <Pi>
struct PiDecomp {
    int j = 0;
    Mat unit;
};

// throws NotInNormalizer when no such form exists, InsufficientPrecision when
// nu(x) is not exactly visible
PiDecomp decompose(const FracMat& x, const Order& o);

} // namespace cusptype::orders
