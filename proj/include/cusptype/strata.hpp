#pragma once

#include "cusptype/orders.hpp"

// Strata [A, n, n-1, beta]: a principal order, an integer level n >= 1 and a
// fractional matrix beta with nu_A(beta) >= -n.  The interesting predicate is
// simplicity, which we evaluate along two independent routes: the concrete
// matrix criterion (irreducible residue charpoly for M, a Pi^j-unit form with
// 0 < j < dim for I) and the field-theoretic definition (gcd of the induced
// valuation with the ramification index, plus residue generation).
namespace cusptype::strata {

using matlin::FracMat;
using matlin::Mat;
using orders::Order;
using orders::OrderKind;
using ring::AdditiveValue;
using ring::Elem;
using ring::RingPtr;

struct Stratum {
    Order order;
    int level = 1; // the n of [A, n, n-1, beta]
    FracMat beta;
};

// checks level >= 1 and nu(beta) >= -level; BadArgument otherwise
void validate(const Stratum& s);

// beta_1 - beta_2 in P^{1-level}; DomainMismatch unless order and level agree
bool equivalent(const Stratum& a, const Stratum& b);

// beta congruent to a scalar matrix mod P^{1-level}
bool scalar_equivalent(const Stratum& s);

// What we can certify about the algebra F[beta] from truncated data.  Unram:
// the residue characteristic polynomial of the unit-scaled beta is
// irreducible (so F[beta]/F is unramified of degree dim).  TotRam: beta is
// Pi_I^v times a unit with v coprime to dim (so F[beta]/F is totally ramified
// of degree dim).  Anything else stays Inconclusive; no guessing.
enum class FieldKind { Unram, TotRam, Inconclusive };

struct FieldCertificate {
    FieldKind kind = FieldKind::Inconclusive;
    int e = 0;     // ramification index of F[beta]/F
    int f_res = 0; // residue degree
};

// requires prime dim
FieldCertificate field_certificate(const Stratum& s);

// the E-valuation of beta computed through the determinant:
// nu_E(beta) = e * nu_F(det beta) / dim.  Throws InconclusiveFieldData when
// no certificate exists, InsufficientPrecision when det's valuation is hidden.
int nu_E(const Stratum& s);

// Both routes throw ScalarEquivalent on degenerate input (the hypotheses of
// the classification exclude scalar-equivalent strata).
bool is_simple_via_criterion(const Stratum& s);
bool is_simple_via_definition(const Stratum& s); // may throw InconclusiveFieldData

// psi_beta(x) = psi(tr(beta (x - 1))) for x in U^m, floor(level/2)+1 <= m <= level
AdditiveValue psi_beta(const Stratum& s, const Mat& x, int m);

// conductor of the types attached to a simple stratum: level+1 for M,
// floor(level/dim)+2 for I; NotSimple when the criterion fails
int type_conductor(const Stratum& s);

} // namespace cusptype::strata
