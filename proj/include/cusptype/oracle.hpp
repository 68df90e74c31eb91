#pragma once

#include "cusptype/orbits.hpp"

// Independent brute-force re-computations of the library's main answers.
// Everything here is written in the most literal way possible — full
// enumerations and definitional checks only — so the optimized routines can
// be validated against it.
namespace cusptype::oracle {

using matlin::FracMat;
using matlin::Mat;
using ring::RingPtr;

inline constexpr std::uint64_t kBruteGuard = UINT64_C(1) << 20;

// Conjugacy classes of M_n(O/p^lp) under GL_n(O/p^lp), as sorted key blocks
// ordered by least member.  Enumerates the whole group action.
std::vector<std::vector<std::uint64_t>> brute_conjugacy_partition(
    const RingPtr& R, int n, int lp, std::uint64_t guard = kBruteGuard);

// Does the class meet Pi^j * U_I, checked by enumerating every unit of the
// standard minimal hereditary order at the class precision?
bool brute_coset_intersect(const orbits::Orbit& o, int j, std::uint64_t guard = kBruteGuard);

// Minimality of a fractional matrix by the two-route cascade:
//   A: exact lattice valuation, unit-scale, residue minimal polynomial
//      irreducible of full degree  -> minimal;
//   B: decompose over the minimal hereditary order, valuation coprime to the
//      dimension  -> minimal / not minimal.
// Throws InconclusiveFieldData when neither route decides.
bool brute_minimality(const FracMat& beta);

} // namespace cusptype::oracle
