#pragma once

#include "cusptype/orders.hpp"

#include <string>
#include <utility>

// Conjugacy classes of matrices over O/p^{lp} under GL_n(O/p^{lp}), scalar
// twisting, and the classification of classes by the two concrete shapes the
// small-conductor criterion accepts: irreducible residue charpoly, or a
// Pi_I^j-unit form.  The conductor r splits as r = l + lp with
// l = floor((r+1)/2); the class data lives at precision lp.
namespace cusptype::orbits {

using matlin::Mat;
using ring::Elem;
using ring::RingPtr;

struct LevelData {
    int r = 2;
    int l = 1;
    int lp = 1;
};

LevelData level_data(int r); // r >= 2; l = floor((r+1)/2), lp = r - l

inline constexpr std::uint64_t kDefaultGuard = UINT64_C(1) << 24;

struct Orbit {
    RingPtr R;
    int n = 0;
    LevelData level;
    std::uint64_t canon = 0;             // key of the lex-least member
    std::vector<std::uint64_t> members;  // all member keys, ascending
};

// conjugating generators of GL_n(O/p^prec), paired with their inverses
std::vector<std::pair<Mat, Mat>> conjugators(const RingPtr& R, int n, int prec);

Mat orbit_rep(const Orbit& o); // decode the canonical representative

Orbit orbit_of(const Mat& rep, int r, std::uint64_t guard = kDefaultGuard);

// Complete list of classes at precision lp, ordered by canonical key.  The
// serial routine is the reference implementation (linear scan with a visited
// set); the parallel one canonicalizes each matrix independently with
// per-thread memoization and merges deterministically, so results are
// byte-identical for any worker count.
std::vector<Orbit> enumerate_classes_serial(const RingPtr& R, int n, int lp,
                                            std::uint64_t guard = kDefaultGuard);
std::vector<Orbit> enumerate_classes_parallel(const RingPtr& R, int n, int lp,
                                              std::uint64_t guard, int jobs);
std::vector<Orbit> enumerate_classes(const RingPtr& R, int n, int lp,
                                     std::uint64_t guard = kDefaultGuard, int jobs = 1);

Orbit twist(const Orbit& o, const Elem& c, std::uint64_t guard = kDefaultGuard);

// residue characteristic polynomial irreducible over F_q
bool detect_irred(const Orbit& o);

// some member equals Pi_I^j * B mod p^{lp} with B a unit of the Iwahori
// order; Newton prefilter, an Eisenstein fast path at j = 1, lp >= 2, and
// otherwise the literal coset scan
bool detect_piform(const Orbit& o, int j, std::uint64_t guard = kDefaultGuard);

bool is_regular_orbit(const Orbit& o);

enum class Verdict { IsType, NotType, IndeterminateSmallConductor };

std::string verdict_name(Verdict v);

struct ClassificationRecord {
    std::string label;         // IrredModP | PiForm | NoCriterion
    int j = 0;                 // Pi exponent when label == PiForm
    bool has_twist = false;
    std::uint64_t twist_c = 0; // rank of the twisting scalar c mod p^{lp}
    Verdict verdict = Verdict::NotType;
    bool regular = false;
};

ClassificationRecord classify(const Orbit& o, std::uint64_t guard = kDefaultGuard);

struct AtlasRow {
    Orbit orbit;
    ClassificationRecord record;
};

std::vector<AtlasRow> atlas(const RingPtr& R, int n, int r,
                            std::uint64_t guard = kDefaultGuard, int jobs = 1);

} // namespace cusptype::orbits
