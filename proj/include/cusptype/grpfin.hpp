#pragma once

#include "cusptype/strata.hpp"

#include <functional>
#include <string>
#include <utility>

// Exhaustive finite-group computations inside GL_n(O/p^r) at desk scale:
// congruence-pattern subgroups, character stabilizers (brute force and via
// the algebra formula), conjugated intersections, one-dimensional characters
// built from a trace pairing, and the small-conductor test for GL_2.
namespace cusptype::grpfin {

using matlin::FracMat;
using matlin::Mat;
using orders::Order;
using orders::OrderKind;
using ring::AdditiveValue;
using ring::Elem;
using ring::RingPtr;

inline constexpr std::uint64_t kDefaultGuard = UINT64_C(1) << 24;

// one matrix entry constrained to delta mod p^depth (delta in {0,1}),
// optionally to unit residues
struct EntryPattern {
    int delta = 0;
    int depth = 0;
    bool unit = false;
};

// a congruence-pattern subset of M_n(O/p^r); the factories below all produce
// actual subgroups, which subgroup_elements re-verifies by closure
struct SubgroupSpec {
    RingPtr R;
    int n = 0;
    int r = 1;                     // elements live mod p^r
    std::vector<EntryPattern> pat; // n*n, row-major
    int diag_link_depth = 0;       // > 0: diagonal entries share one unit residue mod p^k
    bool invertible_only = false;

    EntryPattern& at(int i, int j) { return pat[static_cast<std::size_t>(i * n + j)]; }
    const EntryPattern& at(int i, int j) const { return pat[static_cast<std::size_t>(i * n + j)]; }
};

SubgroupSpec from_entries(const RingPtr& R, int n, int r, std::vector<EntryPattern> pat,
                          int diag_link_depth = 0, bool invertible_only = false);
SubgroupSpec full_gl(const RingPtr& R, int n, int r);
// U_A^m as an entry pattern; m = 0 gives the unit group of the order
SubgroupSpec unit_filtration(const RingPtr& R, const Order& o, int m, int r);
// the union over units a of (a+p, O; p, a+p): the mod-p^r span of the
// GL_2 character stabilizer
SubgroupSpec stab_span(const RingPtr& R, int r);
// (1, p^depth; 0, 1)
SubgroupSpec upper_unipotent(const RingPtr& R, int r, int upper_depth);

// complete sorted enumeration; throws NotAGroup if the set fails closure
std::vector<Mat> subgroup_elements(const SubgroupSpec& spec, std::uint64_t guard = kDefaultGuard);

// identity present, products and inverses inside; throws NotAGroup otherwise
void verify_closure(const std::vector<Mat>& elems, int prec);

// {g in GL_n(O/p^r) : g mod p^{lp} commutes with alpha_bar}, lp = prec(alpha_bar)
std::vector<Mat> stabilizer_bruteforce(const Mat& alpha_bar, int r,
                                       std::uint64_t guard = kDefaultGuard);

// n = 2 only: the set (O/p^r)[beta_hat]^x * (1 + p M_2), sorted
std::vector<Mat> stabilizer_formula(const Mat& beta_hat, int r,
                                    std::uint64_t guard = kDefaultGuard);

// g^{-1} (spec) g ∩ other = {x in other : g x g^{-1} in spec}, with membership
// of the conjugate decided entry-wise at its available precision (hidden
// digits may always be lifted to zero)
std::vector<Mat> conj_intersect(const SubgroupSpec& spec, const FracMat& g,
                                const SubgroupSpec& other, std::uint64_t guard = kDefaultGuard);

using Character = std::function<AdditiveValue(const Mat&)>;

// true iff chi vanishes on every element of spec
bool char_trivial_on(const Character& chi, const SubgroupSpec& spec,
                     std::uint64_t guard = kDefaultGuard);

// the two characters of the worked GL_2 example at conductor 2:
// theta_i(a Id + x) = psi(tr(a^{-1} beta_i x)) on the stab span S mod p^2,
// with beta_1 = pi^{-1} [[0,1],[pi,0]] and beta_2 = pi^{-1} [[0,1],[0,0]]
FracMat theta_beta(int which, const RingPtr& R);
Character theta_from_beta(const RingPtr& R, const FracMat& beta);
Character theta_build(int which, const RingPtr& R);

struct ThetaReport {
    bool well_defined = false;   // value independent of the (a, x) split
    bool multiplicative = false; // theta(st) = theta(s) + theta(t) on all pairs
    bool conductor_two = false;  // trivial on U^2, nontrivial on U^1
    bool contains_beta0 = false; // restriction to U^1 equals psi(tr(beta_1 .))
    bool pass() const { return well_defined && multiplicative && conductor_two && contains_beta0; }
};

ThetaReport theta_checks_for(const RingPtr& R, const FracMat& beta,
                             std::uint64_t guard = kDefaultGuard);
std::pair<ThetaReport, ThetaReport> theta_checks(const RingPtr& R,
                                                 std::uint64_t guard = kDefaultGuard);

// conductor-2/3 criterion for GL_2: theta agrees with psi_beta on
// U^{floor((r+1)/2)} and is nontrivial on (1, p^{r-2}; 0, 1)
bool gl2_small_conductor_check(const FracMat& beta, const Character& theta, int r,
                               std::uint64_t guard = kDefaultGuard);

// U_I^{i+pm} contains U_M^{2+m} for all 1 < i <= p+1, checked element-wise
// over an equal-characteristic ring with q = p at truncation r_w
bool verify_containment(int p, int m, int rw, std::uint64_t guard = kDefaultGuard);
// the bound is sharp: at i = p+2 a one-parameter probe element escapes
bool containment_sharpness_probe(int p, int m);

// every character of U_A^m / U_A^{m+1} that factors through det equals
// psi_b for a scalar b (exhaustive over the det-factoring characters)
bool det_character_scalar_check(const RingPtr& R, OrderKind kind, int n, int m,
                                std::uint64_t guard = kDefaultGuard);

struct Example4Line {
    std::string claim;
    bool expected = false;
    bool observed = false;
    bool pass() const { return expected == observed; }
};

// the worked conductor-2 example: two characters on the same orbit datum,
// one giving a type and one not
std::vector<Example4Line> example4(const RingPtr& R, std::uint64_t guard = kDefaultGuard);

} // namespace cusptype::grpfin
