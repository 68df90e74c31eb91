#include "cusptype/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace cusptype::oracle {

using matlin::frac;
using matlin::mat_from_key;
using matlin::mat_key;
using orders::Order;
using orders::OrderKind;
using ring::Val;

namespace {

std::uint64_t checked_pow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && r > (UINT64_C(1) << 62) / b) throw SizeGuard("enumeration size overflows");
        r *= b;
    }
    return r;
}

} // namespace

std::vector<std::vector<std::uint64_t>> brute_conjugacy_partition(const RingPtr& R, int n, int lp,
                                                                  std::uint64_t guard) {
    if (!R) throw BadArgument("partition needs a ring");
    if (n < 1 || lp < 1 || lp > R->rw) throw BadArgument("partition parameters out of range");
    const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(R->q), n * n * lp);
    if (total > guard) throw SizeGuard("conjugacy partition exceeds the guard");

    // every invertible g together with its inverse, both truncated to lp
    std::vector<std::pair<Mat, Mat>> gl;
    for (std::uint64_t key = 0; key < total; ++key) {
        Mat g = mat_from_key(R, n, lp, key);
        if (matlin::kmat_rank(matlin::kmat_residue(g)) != n) continue;
        gl.emplace_back(g, matlin::inverse(g));
    }

    std::vector<bool> seen(total, false);
    std::vector<std::vector<std::uint64_t>> blocks;
    for (std::uint64_t key = 0; key < total; ++key) {
        if (seen[key]) continue;
        Mat x = mat_from_key(R, n, lp, key);
        std::vector<std::uint64_t> block;
        for (const auto& [g, gi] : gl) {
            std::uint64_t y = mat_key(mul(mul(g, x), gi), lp);
            if (!seen[y]) {
                seen[y] = true;
                block.push_back(y);
            }
        }
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
    }
    return blocks;
}

bool brute_coset_intersect(const orbits::Orbit& o, int j, std::uint64_t guard) {
    if (!o.R) throw BadArgument("coset test needs a populated class");
    if (j <= 0 || j >= o.n) throw BadArgument("coset exponent must satisfy 0 < j < n");
    const auto& R = o.R;
    const int n = o.n;
    const int lp = o.level.lp;
    const Order io{OrderKind::I, n};
    const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(R->q), n * n * lp);
    if (total > guard) throw SizeGuard("coset enumeration exceeds the guard");
    const FracMat pij = orders::pi_power(R, io, j, R->rw);
    for (std::uint64_t key = 0; key < total; ++key) {
        Mat b = mat_from_key(R, n, lp, key);
        if (!orders::in_U(frac(b, 0), io, 0)) continue;
        Mat prod = matlin::integral_part(matlin::frac_mul(pij, frac(b, 0)));
        std::uint64_t pk = mat_key(prod.reduced(lp), lp);
        if (std::binary_search(o.members.begin(), o.members.end(), pk)) return true;
    }
    return false;
}

bool brute_minimality(const FracMat& beta) {
    if (!beta.m.valid()) throw BadArgument("minimality of an empty matrix");
    const int n = beta.n();
    const Order mo{OrderKind::M, n};
    const Order io{OrderKind::I, n};

    // route A: unramified-style generation visible in the lattice residue
    Val v = orders::nu(beta, mo);
    if (v.exact) {
        Mat scaled = matlin::integral_part(matlin::frac_normalized(matlin::frac_shift(beta, -v.v)));
        matlin::KPoly mp = matlin::kmat_minpoly(matlin::kmat_residue(scaled));
        if (mp.deg() == n && matlin::kpoly_irreducible(mp)) return true;
    }

    // route B: totally-ramified-style valuation over the minimal order
    try {
        orders::PiDecomp d = orders::decompose(beta, io);
        return std::gcd(d.j < 0 ? -d.j : d.j, n) == 1; // gcd(0, n) = n rejects units
    } catch (const NotInNormalizer&) {
    } catch (const InsufficientPrecision&) {
    }
    throw InconclusiveFieldData("neither minimality route decides");
}

} // namespace cusptype::oracle
