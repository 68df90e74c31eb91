#include "cusptype/strata.hpp"

#include <cstdlib>
#include <numeric>

namespace cusptype::strata {

namespace {

bool small_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// decide nu(x) == target; AtLeast(k) with k > target settles it negatively
bool nu_equals(const FracMat& x, const Order& o, int target) {
    ring::Val v = orders::nu(x, o);
    if (v.exact) return v.v == target;
    if (v.v > target) return false;
    throw InsufficientPrecision("order valuation not visible at this precision");
}

// the integral unit-scale part of beta when nu_M(beta) = v: pi^{-v} beta
Mat unit_scaled(const FracMat& beta, int v) {
    return matlin::integral_part(matlin::frac_normalized(matlin::frac_shift(beta, v)));
}

} // namespace

void validate(const Stratum& s) {
    if (s.level < 1) throw BadArgument("stratum level must be >= 1");
    if (!orders::in_P(s.beta, s.order, -s.level))
        throw BadArgument("stratum needs nu(beta) >= -level");
}

bool equivalent(const Stratum& a, const Stratum& b) {
    if (a.order.kind != b.order.kind || a.order.dim != b.order.dim || a.level != b.level)
        throw DomainMismatch("strata equivalence needs a common order and level");
    validate(a);
    validate(b);
    return orders::in_P(matlin::frac_sub(a.beta, b.beta), a.order, 1 - a.level);
}

bool scalar_equivalent(const Stratum& s) {
    validate(s);
    const int n = s.order.dim;
    // if any scalar works, the (0,0) entry does: the difference of the two
    // scalars is integral and Id stays in P^{1-level} for level >= 1
    Mat zid = Mat::scalar(s.beta.ring(), n, s.beta.m.at(0, 0));
    FracMat diff = matlin::frac_sub(s.beta, FracMat{s.beta.s, zid});
    return orders::in_P(diff, s.order, 1 - s.level);
}

FieldCertificate field_certificate(const Stratum& s) {
    const int dim = s.order.dim;
    if (!small_prime(dim)) throw BadArgument("field certificates need prime dimension");

    // unramified reading: unit-scale under the maximal order and look at the
    // residue characteristic polynomial
    try {
        Order maximal{OrderKind::M, dim};
        ring::Val v = orders::nu(s.beta, maximal);
        if (v.exact) {
            Mat y = unit_scaled(s.beta, -v.v);
            if (matlin::kpoly_irreducible(matlin::residue(matlin::charpoly(y))))
                return {FieldKind::Unram, 1, dim};
        }
    } catch (const InsufficientPrecision&) {
    } catch (const PrecisionTooLow&) {
    }

    // totally ramified reading: Pi_I^v times a unit with v prime to dim
    try {
        Order iwahori{OrderKind::I, dim};
        orders::PiDecomp d = orders::decompose(s.beta, iwahori);
        if (d.j % dim != 0) return {FieldKind::TotRam, dim, 1};
    } catch (const NotInNormalizer&) {
    } catch (const InsufficientPrecision&) {
    } catch (const PrecisionTooLow&) {
    }

    return {FieldKind::Inconclusive, 0, 0};
}

int nu_E(const Stratum& s) {
    FieldCertificate cert = field_certificate(s);
    if (cert.kind == FieldKind::Inconclusive)
        throw InconclusiveFieldData("no field certificate for beta");
    ring::FracElem d = matlin::frac_det(s.beta);
    ring::Val v = d.u.valuation();
    if (!v.exact) throw InsufficientPrecision("valuation of det(beta) not visible");
    int vF_det = v.v - d.s;
    long long num = static_cast<long long>(cert.e) * vF_det;
    if (num % s.order.dim != 0)
        throw Error("internal check failed: det valuation incompatible with the certificate");
    return static_cast<int>(num / s.order.dim);
}

bool is_simple_via_criterion(const Stratum& s) {
    validate(s);
    if (scalar_equivalent(s)) throw ScalarEquivalent("stratum is scalar-equivalent");
    const int n = s.level;
    const int p = s.order.dim;

    if (!nu_equals(s.beta, s.order, -n)) return false;

    if (s.order.kind == OrderKind::M) {
        Mat y = unit_scaled(s.beta, n);
        return matlin::kpoly_irreducible(matlin::residue(matlin::charpoly(y)));
    }

    // Iwahori case: pi^{floor(n/p)+1} beta = Pi^j B with 0 < j < p wanted
    FracMat y = matlin::frac_shift(s.beta, n / p + 1);
    try {
        orders::PiDecomp d = orders::decompose(y, s.order);
        return 0 < d.j && d.j < p;
    } catch (const NotInNormalizer&) {
        return false;
    }
}

bool is_simple_via_definition(const Stratum& s) {
    validate(s);
    if (scalar_equivalent(s)) throw ScalarEquivalent("stratum is scalar-equivalent");

    // beta must lie in the normalizer with order valuation exactly -level;
    // this much is decidable without any field data
    try {
        orders::PiDecomp d = orders::decompose(s.beta, s.order);
        if (d.j != -s.level) return false;
    } catch (const NotInNormalizer&) {
        return false;
    }

    FieldCertificate cert = field_certificate(s);
    if (cert.kind == FieldKind::Inconclusive)
        throw InconclusiveFieldData("cannot certify F[beta] from truncated data");

    // residue generation holds for both certificate shapes: Unram certifies an
    // irreducible residue charpoly, TotRam has trivial residue extension
    return std::gcd(std::abs(nu_E(s)), cert.e) == 1;
}

AdditiveValue psi_beta(const Stratum& s, const Mat& x, int m) {
    validate(s);
    const int lo = s.level / 2 + 1;
    if (m < lo || m > s.level) throw BadArgument("psi_beta level outside its window");
    const auto& R = s.beta.ring();
    const int n = s.order.dim;
    if (!orders::in_U(matlin::frac(x, 0), s.order, m))
        throw NotInSubgroup("argument is not in U^m");
    FracMat y = matlin::frac_sub(matlin::frac(x, 0), matlin::frac(Mat::identity(R, n, R->rw), 0));
    ring::FracElem t = matlin::frac_trace(matlin::frac_mul(s.beta, y));
    return ring::psi(ring::frac_normalized(t));
}

int type_conductor(const Stratum& s) {
    if (!is_simple_via_criterion(s)) throw NotSimple("conductor formula needs a simple stratum");
    if (s.order.kind == OrderKind::M) return s.level + 1;
    return s.level / s.order.dim + 2;
}

} // namespace cusptype::strata
