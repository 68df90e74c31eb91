#include "cusptype/orders.hpp"

#include <limits>

namespace cusptype::orders {

namespace {

void check_domain(const FracMat& x, const Order& o) {
    if (o.dim < 1) throw BadArgument("order dimension must be positive");
    if (x.n() != o.dim) throw DomainMismatch("matrix size does not match the order");
}

int ceil_div(int a, int b) { // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

} // namespace

int ramification(const Order& o) { return o.kind == OrderKind::M ? 1 : o.dim; }

Mat uniformizer_mat(const RingPtr& R, const Order& o, int prec) {
    const int n = o.dim;
    Elem pi = Elem::from_digits(R, {0, 1}, prec);
    if (o.kind == OrderKind::M) return Mat::scalar(R, n, pi);
    Mat m = Mat::zero(R, n, prec);
    for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = Elem::one(R, prec);
    m.at(n - 1, 0) = pi;
    return m;
}

FracMat pi_power(const RingPtr& R, const Order& o, int k, int prec) {
    const int n = o.dim;
    const int e = ramification(o);
    int t = 0;
    if (k < 0) {
        t = ceil_div(-k, e);
        k += t * e;
    }
    Mat m = Mat::zero(R, n, prec);
    if (o.kind == OrderKind::M) {
        std::vector<int> digits(static_cast<std::size_t>(k) + 1, 0);
        digits.back() = 1;
        Elem pik = Elem::from_digits(R, digits, prec);
        for (int i = 0; i < n; ++i) m.at(i, i) = pik;
    } else {
        // Pi^k is monomial: entry (i, (i+k) mod n) = pi^{floor((i+k)/n)}
        for (int i = 0; i < n; ++i) {
            int a = (i + k) / n;
            std::vector<int> digits(static_cast<std::size_t>(a) + 1, 0);
            digits.back() = 1;
            m.at(i, (i + k) % n) = Elem::from_digits(R, digits, prec);
        }
    }
    return {t, m};
}

int entry_bound(const Order& o, int m, int i, int j) {
    if (o.kind == OrderKind::M) return m;
    return ceil_div(m + i - j, o.dim);
}

bool in_P(const FracMat& x, const Order& o, int m) {
    check_domain(x, o);
    for (int i = 0; i < o.dim; ++i)
        for (int j = 0; j < o.dim; ++j) {
            int b = entry_bound(o, m, i, j) + x.s;
            if (b <= 0) continue;
            Val v = x.m.at(i, j).valuation();
            if (v.exact) {
                if (v.v < b) return false;
            } else if (v.v < b) {
                throw InsufficientPrecision("membership undecidable at this precision");
            }
        }
    return true;
}

bool in_U(const FracMat& x, const Order& o, int m) {
    check_domain(x, o);
    if (m < 0) throw BadArgument("unit filtration index must be >= 0");
    const auto& R = x.ring();
    if (m >= 1) {
        FracMat y = matlin::frac_sub(x, matlin::frac(Mat::identity(R, o.dim, R->rw), 0));
        return in_P(y, o, m);
    }
    if (!in_P(x, o, 0)) return false;
    Mat y = matlin::integral_part(x);
    if (o.kind == OrderKind::M)
        return matlin::kmat_rank(matlin::kmat_residue(y)) == o.dim;
    for (int i = 0; i < o.dim; ++i) {
        const Elem& d = y.at(i, i);
        if (d.prec() < 1) throw PrecisionTooLow("unit test needs the diagonal residues");
        if (d.digit(0) == 0) return false;
    }
    return true;
}

Val nu(const FracMat& x, const Order& o) {
    check_domain(x, o);
    const int n = o.dim;
    const int inf = std::numeric_limits<int>::max() / 2;
    int exact_min = inf, atleast_min = inf;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Val v = x.m.at(i, j).valuation();
            int eff = v.v - x.s;
            int m = o.kind == OrderKind::M ? eff : n * eff + (j - i);
            if (v.exact) exact_min = std::min(exact_min, m);
            else atleast_min = std::min(atleast_min, m);
        }
    if (exact_min <= atleast_min) {
        if (exact_min == inf) return Val::AtLeast(atleast_min); // fully invisible
        return Val::Exact(exact_min);
    }
    return Val::AtLeast(atleast_min);
}

PiDecomp decompose(const FracMat& x, const Order& o) {
    check_domain(x, o);
    Val jv = nu(x, o);
    if (!jv.exact) throw InsufficientPrecision("decomposition needs the exact order valuation");
    const int n = o.dim;
    const int e_len = o.kind == OrderKind::M ? 1 : n;
    int ju = jv.v + x.s * e_len; // valuation of the integral part, >= 0

    Mat B = x.m;
    if (o.kind == OrderKind::M) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) B.at(i, j) = B.at(i, j).shifted_down(ju);
    } else {
        for (int t = 0; t < ju; ++t) {
            // one application of Pi^{-1}: rows rotate down, the wrapped row
            // sheds a factor of pi
            std::vector<Elem> last;
            for (int j = 0; j < n; ++j) last.push_back(B.at(n - 1, j).shifted_down(1));
            for (int i = n - 1; i >= 1; --i)
                for (int j = 0; j < n; ++j) B.at(i, j) = B.at(i - 1, j);
            for (int j = 0; j < n; ++j) B.at(0, j) = last[static_cast<std::size_t>(j)];
        }
    }
    if (!in_U(matlin::frac(B, 0), o, 0))
        throw NotInNormalizer("element is not Pi^j times a unit of the order");
    return {jv.v, B};
}

} // namespace cusptype::orders
