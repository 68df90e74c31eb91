#include "cusptype/matlin.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace cusptype::matlin {

namespace {

void check_pair(const Mat& a, const Mat& b) {
    if (!a.valid() || !b.valid()) throw BadArgument("operation on an empty matrix");
    if (!a.ring()->same_as(*b.ring())) throw BadArgument("matrices live in different rings");
    if (a.n() != b.n()) throw BadArgument("matrix size mismatch");
}

} // namespace

Mat::Mat(RingPtr R, int n, std::vector<Elem> entries) : R_(std::move(R)), n_(n), a_(std::move(entries)) {
    if (n_ < 1 || static_cast<int>(a_.size()) != n_ * n_)
        throw BadArgument("matrix needs n*n entries");
    for (const auto& e : a_)
        if (!e.valid() || !e.ring()->same_as(*R_))
            throw BadArgument("matrix entry from a different ring");
}

Mat Mat::zero(const RingPtr& R, int n, int prec) {
    std::vector<Elem> a(static_cast<std::size_t>(n) * n, Elem::zero(R, prec));
    return Mat(R, n, std::move(a));
}

Mat Mat::identity(const RingPtr& R, int n, int prec) {
    Mat m = zero(R, n, prec);
    for (int i = 0; i < n; ++i) m.at(i, i) = Elem::one(R, prec);
    return m;
}

Mat Mat::scalar(const RingPtr& R, int n, const Elem& c) {
    Mat m = zero(R, n, c.prec());
    for (int i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

int Mat::prec() const {
    int pr = R_->rw;
    for (const auto& e : a_) pr = std::min(pr, e.prec());
    return pr;
}

Mat Mat::reduced(int new_prec) const {
    std::vector<Elem> a;
    a.reserve(a_.size());
    for (const auto& e : a_) a.push_back(e.reduced(std::min(new_prec, e.prec())));
    return Mat(R_, n_, std::move(a));
}

Mat Mat::zero_extended(int new_prec) const {
    std::vector<Elem> a;
    a.reserve(a_.size());
    for (const auto& e : a_) a.push_back(e.prec() >= new_prec ? e : e.zero_extended(new_prec));
    return Mat(R_, n_, std::move(a));
}

bool Mat::same_value(const Mat& o) const {
    if (!valid() || !o.valid() || n_ != o.n_ || !R_->same_as(*o.R_)) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (!a_[i].same_value(o.a_[i])) return false;
    return true;
}

Mat Mat::transposed() const {
    Mat t = *this;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t.at(i, j) = at(j, i);
    return t;
}

Mat add(const Mat& a, const Mat& b) {
    check_pair(a, b);
    std::vector<Elem> c;
    c.reserve(a.a_.size());
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.push_back(ring::add(a.a_[i], b.a_[i]));
    return Mat(a.R_, a.n_, std::move(c));
}

Mat sub(const Mat& a, const Mat& b) {
    check_pair(a, b);
    std::vector<Elem> c;
    c.reserve(a.a_.size());
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.push_back(ring::sub(a.a_[i], b.a_[i]));
    return Mat(a.R_, a.n_, std::move(c));
}

Mat neg(const Mat& a) {
    std::vector<Elem> c;
    c.reserve(a.a_.size());
    for (const auto& e : a.a_) c.push_back(ring::neg(e));
    return Mat(a.R_, a.n_, std::move(c));
}

Mat mul(const Mat& a, const Mat& b) {
    check_pair(a, b);
    const int n = a.n_;
    Mat c = Mat::zero(a.R_, n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Elem s = ring::mul(a.at(i, 0), b.at(0, j));
            for (int k = 1; k < n; ++k) s = ring::add(s, ring::mul(a.at(i, k), b.at(k, j)));
            c.at(i, j) = s;
        }
    return c;
}

Mat Mat::scaled(const Elem& c) const {
    std::vector<Elem> a;
    a.reserve(a_.size());
    for (const auto& e : a_) a.push_back(ring::mul(e, c));
    return Mat(R_, n_, std::move(a));
}

Mat Mat::shifted_up(int k) const {
    std::vector<Elem> a;
    a.reserve(a_.size());
    for (const auto& e : a_) a.push_back(e.shifted_up(k));
    return Mat(R_, n_, std::move(a));
}

Elem trace(const Mat& m) {
    Elem s = m.at(0, 0);
    for (int i = 1; i < m.n(); ++i) s = ring::add(s, m.at(i, i));
    return s;
}

namespace {

Mat minor_of(const Mat& m, int row, int col) {
    const int n = m.n();
    Mat s = Mat::zero(m.ring(), n - 1, 0);
    for (int i = 0, si = 0; i < n; ++i) {
        if (i == row) continue;
        for (int j = 0, sj = 0; j < n; ++j) {
            if (j == col) continue;
            s.at(si, sj) = m.at(i, j);
            ++sj;
        }
        ++si;
    }
    return s;
}

} // namespace

Elem det(const Mat& m) {
    const int n = m.n();
    if (n > 8) throw DimensionTooLarge("determinant supported up to n = 8");
    if (n == 1) return m.at(0, 0);
    Elem s = Elem::zero(m.ring(), m.at(0, 0).prec());
    for (int j = 0; j < n; ++j) {
        Elem t = ring::mul(m.at(0, j), det(minor_of(m, 0, j)));
        s = (j % 2 == 0) ? ring::add(s, t) : ring::sub(s, t);
    }
    return s;
}

Mat adjugate(const Mat& m) {
    const int n = m.n();
    if (n == 1) return Mat::identity(m.ring(), 1, m.at(0, 0).prec());
    Mat adj = Mat::zero(m.ring(), n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Elem c = det(minor_of(m, i, j));
            if ((i + j) % 2 == 1) c = ring::neg(c);
            adj.at(j, i) = c; // transposed cofactor
        }
    return adj;
}

Mat inverse(const Mat& m) {
    Elem d = det(m);
    return adjugate(m).scaled(d.inv());
}

// --- fractional matrices ------------------------------------------------------

FracMat frac(const Mat& m, int s) {
    if (s < 0) throw BadArgument("frac: s must be >= 0");
    return {s, m};
}

FracMat frac_add(const FracMat& a, const FracMat& b) {
    int s = std::max(a.s, b.s);
    return {s, add(a.m.shifted_up(s - a.s), b.m.shifted_up(s - b.s))};
}

FracMat frac_sub(const FracMat& a, const FracMat& b) {
    int s = std::max(a.s, b.s);
    return {s, sub(a.m.shifted_up(s - a.s), b.m.shifted_up(s - b.s))};
}

FracMat frac_mul(const FracMat& a, const FracMat& b) { return {a.s + b.s, mul(a.m, b.m)}; }

FracMat frac_scaled(const FracMat& a, const FracElem& c) { return {a.s + c.s, a.m.scaled(c.u)}; }

FracMat frac_shift(const FracMat& a, int k) {
    int net = a.s - k;
    if (net >= 0) return {net, a.m};
    return {0, a.m.shifted_up(-net)};
}

FracMat frac_normalized(const FracMat& a) {
    int strip = a.s;
    for (int i = 0; i < a.n() && strip > 0; ++i)
        for (int j = 0; j < a.n() && strip > 0; ++j)
            strip = std::min(strip, a.m.at(i, j).valuation().v);
    if (strip == 0) return a;
    Mat m = a.m;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) m.at(i, j) = m.at(i, j).shifted_down(strip);
    return {a.s - strip, m};
}

Mat integral_part(const FracMat& a) {
    if (a.s == 0) return a.m;
    Mat m = a.m;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) m.at(i, j) = m.at(i, j).shifted_down(a.s);
    return m;
}

FracElem frac_trace(const FracMat& a) { return {a.s, trace(a.m)}; }

FracElem frac_det(const FracMat& a) { return {a.s * a.n(), det(a.m)}; }

FracMat frac_inverse(const FracMat& g) {
    Elem D = det(g.m);
    Val v = D.valuation();
    if (!v.exact) throw InsufficientPrecision("inverse needs the exact valuation of the determinant");
    Elem unit = D.shifted_down(v.v);
    Mat core = adjugate(g.m).scaled(unit.inv());
    // g = pi^{-s} m  =>  g^{-1} = pi^{s - v} (adj(m) / unit)
    return frac_shift(frac(core, 0), g.s - v.v);
}

// --- polynomials over the ring -------------------------------------------------

int OPoly::prec() const {
    int pr = R->rw;
    for (const auto& e : c) pr = std::min(pr, e.prec());
    return pr;
}

namespace {

using PolyVec = std::vector<Elem>; // constant-first

PolyVec pv_add(const RingPtr& R, const PolyVec& a, const PolyVec& b) {
    PolyVec c(std::max(a.size(), b.size()), Elem());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.size() && i < b.size()) c[i] = ring::add(a[i], b[i]);
        else if (i < a.size()) c[i] = a[i];
        else c[i] = b[i];
    }
    (void)R;
    return c;
}

PolyVec pv_mul(const RingPtr& R, const PolyVec& a, const PolyVec& b, int prec_hint) {
    if (a.empty() || b.empty()) return {};
    PolyVec c(a.size() + b.size() - 1, Elem::zero(R, prec_hint));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = ring::add(c[i + j], ring::mul(a[i], b[j]));
    return c;
}

PolyVec pv_neg(const PolyVec& a) {
    PolyVec c;
    c.reserve(a.size());
    for (const auto& e : a) c.push_back(ring::neg(e));
    return c;
}

} // namespace

OPoly charpoly(const Mat& m) {
    const int n = m.n();
    if (n > 6) throw DimensionTooLarge("characteristic polynomial supported up to n = 6");
    const auto& R = m.ring();
    const int pr = m.prec();

    // entries of xI - M as degree <= 1 polynomials, everything at the matrix
    // precision so the result is uniform
    std::vector<PolyVec> P(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PolyVec e;
            e.push_back(ring::neg(m.at(i, j).reduced(pr)));
            if (i == j) e.push_back(Elem::one(R, pr));
            P[static_cast<std::size_t>(i * n + j)] = std::move(e);
        }

    // division-free determinant of the polynomial matrix, expanding along the
    // first active row; memoized on the active-column mask
    std::unordered_map<unsigned, PolyVec> memo;
    std::function<PolyVec(unsigned)> go = [&](unsigned mask) -> PolyVec {
        if (mask == 0) return PolyVec{Elem::one(R, pr)};
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int row = n - __builtin_popcount(mask);
        PolyVec acc; // zero polynomial
        int pos = 0;
        for (int col = 0; col < n; ++col) {
            if (!(mask & (1u << col))) continue;
            PolyVec term = pv_mul(R, P[static_cast<std::size_t>(row * n + col)], go(mask & ~(1u << col)), pr);
            if (pos % 2 == 1) term = pv_neg(term);
            acc = acc.empty() ? term : pv_add(R, acc, term);
            ++pos;
        }
        memo.emplace(mask, acc);
        return acc;
    };

    PolyVec out = go((1u << n) - 1);
    out.resize(static_cast<std::size_t>(n) + 1, Elem::zero(R, pr));
    for (auto& e : out) e = e.reduced(std::min(pr, e.prec()));
    return OPoly{R, std::move(out)};
}

namespace {
bool is_visibly_one(const Elem& e) {
    if (e.prec() < 1 || e.digit(0) != 1) return false;
    for (int i = 1; i < e.prec(); ++i)
        if (e.digit(i) != 0) return false;
    return true;
}
} // namespace

Mat companion(const OPoly& f) {
    const int n = f.deg();
    if (n < 1) throw BadArgument("companion matrix needs degree >= 1");
    if (!is_visibly_one(f.c.back())) throw BadArgument("companion matrix needs a monic polynomial");
    const int pr = f.prec();
    Mat C = Mat::zero(f.R, n, pr);
    for (int i = 1; i < n; ++i) C.at(i, i - 1) = Elem::one(f.R, pr);
    for (int i = 0; i < n; ++i) C.at(i, n - 1) = ring::neg(f.c[static_cast<std::size_t>(i)].reduced(pr));
    return C;
}

Mat opoly_eval(const OPoly& f, const Mat& m) {
    const int n = m.n();
    Mat acc = Mat::scalar(f.R, n, f.c.back());
    for (int i = f.deg() - 1; i >= 0; --i)
        acc = add(mul(acc, m), Mat::scalar(f.R, n, f.c[static_cast<std::size_t>(i)]));
    return acc;
}

KPoly residue(const OPoly& f) {
    std::vector<int> c;
    for (const auto& e : f.c) {
        if (e.prec() < 1) throw PrecisionTooLow("residue needs at least one digit per coefficient");
        c.push_back(e.digit(0));
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    return KPoly{f.R, std::move(c)};
}

// --- F_q[x] -----------------------------------------------------------------

namespace {
std::vector<int> ktrim(std::vector<int> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}
} // namespace

KPoly kadd(const KPoly& a, const KPoly& b) {
    const auto& R = a.R;
    std::vector<int> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        int x = i < a.c.size() ? a.c[i] : 0;
        int y = i < b.c.size() ? b.c[i] : 0;
        c[i] = R->radd(x, y);
    }
    return KPoly{R, ktrim(std::move(c))};
}

KPoly ksub(const KPoly& a, const KPoly& b) {
    const auto& R = a.R;
    std::vector<int> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        int x = i < a.c.size() ? a.c[i] : 0;
        int y = i < b.c.size() ? b.c[i] : 0;
        c[i] = R->rsub(x, y);
    }
    return KPoly{R, ktrim(std::move(c))};
}

KPoly kmul(const KPoly& a, const KPoly& b) {
    const auto& R = a.R;
    if (a.c.empty() || b.c.empty()) return KPoly{R, {}};
    std::vector<int> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = R->radd(c[i + j], R->rmul(a.c[i], b.c[j]));
    return KPoly{R, ktrim(std::move(c))};
}

KPoly kmod(const KPoly& a, const KPoly& b) {
    const auto& R = a.R;
    if (b.c.empty()) throw BadArgument("polynomial division by zero");
    std::vector<int> r = a.c;
    int linv = R->rinv(b.c.back());
    while (r.size() >= b.c.size()) {
        int c = R->rmul(r.back(), linv);
        std::size_t shift = r.size() - b.c.size();
        for (std::size_t i = 0; i < b.c.size(); ++i)
            r[shift + i] = R->rsub(r[shift + i], R->rmul(c, b.c[i]));
        r = ktrim(std::move(r));
        if (r.empty()) break;
    }
    return KPoly{R, std::move(r)};
}

KPoly kgcd(const KPoly& a, const KPoly& b) {
    const auto& R = a.R;
    KPoly x = a, y = b;
    while (!y.c.empty()) {
        KPoly r = kmod(x, y);
        x = y;
        y = r;
    }
    if (!x.c.empty()) {
        int linv = R->rinv(x.c.back());
        for (auto& c : x.c) c = R->rmul(c, linv);
    }
    return x;
}

namespace {
// h^e mod f by square-and-multiply
KPoly kpowmod(const KPoly& h, long long e, const KPoly& f) {
    const auto& R = h.R;
    KPoly result{R, {1}};
    KPoly base = kmod(h, f);
    while (e > 0) {
        if (e & 1) result = kmod(kmul(result, base), f);
        base = kmod(kmul(base, base), f);
        e >>= 1;
    }
    return result;
}
} // namespace

bool kpoly_irreducible(const KPoly& f0) {
    const auto& R = f0.R;
    KPoly f = f0;
    if (f.deg() < 1) return false;
    if (f.c.back() != 1) { // normalize monic; irreducibility is unaffected
        int linv = R->rinv(f.c.back());
        for (auto& c : f.c) c = R->rmul(c, linv);
    }
    if (f.deg() == 1) return true;
    // an irreducible factor of degree <= deg/2 shows up as a nontrivial
    // gcd with x^{q^d} - x
    KPoly h{R, {0, 1}}; // x
    for (int d = 1; 2 * d <= f.deg(); ++d) {
        h = kpowmod(h, R->q, f);
        KPoly g = kgcd(ksub(h, KPoly{R, {0, 1}}), f);
        if (g.deg() > 0) return false;
    }
    return true;
}

bool eisenstein(const OPoly& f) {
    if (f.deg() < 1) return false;
    const Elem& lead = f.c.back();
    if (lead.prec() < 1) throw PrecisionTooLow("eisenstein: leading coefficient has no digits");
    if (!is_visibly_one(lead)) return false;
    for (int i = 1; i < f.deg(); ++i) {
        Val v = f.c[static_cast<std::size_t>(i)].valuation();
        if (v.exact) { if (v.v < 1) return false; }
        else if (v.v < 1) throw PrecisionTooLow("eisenstein: middle coefficient valuation not visible");
    }
    Val v0 = f.c.front().valuation();
    if (v0.exact) return v0.v == 1;
    if (v0.v >= 2) return false;       // valuation at least 2, so never exactly 1
    throw PrecisionTooLow("eisenstein: constant coefficient needs two digits");
}

// --- residue matrices ---------------------------------------------------------

KMat kmat_residue(const Mat& m) {
    KMat k{m.ring(), m.n(), {}};
    k.a.resize(static_cast<std::size_t>(m.n()) * m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) {
            const Elem& e = m.at(i, j);
            if (e.prec() < 1) throw PrecisionTooLow("residue matrix needs one digit per entry");
            k.at(i, j) = e.digit(0);
        }
    return k;
}

KMat kmat_identity(const RingPtr& R, int n) {
    KMat k{R, n, std::vector<int>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) k.at(i, i) = 1;
    return k;
}

KMat kmat_mul(const KMat& a, const KMat& b) {
    const auto& R = a.R;
    KMat c{R, a.n, std::vector<int>(static_cast<std::size_t>(a.n) * a.n, 0)};
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 0; j < a.n; ++j)
                c.at(i, j) = R->radd(c.at(i, j), R->rmul(a.at(i, k), b.at(k, j)));
        }
    return c;
}

namespace {
// row-reduce an r x c matrix over F_q in place, return rank
int kreduce(const RingPtr& R, std::vector<int>& m, int rows, int cols) {
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<std::size_t>(r * cols + col)] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        for (int j = 0; j < cols; ++j)
            std::swap(m[static_cast<std::size_t>(rank * cols + j)], m[static_cast<std::size_t>(pivot * cols + j)]);
        int inv = R->rinv(m[static_cast<std::size_t>(rank * cols + col)]);
        for (int j = 0; j < cols; ++j)
            m[static_cast<std::size_t>(rank * cols + j)] = R->rmul(inv, m[static_cast<std::size_t>(rank * cols + j)]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            int c = m[static_cast<std::size_t>(r * cols + col)];
            if (c == 0) continue;
            for (int j = 0; j < cols; ++j)
                m[static_cast<std::size_t>(r * cols + j)] =
                    R->rsub(m[static_cast<std::size_t>(r * cols + j)], R->rmul(c, m[static_cast<std::size_t>(rank * cols + j)]));
        }
        ++rank;
    }
    return rank;
}
} // namespace

int kmat_rank(KMat a) {
    return kreduce(a.R, a.a, a.n, a.n);
}

KPoly kmat_charpoly(const KMat& a) {
    // lift to one digit of precision and reuse the ring-level routine
    const auto& R = a.R;
    Mat m = Mat::zero(R, a.n, 1);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            m.at(i, j) = Elem::from_digits(R, {a.at(i, j)}, 1);
    return residue(charpoly(m));
}

KPoly kmat_minpoly(const KMat& a) {
    const auto& R = a.R;
    const int n = a.n, nn = n * n;
    // find the first power of a that is linearly dependent on the earlier ones
    std::vector<KMat> pows{kmat_identity(R, n)};
    for (int d = 1; d <= n; ++d) pows.push_back(kmat_mul(pows.back(), a));
    for (int d = 1; d <= n; ++d) {
        // solve sum_{i<d} x_i a^i = a^d by Gaussian elimination on the
        // transposed system [pow_0 ... pow_{d-1} | pow_d]
        std::vector<int> sys(static_cast<std::size_t>(nn) * (static_cast<std::size_t>(d) + 1), 0);
        for (int row = 0; row < nn; ++row) {
            for (int i = 0; i < d; ++i) sys[static_cast<std::size_t>(row * (d + 1) + i)] = pows[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(row)];
            sys[static_cast<std::size_t>(row * (d + 1) + d)] = pows[static_cast<std::size_t>(d)].a[static_cast<std::size_t>(row)];
        }
        int rank_lhs = [&] {
            std::vector<int> lhs(static_cast<std::size_t>(nn) * static_cast<std::size_t>(d));
            for (int row = 0; row < nn; ++row)
                for (int i = 0; i < d; ++i) lhs[static_cast<std::size_t>(row * d + i)] = sys[static_cast<std::size_t>(row * (d + 1) + i)];
            return kreduce(R, lhs, nn, d);
        }();
        int rank_full = kreduce(R, sys, nn, d + 1);
        if (rank_full == rank_lhs) {
            // consistent: extract a solution by re-reducing and reading pivots
            std::vector<int> aug(static_cast<std::size_t>(nn) * (static_cast<std::size_t>(d) + 1), 0);
            for (int row = 0; row < nn; ++row) {
                for (int i = 0; i < d; ++i) aug[static_cast<std::size_t>(row * (d + 1) + i)] = pows[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(row)];
                aug[static_cast<std::size_t>(row * (d + 1) + d)] = pows[static_cast<std::size_t>(d)].a[static_cast<std::size_t>(row)];
            }
            kreduce(R, aug, nn, d + 1);
            std::vector<int> x(static_cast<std::size_t>(d), 0);
            for (int row = 0; row < nn; ++row) {
                int lead = -1;
                for (int i = 0; i < d; ++i)
                    if (aug[static_cast<std::size_t>(row * (d + 1) + i)] != 0) { lead = i; break; }
                if (lead >= 0) x[static_cast<std::size_t>(lead)] = aug[static_cast<std::size_t>(row * (d + 1) + d)];
            }
            // minpoly = x^d - sum x_i t^i
            std::vector<int> c(static_cast<std::size_t>(d) + 1, 0);
            for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = R->rneg(x[static_cast<std::size_t>(i)]);
            c[static_cast<std::size_t>(d)] = 1;
            return KPoly{R, std::move(c)};
        }
    }
    throw Error("minimal polynomial not found below the matrix dimension"); // impossible
}

int commutant_dim(const Mat& m) {
    KMat A = kmat_residue(m);
    const auto& R = A.R;
    const int n = A.n, nn = n * n;
    // unknowns X_{kl}; equation (i,j): sum_k A_{ik} X_{kj} - sum_l X_{il} A_{lj} = 0
    std::vector<int> sys(static_cast<std::size_t>(nn) * nn, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int eq = i * n + j;
            for (int k = 0; k < n; ++k)
                sys[static_cast<std::size_t>(eq * nn + (k * n + j))] =
                    R->radd(sys[static_cast<std::size_t>(eq * nn + (k * n + j))], A.at(i, k));
            for (int l = 0; l < n; ++l)
                sys[static_cast<std::size_t>(eq * nn + (i * n + l))] =
                    R->rsub(sys[static_cast<std::size_t>(eq * nn + (i * n + l))], A.at(l, j));
        }
    return nn - kreduce(R, sys, nn, nn);
}

std::vector<int> cyclic_vector(const Mat& m) {
    KMat A = kmat_residue(m);
    const auto& R = A.R;
    const int n = A.n;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > (UINT64_C(1) << 24) / static_cast<unsigned>(R->q))
            throw SizeGuard("cyclic-vector scan over q^n candidates is too large");
        total *= static_cast<unsigned>(R->q);
    }
    for (std::uint64_t key = 0; key < total; ++key) {
        // v_0 is the most significant coordinate: ascending key = lex order
        std::vector<int> v(static_cast<std::size_t>(n), 0);
        std::uint64_t t = key;
        for (int i = n - 1; i >= 0; --i) { v[static_cast<std::size_t>(i)] = static_cast<int>(t % static_cast<unsigned>(R->q)); t /= static_cast<unsigned>(R->q); }
        std::vector<int> kry(static_cast<std::size_t>(n) * n, 0);
        std::vector<int> w = v;
        for (int col = 0; col < n; ++col) {
            for (int i = 0; i < n; ++i) kry[static_cast<std::size_t>(i * n + col)] = w[static_cast<std::size_t>(i)];
            if (col + 1 < n) {
                std::vector<int> nw(static_cast<std::size_t>(n), 0);
                for (int i = 0; i < n; ++i)
                    for (int k = 0; k < n; ++k) nw[static_cast<std::size_t>(i)] = R->radd(nw[static_cast<std::size_t>(i)], R->rmul(A.at(i, k), w[static_cast<std::size_t>(k)]));
                w = nw;
            }
        }
        if (kreduce(R, kry, n, n) == n) return v;
    }
    throw NotFound("no cyclic vector at the residue level");
}

bool is_regular_modp(const Mat& m) {
    bool via_commutant = commutant_dim(m) == m.n();
    bool via_cyclic = true;
    try {
        cyclic_vector(m);
    } catch (const NotFound&) {
        via_cyclic = false;
    }
    if (via_commutant != via_cyclic)
        throw Error("internal check failed: regularity routes disagree");
    return via_commutant;
}

std::pair<Mat, Mat> reduce_to_companion(const Mat& m) {
    const auto& R = m.ring();
    const int n = m.n();
    std::vector<int> vbar = cyclic_vector(m); // NotFound propagates
    const int pr = m.prec();
    // lift the residue vector by zeros and build the Krylov basis
    std::vector<Elem> v;
    for (int i = 0; i < n; ++i) v.push_back(Elem::from_digits(R, {vbar[static_cast<std::size_t>(i)]}, 1).zero_extended(pr));
    Mat g = Mat::zero(R, n, pr);
    std::vector<Elem> w = v;
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) g.at(i, col) = w[static_cast<std::size_t>(i)];
        if (col + 1 < n) {
            std::vector<Elem> nw(static_cast<std::size_t>(n), Elem::zero(R, pr));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    nw[static_cast<std::size_t>(i)] = ring::add(nw[static_cast<std::size_t>(i)], ring::mul(m.at(i, k).reduced(pr), w[static_cast<std::size_t>(k)]));
            w = nw;
        }
    }
    Mat C = mul(mul(inverse(g), m.reduced(pr)), g);
    Mat expected = companion(charpoly(m));
    if (!C.same_value(expected))
        throw Error("internal check failed: Krylov conjugation missed the companion form");
    return {g, C};
}

// --- key encoding ---------------------------------------------------------------

std::uint64_t mat_key(const Mat& m, int prec) {
    const auto& R = m.ring();
    const int n = m.n();
    std::uint64_t Q = 1;
    for (int i = 0; i < prec; ++i) {
        if (Q > (UINT64_C(1) << 62) / static_cast<unsigned>(R->q))
            throw BadArgument("matrix key exceeds 64-bit range");
        Q *= static_cast<unsigned>(R->q);
    }
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Elem& e = m.at(i, j);
            if (e.prec() < prec) throw InsufficientPrecision("matrix key needs every entry at the requested precision");
            std::uint64_t r = e.reduced(prec).rank();
            if (key > ((UINT64_C(1) << 63) - 1 - r) / Q) throw BadArgument("matrix key exceeds 64-bit range");
            key = key * Q + r;
        }
    return key;
}

Mat mat_from_key(const RingPtr& R, int n, int prec, std::uint64_t key) {
    std::uint64_t Q = 1;
    for (int i = 0; i < prec; ++i) Q *= static_cast<unsigned>(R->q);
    Mat m = Mat::zero(R, n, prec);
    for (int idx = n * n - 1; idx >= 0; --idx) {
        std::uint64_t r = key % Q;
        key /= Q;
        std::vector<int> digits(static_cast<std::size_t>(prec), 0);
        for (int i = 0; i < prec; ++i) { digits[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<unsigned>(R->q)); r /= static_cast<unsigned>(R->q); }
        m.at(idx / n, idx % n) = Elem::from_digits(R, digits, prec);
    }
    return m;
}

} // namespace cusptype::matlin
