#include "cusptype/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cusptype::ring {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// --- tiny F_p[y] helpers, used only while building a Ring -----------------
// Polynomials are coefficient vectors, constant first, no trailing zeros.

using PPoly = std::vector<int>;

PPoly ptrim(PPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

PPoly pmul(const PPoly& a, const PPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return ptrim(std::move(c));
}

// remainder of a by monic-after-normalization b
PPoly pmod(PPoly a, const PPoly& b, int p) {
    a = ptrim(std::move(a));
    // make b monic: multiply remainder steps by inverse of leading coeff
    int lead = b.back();
    int linv = 1;
    for (int x = 1; x < p; ++x)
        if (x * lead % p == 1) { linv = x; break; }
    while (a.size() >= b.size()) {
        int c = a.back() * linv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        a = ptrim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

bool pirreducible(const PPoly& m, int p) {
    int deg = static_cast<int>(m.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // trial division by every monic polynomial of degree 1..deg/2
    for (int d = 1; 2 * d <= deg; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long idx = 0; idx < count; ++idx) {
            PPoly cand(static_cast<std::size_t>(d) + 1, 0);
            long long t = idx;
            for (int i = 0; i < d; ++i) { cand[static_cast<std::size_t>(i)] = static_cast<int>(t % p); t /= p; }
            cand[static_cast<std::size_t>(d)] = 1;
            if (pmod(m, cand, p).empty()) return false;
        }
    }
    return true;
}

PPoly auto_modulus(int p, int f) {
    // smallest irreducible in lexicographic order on the constant-first
    // coefficient vector (a_0, ..., a_{f-1}, 1)
    long long count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    std::vector<PPoly> cands;
    for (long long idx = 0; idx < count; ++idx) {
        PPoly cand(static_cast<std::size_t>(f) + 1, 0);
        long long t = idx;
        for (int i = f - 1; i >= 0; --i) { cand[static_cast<std::size_t>(i)] = static_cast<int>(t % p); t /= p; }
        cand[static_cast<std::size_t>(f)] = 1;
        cands.push_back(std::move(cand));
    }
    std::sort(cands.begin(), cands.end());
    for (const auto& c : cands)
        if (pirreducible(c, p)) return c;
    throw BadModulus("no irreducible modulus found"); // unreachable for prime p
}

std::vector<int> unpack(int idx, int p, int f) {
    std::vector<int> c(static_cast<std::size_t>(f), 0);
    for (int i = 0; i < f; ++i) { c[static_cast<std::size_t>(i)] = idx % p; idx /= p; }
    return c;
}

int pack(const std::vector<int>& c, int p, int f) {
    int idx = 0;
    for (int i = f - 1; i >= 0; --i) idx = idx * p + (i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)] : 0);
    return idx;
}

} // namespace

RingPtr Ring::make(const Spec& spec) {
    if (!is_prime(spec.p))
        throw NotPrime("p = " + std::to_string(spec.p) + " is not prime");
    if (spec.f < 1)
        throw BadArgument("f must be >= 1");
    if (spec.rw < 1)
        throw BadArgument("working precision must be >= 1");
    if (spec.kind == Kind::Mixed && spec.f != 1)
        throw MixedNeedsPrimeField("mixed kind supports only f = 1");

    auto ring = std::shared_ptr<Ring>(new Ring());
    ring->kind = spec.kind;
    ring->p = spec.p;
    ring->f = spec.f;
    ring->rw = spec.rw;

    long long q = 1;
    for (int i = 0; i < spec.f; ++i) {
        q *= spec.p;
        if (q > 4096) throw BadArgument("residue field too large for table arithmetic");
    }
    ring->q = static_cast<int>(q);

    PPoly mod;
    if (spec.f == 1) {
        if (!spec.modulus.empty())
            throw BadModulus("modulus is only meaningful for f > 1");
        mod = {0, 1}; // y, formally; unused
    } else if (spec.modulus.empty()) {
        mod = auto_modulus(spec.p, spec.f);
    } else {
        mod = spec.modulus;
        if (static_cast<int>(mod.size()) != spec.f + 1 || mod.back() != 1)
            throw BadModulus("modulus must be monic of degree f, constant-first");
        for (int c : mod)
            if (c < 0 || c >= spec.p) throw BadModulus("modulus coefficients must lie in [0, p)");
        if (!pirreducible(mod, spec.p)) throw BadModulus("modulus is reducible over F_p");
    }
    ring->modulus = mod;

    const int Q = ring->q, p = spec.p, f = spec.f;
    ring->add_.assign(static_cast<std::size_t>(Q) * Q, 0);
    ring->mul_.assign(static_cast<std::size_t>(Q) * Q, 0);
    ring->neg_.assign(static_cast<std::size_t>(Q), 0);
    ring->inv_.assign(static_cast<std::size_t>(Q), 0);
    ring->tr_.assign(static_cast<std::size_t>(Q), 0);

    for (int a = 0; a < Q; ++a) {
        auto ca = unpack(a, p, f);
        std::vector<int> nc(ca.size());
        for (std::size_t i = 0; i < ca.size(); ++i) nc[i] = (p - ca[i]) % p;
        ring->neg_[static_cast<std::size_t>(a)] = pack(nc, p, f);
        for (int b = 0; b < Q; ++b) {
            auto cb = unpack(b, p, f);
            std::vector<int> sc(ca.size());
            for (std::size_t i = 0; i < ca.size(); ++i) sc[i] = (ca[i] + cb[i]) % p;
            ring->add_[static_cast<std::size_t>(a) * Q + b] = pack(sc, p, f);
            PPoly prod = pmul(ptrim(ca), ptrim(cb), p);
            if (f > 1) prod = pmod(std::move(prod), mod, p);
            ring->mul_[static_cast<std::size_t>(a) * Q + b] = pack(prod, p, f);
        }
    }
    for (int a = 1; a < Q; ++a)
        for (int b = 1; b < Q; ++b)
            if (ring->mul_[static_cast<std::size_t>(a) * Q + b] == 1) { ring->inv_[static_cast<std::size_t>(a)] = b; break; }
    // absolute trace: a + a^p + ... + a^{p^{f-1}}
    for (int a = 0; a < Q; ++a) {
        int t = 0, x = a;
        for (int i = 0; i < f; ++i) {
            t = ring->add_[static_cast<std::size_t>(t) * Q + x];
            int y = 1;
            for (int e = 0; e < p; ++e) y = ring->mul_[static_cast<std::size_t>(y) * Q + x];
            x = y;
        }
        ring->tr_[static_cast<std::size_t>(a)] = t; // lies in F_p, packed index == value
    }

    ring->ppow_.assign(static_cast<std::size_t>(ring->rw) + 1, 1);
    for (int i = 1; i <= ring->rw; ++i) {
        if (ring->ppow_[static_cast<std::size_t>(i - 1)] > (UINT64_C(1) << 62) / static_cast<unsigned>(p))
            throw BadArgument("p^rw exceeds 64-bit working range");
        ring->ppow_[static_cast<std::size_t>(i)] = ring->ppow_[static_cast<std::size_t>(i - 1)] * static_cast<unsigned>(p);
    }
    return ring;
}

int Ring::rinv(int a) const {
    if (a == 0) throw NonUnit("inverse of zero in the residue field");
    return inv_[static_cast<std::size_t>(a)];
}

int Ring::embed_int(long long v) const {
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<int>(r); // constant polynomials pack to themselves
}

bool Ring::same_as(const Ring& o) const {
    return kind == o.kind && p == o.p && f == o.f && rw == o.rw && modulus == o.modulus;
}

std::string Ring::token() const {
    std::ostringstream os;
    os << (kind == Kind::Equal ? "equal" : "mixed") << ":p" << p << ":f" << f << ":r" << rw;
    return os.str();
}

// --- Elem -------------------------------------------------------------------

namespace {
int clamp_prec(const RingPtr& R, int prec, int fallback) {
    int pr = prec < 0 ? fallback : prec;
    if (pr < 0 || pr > R->rw) throw BadArgument("precision out of range [0, rw]");
    return pr;
}
} // namespace

void Elem::check_compat(const Elem& o) const {
    if (!R_ || !o.R_ || !R_->same_as(*o.R_))
        throw BadArgument("operands live in different rings");
}

Elem Elem::zero(const RingPtr& R, int prec) {
    int pr = clamp_prec(R, prec, R->rw);
    return Elem(R, std::vector<int>(static_cast<std::size_t>(pr), 0));
}

Elem Elem::one(const RingPtr& R, int prec) {
    Elem e = zero(R, prec);
    if (e.prec() == 0) throw BadArgument("cannot represent 1 at precision 0");
    e.d_[0] = 1;
    return e;
}

Elem Elem::from_int(const RingPtr& R, long long v, int prec) {
    int pr = clamp_prec(R, prec, R->rw);
    std::vector<int> d(static_cast<std::size_t>(pr), 0);
    if (R->kind == Kind::Mixed) {
        if (pr > 0) {
            std::int64_t m = static_cast<std::int64_t>(R->ppow(pr));
            std::int64_t val = v % m;
            if (val < 0) val += m;
            for (int i = 0; i < pr; ++i) { d[static_cast<std::size_t>(i)] = static_cast<int>(val % R->p); val /= R->p; }
        }
    } else {
        // integers land in the prime subfield of F_q, constant digit only
        if (pr > 0) d[0] = R->embed_int(v);
    }
    return Elem(R, std::move(d));
}

Elem Elem::from_digits(const RingPtr& R, const std::vector<int>& digits, int prec) {
    int pr = clamp_prec(R, prec, static_cast<int>(digits.size()) > R->rw ? R->rw : static_cast<int>(digits.size()));
    std::vector<int> d(static_cast<std::size_t>(pr), 0);
    for (int i = 0; i < pr && i < static_cast<int>(digits.size()); ++i) {
        int v = digits[static_cast<std::size_t>(i)];
        if (v < 0 || v >= R->q) throw BadArgument("digit out of range [0, q)");
        d[static_cast<std::size_t>(i)] = v;
    }
    return Elem(R, std::move(d));
}

Elem Elem::reduced(int new_prec) const {
    if (new_prec < 0 || new_prec > prec()) throw BadArgument("reduced(): precision must shrink");
    return Elem(R_, std::vector<int>(d_.begin(), d_.begin() + new_prec));
}

Elem Elem::zero_extended(int new_prec) const {
    if (new_prec < prec() || new_prec > R_->rw) throw BadArgument("zero_extended(): bad target precision");
    std::vector<int> d = d_;
    d.resize(static_cast<std::size_t>(new_prec), 0);
    return Elem(R_, std::move(d));
}

Val Elem::valuation() const {
    for (int i = 0; i < prec(); ++i)
        if (d_[static_cast<std::size_t>(i)] != 0) return Val::Exact(i);
    return Val::AtLeast(prec());
}

bool Elem::is_visibly_zero() const { return !valuation().exact; }

bool Elem::same_value(const Elem& o) const {
    return R_ && o.R_ && R_->same_as(*o.R_) && d_ == o.d_;
}

std::uint64_t Elem::rank() const {
    std::uint64_t r = 0, scale = 1;
    for (int i = 0; i < prec(); ++i) {
        r += scale * static_cast<unsigned>(d_[static_cast<std::size_t>(i)]);
        if (i + 1 < prec()) {
            if (scale > (UINT64_C(1) << 56) / static_cast<unsigned>(R_->q))
                throw BadArgument("element rank exceeds 64-bit range");
            scale *= static_cast<unsigned>(R_->q);
        }
    }
    return r;
}

std::uint64_t Elem::mixed_value() const {
    if (R_->kind != Kind::Mixed) throw BadArgument("mixed_value() on an equal-characteristic element");
    std::uint64_t v = 0;
    for (int i = prec() - 1; i >= 0; --i) v = v * static_cast<unsigned>(R_->p) + static_cast<unsigned>(d_[static_cast<std::size_t>(i)]);
    return v;
}

namespace {
std::vector<int> value_to_digits(std::uint64_t v, int p, int prec) {
    std::vector<int> d(static_cast<std::size_t>(prec), 0);
    for (int i = 0; i < prec; ++i) { d[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<unsigned>(p)); v /= static_cast<unsigned>(p); }
    return d;
}
} // namespace

Elem add(const Elem& a, const Elem& b) {
    a.check_compat(b);
    const auto& R = a.R_;
    int pr = std::min(a.prec(), b.prec());
    if (R->kind == Kind::Mixed) {
        std::uint64_t m = R->ppow(pr);
        std::uint64_t v = pr == 0 ? 0 : (a.reduced(pr).mixed_value() + b.reduced(pr).mixed_value()) % m;
        return Elem(R, value_to_digits(v, R->p, pr));
    }
    std::vector<int> d(static_cast<std::size_t>(pr));
    for (int i = 0; i < pr; ++i) d[static_cast<std::size_t>(i)] = R->radd(a.d_[static_cast<std::size_t>(i)], b.d_[static_cast<std::size_t>(i)]);
    return Elem(R, std::move(d));
}

Elem neg(const Elem& a) {
    const auto& R = a.R_;
    if (R->kind == Kind::Mixed) {
        int pr = a.prec();
        if (pr == 0) return a;
        std::uint64_t m = R->ppow(pr);
        std::uint64_t v = (m - a.mixed_value() % m) % m;
        return Elem(R, value_to_digits(v, R->p, pr));
    }
    std::vector<int> d = a.d_;
    for (auto& x : d) x = R->rneg(x);
    return Elem(R, std::move(d));
}

Elem sub(const Elem& a, const Elem& b) { return add(a, neg(b)); }

Elem mul(const Elem& a, const Elem& b) {
    a.check_compat(b);
    const auto& R = a.R_;
    int pr = std::min(a.prec(), b.prec());
    if (R->kind == Kind::Mixed) {
        if (pr == 0) return Elem::zero(R, 0);
        std::uint64_t m = R->ppow(pr);
        unsigned __int128 prod = static_cast<unsigned __int128>(a.reduced(pr).mixed_value()) * b.reduced(pr).mixed_value();
        return Elem(R, value_to_digits(static_cast<std::uint64_t>(prod % m), R->p, pr));
    }
    std::vector<int> d(static_cast<std::size_t>(pr), 0);
    for (int i = 0; i < pr; ++i) {
        if (a.d_[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; i + j < pr; ++j) {
            int& c = d[static_cast<std::size_t>(i + j)];
            c = R->radd(c, R->rmul(a.d_[static_cast<std::size_t>(i)], b.d_[static_cast<std::size_t>(j)]));
        }
    }
    return Elem(R, std::move(d));
}

Elem Elem::inv() const {
    if (prec() == 0) throw InsufficientPrecision("inverse needs at least one known digit");
    if (d_[0] == 0) throw NonUnit("element has no visible unit digit");
    const auto& R = R_;
    // Newton iteration e <- e(2 - x e); one correct digit doubles each round.
    Elem e = Elem::from_digits(R, {R->rinv(d_[0])}, 1);
    Elem two = Elem::from_int(R, 2, prec());
    while (e.prec() < prec()) {
        int np = std::min(2 * e.prec(), prec());
        Elem ex = e.zero_extended(np);
        Elem x = reduced(np);
        e = mul(ex, sub(two.reduced(np), mul(x, ex)));
    }
    return e;
}

Elem Elem::shifted_up(int k) const {
    if (k < 0) throw BadArgument("shifted_up(): negative shift");
    if (k == 0) return *this;
    int np = std::min(prec() + k, R_->rw);
    std::vector<int> d(static_cast<std::size_t>(np), 0);
    for (int i = 0; i + k < np && i < prec(); ++i) d[static_cast<std::size_t>(i + k)] = d_[static_cast<std::size_t>(i)];
    return Elem(R_, std::move(d));
}

Elem Elem::shifted_down(int k) const {
    if (k < 0) throw BadArgument("shifted_down(): negative shift");
    if (k == 0) return *this;
    for (int i = 0; i < k && i < prec(); ++i)
        if (d_[static_cast<std::size_t>(i)] != 0)
            throw BadArgument("shifted_down(): element is visibly not divisible");
    if (prec() < k) throw InsufficientPrecision("shifted_down(): low digits are not all visible");
    return Elem(R_, std::vector<int>(d_.begin() + k, d_.end()));
}

std::string Elem::str() const {
    std::string s;
    for (int i = 0; i < prec(); ++i) {
        if (i) s += '.';
        s += std::to_string(d_[static_cast<std::size_t>(i)]);
    }
    return s.empty() ? std::string("-") : s;
}

// --- additive character values ----------------------------------------------

AdditiveValue AdditiveValue::make(long long num, int k, int p) {
    if (k < 0) throw BadArgument("additive value needs k >= 0");
    long long m = 1;
    for (int i = 0; i < k; ++i) {
        if (m > (1LL << 61) / p) throw BadArgument("additive value denominator overflow");
        m *= p;
    }
    long long n = num % m;
    if (n < 0) n += m;
    while (k > 0 && n % p == 0) { n /= p; m /= p; --k; }
    if (n == 0) k = 0;
    return {n, k, p};
}

AdditiveValue AdditiveValue::operator+(const AdditiveValue& o) const {
    if (p != o.p) throw BadArgument("additive values over different primes");
    int kk = std::max(k, o.k);
    long long a = num, b = o.num;
    for (int i = k; i < kk; ++i) a *= p;
    for (int i = o.k; i < kk; ++i) b *= p;
    return make(a + b, kk, p);
}

AdditiveValue AdditiveValue::operator-() const { return make(-num, k, p); }

AdditiveValue AdditiveValue::scaled(long long m) const {
    if (k == 0 || num == 0) return zero(p);
    long long den = 1;
    for (int i = 0; i < k; ++i) den *= p;
    long long mm = m % den;
    if (mm < 0) mm += den;
    __int128 prod = static_cast<__int128>(num) * mm % den;
    return make(static_cast<long long>(prod), k, p);
}

bool AdditiveValue::operator==(const AdditiveValue& o) const {
    return p == o.p && k == o.k && num == o.num;
}

std::string AdditiveValue::str() const {
    if (num == 0) return "0";
    long long den = 1;
    for (int i = 0; i < k; ++i) den *= p;
    return std::to_string(num) + "/" + std::to_string(den);
}

// --- the base character psi ---------------------------------------------------

AdditiveValue psi(const FracElem& x) {
    const auto& u = x.u;
    if (!u.valid()) throw BadArgument("psi of an empty element");
    if (x.s < 0) throw BadArgument("psi: s must be >= 0");
    const auto& R = u.ring();
    if (u.prec() < x.s + 1)
        throw InsufficientPrecision("psi needs the first s+1 digits of u");
    if (R->kind == Kind::Equal) {
        // coefficient of t^0 in pi^{-s} u is digit s of u
        int tr = R->rtrace(u.digit(x.s));
        return AdditiveValue::make(tr, 1, R->p);
    }
    std::uint64_t m = R->ppow(x.s + 1);
    std::uint64_t v = u.reduced(x.s + 1).mixed_value() % m;
    return AdditiveValue::make(static_cast<long long>(v), x.s + 1, R->p);
}

AdditiveValue psi(const Elem& x) { return psi(FracElem{0, x}); }

FracElem frac(const Elem& u, int s) {
    if (s < 0) throw BadArgument("frac: s must be >= 0");
    return {s, u};
}

FracElem frac_add(const FracElem& a, const FracElem& b) {
    int s = std::max(a.s, b.s);
    Elem ua = a.u.shifted_up(s - a.s);
    Elem ub = b.u.shifted_up(s - b.s);
    return {s, add(ua, ub)};
}

FracElem frac_mul(const FracElem& a, const FracElem& b) {
    return {a.s + b.s, mul(a.u, b.u)};
}

FracElem frac_normalized(const FracElem& a) {
    Val v = a.u.valuation();
    int strip = std::min(a.s, v.v);
    if (strip == 0) return a;
    return {a.s - strip, a.u.shifted_down(strip)};
}

Elem elem_from_rank(const RingPtr& R, std::uint64_t rank, int prec) {
    std::vector<int> d(static_cast<std::size_t>(prec), 0);
    for (int i = 0; i < prec; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<unsigned>(R->q));
        rank /= static_cast<unsigned>(R->q);
    }
    if (rank != 0) throw BadArgument("rank out of range for this precision");
    return Elem::from_digits(R, d, prec);
}

} // namespace cusptype::ring
