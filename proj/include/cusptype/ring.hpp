#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cusptype/errors.hpp"

// Truncated local-ring arithmetic.
//
// We model O/p^rw for O the integers of a local field F with residue field
// F_q, q = p^f.  Two kinds:
//   equal:  O = F_q[[t]], so O/p^rw = F_q[t]/t^rw (any prime power q),
//   mixed:  O = Z_p, so O/p^rw = Z/p^rw (prime residue field only).
// Elements carry the number of digits actually known ("prec") as data, and
// operations refuse to guess digits they cannot see.

namespace cusptype::ring {

enum class Kind { Equal, Mixed };

struct Spec {
    Kind kind = Kind::Equal;
    int p = 2;
    int f = 1;
    int rw = 1;
    // Defining polynomial of F_q over F_p, coefficients constant-first,
    // monic of degree f.  Only meaningful for f > 1; leave empty to let the
    // library pick the lexicographically least irreducible.
    std::vector<int> modulus;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Immutable arithmetic context.  Residue-field elements are handled as packed
// indices in [0, q): the F_p-coefficients of the representative polynomial in
// base p, least degree in the lowest "digit".
class Ring {
public:
    static RingPtr make(const Spec& spec);

    Kind kind;
    int p, f, q, rw;
    std::vector<int> modulus; // as actually used (auto-selected if needed)

    int radd(int a, int b) const { return add_[a * q + b]; }
    int rsub(int a, int b) const { return add_[a * q + neg_[b]]; }
    int rmul(int a, int b) const { return mul_[a * q + b]; }
    int rneg(int a) const { return neg_[a]; }
    int rinv(int a) const;        // NonUnit on 0
    int rtrace(int a) const { return tr_[a]; } // absolute trace, in [0, p)
    int embed_int(long long v) const;          // image of an integer in F_q

    bool same_as(const Ring& o) const;
    std::string token() const;    // short id, e.g. "equal:p3:f1:r4"

    // p^i for mixed-value arithmetic (i <= rw); guarded against overflow.
    std::uint64_t ppow(int i) const { return ppow_[static_cast<std::size_t>(i)]; }

private:
    std::vector<int> add_, mul_, neg_, inv_, tr_;
    std::vector<std::uint64_t> ppow_;
    Ring() = default;
};

struct Val {
    bool exact = false;
    int v = 0; // the valuation if exact, otherwise a lower bound ("at least v")

    static Val Exact(int v) { return {true, v}; }
    static Val AtLeast(int v) { return {false, v}; }
    bool operator==(const Val& o) const { return exact == o.exact && v == o.v; }
};

class Elem {
public:
    Elem() = default;

    static Elem zero(const RingPtr& R, int prec = -1);
    static Elem one(const RingPtr& R, int prec = -1);
    static Elem from_int(const RingPtr& R, long long v, int prec = -1);
    // digits are residue-field indices, lowest power of the uniformizer first;
    // prec defaults to digits.size() (padded/truncated to at most rw).
    static Elem from_digits(const RingPtr& R, const std::vector<int>& digits,
                            int prec = -1);

    const RingPtr& ring() const { return R_; }
    bool valid() const { return static_cast<bool>(R_); }
    int prec() const { return static_cast<int>(d_.size()); }
    int digit(int i) const { return d_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& digits() const { return d_; }

    Elem reduced(int new_prec) const;        // forget high digits
    Elem zero_extended(int new_prec) const;  // explicit lift choice: pad zeros

    Val valuation() const;
    bool is_visibly_zero() const;            // all known digits vanish
    bool same_value(const Elem& o) const;    // equal prec and equal digits
    std::uint64_t rank() const;              // digits as a base-q number

    Elem inv() const;                        // needs a visible unit digit
    Elem shifted_up(int k) const;            // multiply by pi^k, prec gains k
    Elem shifted_down(int k) const;          // divide by pi^k, digits must show

    // mixed kind only: the value sum d_i p^i (over known digits)
    std::uint64_t mixed_value() const;

    friend Elem add(const Elem& a, const Elem& b);
    friend Elem sub(const Elem& a, const Elem& b);
    friend Elem mul(const Elem& a, const Elem& b);
    friend Elem neg(const Elem& a);

    Elem operator+(const Elem& o) const { return add(*this, o); }
    Elem operator-(const Elem& o) const { return sub(*this, o); }
    Elem operator*(const Elem& o) const { return mul(*this, o); }
    Elem operator-() const { return neg(*this); }

    std::string str() const;                 // digits '.'-joined, lowest first

private:
    RingPtr R_;
    std::vector<int> d_; // size == prec, each in [0, q)
    Elem(RingPtr R, std::vector<int> d) : R_(std::move(R)), d_(std::move(d)) {}
    void check_compat(const Elem& o) const;
};

Elem add(const Elem& a, const Elem& b);
Elem sub(const Elem& a, const Elem& b);
Elem mul(const Elem& a, const Elem& b);
Elem neg(const Elem& a);

// inverse of Elem::rank(): decode a base-q digit string of the given length
Elem elem_from_rank(const RingPtr& R, std::uint64_t rank, int prec);

// x = pi^{-s} * u with u integral; s >= 0.  Negative powers of the
// uniformizer are never materialized as ring elements.
struct FracElem {
    int s = 0;
    Elem u;
};

// A value of the additive character group: num / p^k mod 1, kept canonical
// (0 <= num < p^k, p does not divide num unless num == 0, in which case k == 0).
struct AdditiveValue {
    long long num = 0;
    int k = 0;
    int p = 2;

    static AdditiveValue zero(int p) { return {0, 0, p}; }
    static AdditiveValue make(long long num, int k, int p);
    AdditiveValue operator+(const AdditiveValue& o) const;
    AdditiveValue operator-() const;
    AdditiveValue operator-(const AdditiveValue& o) const { return *this + (-o); }
    AdditiveValue scaled(long long m) const;
    bool operator==(const AdditiveValue& o) const;
    bool operator!=(const AdditiveValue& o) const { return !(*this == o); }
    bool is_zero() const { return num == 0; }
    std::string str() const; // "0" or "num/p^k"
};

// The standard character with conductor p:
//   equal kind:  psi(x) = Tr_{F_q/F_p}(a0(x)) / p, a0 = coefficient of t^0,
//   mixed kind:  psi(x) = frac(x / p).
// Needs prec(u) >= s + 1 for x = pi^{-s} u.
AdditiveValue psi(const FracElem& x);
AdditiveValue psi(const Elem& x);

// Helpers for fractional scalars.
FracElem frac(const Elem& u, int s = 0);
FracElem frac_add(const FracElem& a, const FracElem& b);
FracElem frac_mul(const FracElem& a, const FracElem& b);
FracElem frac_normalized(const FracElem& a); // strip visible pi factors into s

} // namespace cusptype::ring
