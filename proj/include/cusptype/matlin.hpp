#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cusptype/ring.hpp"

// Matrices and polynomials over a truncated local ring, plus the residue-level
// linear algebra used for regularity and canonical forms.

namespace cusptype::matlin {

using ring::Elem;
using ring::FracElem;
using ring::RingPtr;
using ring::Val;

class Mat {
public:
    Mat() = default;
    Mat(RingPtr R, int n, std::vector<Elem> entries);

    static Mat zero(const RingPtr& R, int n, int prec = -1);
    static Mat identity(const RingPtr& R, int n, int prec = -1);
    static Mat scalar(const RingPtr& R, int n, const Elem& c);

    const RingPtr& ring() const { return R_; }
    int n() const { return n_; }
    bool valid() const { return static_cast<bool>(R_); }
    const Elem& at(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    Elem& at(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    int prec() const;                     // min entry precision
    Mat reduced(int new_prec) const;
    Mat zero_extended(int new_prec) const;
    bool same_value(const Mat& o) const;  // entrywise same_value
    Mat transposed() const;

    friend Mat add(const Mat& a, const Mat& b);
    friend Mat sub(const Mat& a, const Mat& b);
    friend Mat mul(const Mat& a, const Mat& b);
    friend Mat neg(const Mat& a);
    Mat scaled(const Elem& c) const;
    Mat shifted_up(int k) const;          // every entry

    Mat operator+(const Mat& o) const { return add(*this, o); }
    Mat operator-(const Mat& o) const { return sub(*this, o); }
    Mat operator*(const Mat& o) const { return mul(*this, o); }

private:
    RingPtr R_;
    int n_ = 0;
    std::vector<Elem> a_;
};

Mat add(const Mat& a, const Mat& b);
Mat sub(const Mat& a, const Mat& b);
Mat mul(const Mat& a, const Mat& b);
Mat neg(const Mat& a);

Elem trace(const Mat& m);
Elem det(const Mat& m); // Laplace expansion, division-free; n <= 8

// x = pi^{-s} * m with m integral.
struct FracMat {
    int s = 0;
    Mat m;

    int n() const { return m.n(); }
    const RingPtr& ring() const { return m.ring(); }
};

FracMat frac(const Mat& m, int s = 0);
FracMat frac_add(const FracMat& a, const FracMat& b);
FracMat frac_sub(const FracMat& a, const FracMat& b);
FracMat frac_mul(const FracMat& a, const FracMat& b);
FracMat frac_scaled(const FracMat& a, const FracElem& c);
FracMat frac_shift(const FracMat& a, int k);         // multiply by pi^k, any k
FracMat frac_normalized(const FracMat& a);           // strip visible pi factors
FracMat frac_inverse(const FracMat& g);              // adjugate / det; needs exact det valuation
Mat integral_part(const FracMat& a);                 // requires visible integrality
FracElem frac_trace(const FracMat& a);
FracElem frac_det(const FracMat& a);

// Monic-or-not polynomial over the ring, coefficients constant-first.
struct OPoly {
    RingPtr R;
    std::vector<Elem> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    int prec() const;
};

// Polynomial over the residue field F_q, coefficients packed indices,
// constant-first, no trailing zeros (zero polynomial = empty vector).
struct KPoly {
    RingPtr R;
    std::vector<int> c;

    int deg() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
};

OPoly charpoly(const Mat& m);            // det(xI - M), division-free; n <= 6
Mat companion(const OPoly& f);           // ones on the subdiagonal, -coeffs in the last column
Mat opoly_eval(const OPoly& f, const Mat& m);
KPoly residue(const OPoly& f);           // PrecisionTooLow if a coefficient has no digits

KPoly kadd(const KPoly& a, const KPoly& b);
KPoly ksub(const KPoly& a, const KPoly& b);
KPoly kmul(const KPoly& a, const KPoly& b);
KPoly kmod(const KPoly& a, const KPoly& b);
KPoly kgcd(const KPoly& a, const KPoly& b); // monic gcd
bool kpoly_irreducible(const KPoly& f);

// Is f monic with all middle coefficients of positive valuation and constant
// coefficient of valuation exactly 1?  PrecisionTooLow when the known digits
// cannot decide.
bool eisenstein(const OPoly& f);

// --- residue-level matrices (entries are packed F_q indices) -----------------

struct KMat {
    RingPtr R;
    int n = 0;
    std::vector<int> a;

    int at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
    int& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
};

KMat kmat_residue(const Mat& m);         // PrecisionTooLow if prec == 0
KMat kmat_identity(const RingPtr& R, int n);
KMat kmat_mul(const KMat& a, const KMat& b);
int kmat_rank(KMat a);
KPoly kmat_charpoly(const KMat& a);
KPoly kmat_minpoly(const KMat& a);

// Dimension of {X : AX = XA} over F_q for the residue of m.
int commutant_dim(const Mat& m);

// Lexicographically least residue vector v with [v, Av, ..., A^{n-1}v]
// invertible; NotFound if the residue has none.
std::vector<int> cyclic_vector(const Mat& m);

// Both regularity routes (commutant dimension == n; cyclic vector exists),
// checked against each other before returning.
bool is_regular_modp(const Mat& m);

// Conjugate m to the companion matrix of its characteristic polynomial via a
// Krylov basis lifted from a residue cyclic vector.  Returns (g, C) with
// C = g^{-1} m g equal, digit for digit, to companion(charpoly(m)).
std::pair<Mat, Mat> reduce_to_companion(const Mat& m);

// Matrix inverse over the truncated ring (det must be a visible unit).
Mat inverse(const Mat& m);
Mat adjugate(const Mat& m);

// Key encoding: entries row-major, each entry its digit rank, entry (0,0)
// most significant so numeric order equals lexicographic order.
std::uint64_t mat_key(const Mat& m, int prec);
Mat mat_from_key(const RingPtr& R, int n, int prec, std::uint64_t key);

} // namespace cusptype::matlin
