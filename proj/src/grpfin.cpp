#include "cusptype/grpfin.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace cusptype::grpfin {

using matlin::frac;
using matlin::frac_mul;
using matlin::frac_shift;
using matlin::frac_sub;
using matlin::frac_trace;
using matlin::integral_part;
using matlin::mat_from_key;
using matlin::mat_key;
using ring::elem_from_rank;
using ring::FracElem;
using ring::psi;
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

void validate_spec(const SubgroupSpec& spec) {
    if (!spec.R) throw BadArgument("subgroup spec without a ring");
    if (spec.n < 1 || spec.n > 8) throw BadArgument("subgroup spec dimension out of range");
    if (spec.r < 1 || spec.r > spec.R->rw) throw BadArgument("subgroup spec modulus out of range");
    if (spec.pat.size() != static_cast<std::size_t>(spec.n) * static_cast<std::size_t>(spec.n))
        throw BadArgument("subgroup spec pattern has the wrong shape");
    for (const auto& pe : spec.pat) {
        if (pe.delta != 0 && pe.delta != 1) throw BadArgument("pattern residue must be 0 or 1");
        if (pe.depth < 0) throw BadArgument("pattern depth must be >= 0");
    }
    if (spec.diag_link_depth < 0) throw BadArgument("diagonal link depth must be >= 0");
}

std::vector<std::uint64_t> entry_candidates(const SubgroupSpec& spec, const EntryPattern& pe) {
    const std::uint64_t q = static_cast<std::uint64_t>(spec.R->q);
    const std::uint64_t Q = checked_pow(q, spec.r);
    const int d = std::min(pe.depth, spec.r);
    const std::uint64_t mod = checked_pow(q, d);
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < Q; ++v) {
        if (d > 0 && v % mod != static_cast<std::uint64_t>(pe.delta)) continue;
        if (pe.unit && v % q == 0) continue;
        out.push_back(v);
    }
    return out;
}

// existential membership of a possibly fractional matrix in a pattern:
// each entry must match delta to the required depth as far as its digits
// are visible (hidden digits can always be lifted to zero)
bool frac_pattern_member(const SubgroupSpec& spec, const FracMat& y) {
    const auto& R = spec.R;
    const int s = y.s;
    auto visible_ge = [](const Elem& diff, int want) {
        Val v = diff.valuation();
        if (!v.exact) return true; // every visible digit is zero
        return v.v >= std::min(want, diff.prec());
    };
    auto unit_at = [&](const Elem& u) {
        Val v = u.valuation();
        if (!v.exact) {
            if (v.v <= s) throw InsufficientPrecision("unit residue not visible");
            return false; // positive valuation, not a unit
        }
        return v.v == s;
    };
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j) {
            const EntryPattern& pe = spec.at(i, j);
            const Elem& u = y.m.at(i, j);
            const int d = std::max(0, std::min(pe.depth, spec.r));
            Elem diff = u;
            if (pe.delta != 0 && u.prec() > s) {
                Elem t = Elem::from_int(R, pe.delta, u.prec() - s).shifted_up(s);
                diff = sub(u, t);
            }
            if (!visible_ge(diff, d + s)) return false;
            if (pe.unit && !unit_at(u)) return false;
        }
    if (spec.diag_link_depth > 0) {
        const int k = std::min(spec.diag_link_depth, spec.r);
        for (int i = 0; i < spec.n; ++i)
            if (!unit_at(y.m.at(i, i))) return false;
        for (int i = 1; i < spec.n; ++i)
            if (!visible_ge(sub(y.m.at(i, i), y.m.at(0, 0)), k + s)) return false;
    }
    if (spec.invertible_only) {
        Mat ip;
        try {
            ip = integral_part(y);
        } catch (const BadArgument&) {
            return false; // visibly non-integral
        }
        if (matlin::kmat_rank(matlin::kmat_residue(ip)) != spec.n) return false;
    }
    return true;
}

} // namespace

SubgroupSpec from_entries(const RingPtr& R, int n, int r, std::vector<EntryPattern> pat,
                          int diag_link_depth, bool invertible_only) {
    SubgroupSpec spec{R, n, r, std::move(pat), diag_link_depth, invertible_only};
    validate_spec(spec);
    return spec;
}

SubgroupSpec full_gl(const RingPtr& R, int n, int r) {
    std::vector<EntryPattern> pat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    return from_entries(R, n, r, std::move(pat), 0, true);
}

SubgroupSpec unit_filtration(const RingPtr& R, const Order& o, int m, int r) {
    if (m < 0) throw BadArgument("unit filtration index must be >= 0");
    const int n = o.dim;
    std::vector<EntryPattern> pat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    SubgroupSpec spec{R, n, r, std::move(pat), 0, m == 0};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            EntryPattern& pe = spec.at(i, j);
            pe.delta = (m >= 1 && i == j) ? 1 : 0;
            pe.depth = std::max(0, orders::entry_bound(o, m, i, j));
            pe.unit = m == 0 && o.kind == OrderKind::I && i == j;
        }
    validate_spec(spec);
    return spec;
}

SubgroupSpec stab_span(const RingPtr& R, int r) {
    std::vector<EntryPattern> pat = {
        {0, 0, true}, {0, 0, false},
        {0, 1, false}, {0, 0, true}};
    return from_entries(R, 2, r, std::move(pat), 1, false);
}

SubgroupSpec upper_unipotent(const RingPtr& R, int r, int upper_depth) {
    std::vector<EntryPattern> pat = {
        {1, r, false}, {0, std::max(0, upper_depth), false},
        {0, r, false}, {1, r, false}};
    return from_entries(R, 2, r, std::move(pat), 0, false);
}

std::vector<Mat> subgroup_elements(const SubgroupSpec& spec, std::uint64_t guard) {
    validate_spec(spec);
    const auto& R = spec.R;
    const int n = spec.n;
    const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<std::vector<std::uint64_t>> cand(cells);
    std::uint64_t total = 1;
    for (std::size_t c = 0; c < cells; ++c) {
        cand[c] = entry_candidates(spec, spec.pat[c]);
        if (cand[c].empty()) return {};
        if (total > guard / cand[c].size()) throw SizeGuard("subgroup enumeration exceeds the guard");
        total *= cand[c].size();
    }
    const std::uint64_t q = static_cast<std::uint64_t>(R->q);
    const std::uint64_t linkmod =
        spec.diag_link_depth > 0 ? checked_pow(q, std::min(spec.diag_link_depth, spec.r)) : 1;

    std::vector<Mat> out;
    std::vector<std::size_t> idx(cells, 0);
    for (;;) {
        bool keep = true;
        if (spec.diag_link_depth > 0) {
            const std::uint64_t d0 = cand[0][idx[0]] % linkmod;
            if (d0 % q == 0) keep = false;
            for (int i = 1; keep && i < n; ++i) {
                const std::size_t c = static_cast<std::size_t>(i * n + i);
                if (cand[c][idx[c]] % linkmod != d0) keep = false;
            }
        }
        if (keep) {
            std::vector<Elem> entries;
            entries.reserve(cells);
            for (std::size_t c = 0; c < cells; ++c)
                entries.push_back(elem_from_rank(R, cand[c][idx[c]], spec.r));
            Mat m(R, n, std::move(entries));
            if (!spec.invertible_only || matlin::kmat_rank(matlin::kmat_residue(m)) == n)
                out.push_back(std::move(m));
        }
        // odometer, last cell fastest: emits matrices in increasing key order
        std::size_t c = cells;
        while (c > 0) {
            --c;
            if (++idx[c] < cand[c].size()) break;
            idx[c] = 0;
            if (c == 0) {
                verify_closure(out, spec.r);
                return out;
            }
        }
    }
}

void verify_closure(const std::vector<Mat>& elems, int prec) {
    if (elems.empty()) throw NotAGroup("a subgroup cannot be empty");
    const auto& R = elems[0].ring();
    const int n = elems[0].n();
    if (elems.size() > 20000) throw SizeGuard("closure verification too large");
    std::vector<std::uint64_t> keys;
    keys.reserve(elems.size());
    for (const Mat& m : elems) keys.push_back(mat_key(m.reduced(prec), prec));
    std::vector<std::uint64_t> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    auto contains = [&](std::uint64_t k) {
        return std::binary_search(sorted.begin(), sorted.end(), k);
    };
    if (!contains(mat_key(Mat::identity(R, n, prec), prec)))
        throw NotAGroup("identity missing");
    for (const Mat& a : elems) {
        try {
            if (!contains(mat_key(matlin::inverse(a.reduced(prec)), prec)))
                throw NotAGroup("inverse escapes the set");
        } catch (const NonUnit&) {
            throw NotAGroup("non-invertible element");
        }
        for (const Mat& b : elems)
            if (!contains(mat_key(mul(a.reduced(prec), b.reduced(prec)), prec)))
                throw NotAGroup("product escapes the set");
    }
}

std::vector<Mat> stabilizer_bruteforce(const Mat& alpha_bar, int r, std::uint64_t guard) {
    if (!alpha_bar.valid()) throw BadArgument("stabilizer of an empty matrix");
    const auto& R = alpha_bar.ring();
    const int n = alpha_bar.n();
    const int lp = alpha_bar.prec();
    if (lp < 1) throw PrecisionTooLow("stabilizer needs at least one visible digit");
    if (r < lp || r > R->rw) throw BadArgument("stabilizer modulus out of range");
    const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(R->q), n * n * r);
    if (total > guard) throw SizeGuard("stabilizer enumeration exceeds the guard");
    std::vector<Mat> out;
    for (std::uint64_t key = 0; key < total; ++key) {
        Mat g = mat_from_key(R, n, r, key);
        if (matlin::kmat_rank(matlin::kmat_residue(g)) != n) continue;
        Mat gl = g.reduced(lp);
        if (mul(gl, alpha_bar).same_value(mul(alpha_bar, gl))) out.push_back(std::move(g));
    }
    return out;
}

std::vector<Mat> stabilizer_formula(const Mat& beta_hat, int r, std::uint64_t guard) {
    if (!beta_hat.valid()) throw BadArgument("stabilizer of an empty matrix");
    if (beta_hat.n() != 2) throw BadArgument("the algebra formula is implemented for n = 2");
    const auto& R = beta_hat.ring();
    if (r < 1 || r > R->rw) throw BadArgument("stabilizer modulus out of range");
    if (beta_hat.prec() < r) throw PrecisionTooLow("the formula needs beta to all r digits");
    const Mat bh = beta_hat.reduced(r);
    const std::uint64_t Q = checked_pow(static_cast<std::uint64_t>(R->q), r);
    auto k1 = subgroup_elements(unit_filtration(R, Order{OrderKind::M, 2}, 1, r), guard);
    if (Q > guard / Q || Q * Q > guard / k1.size())
        throw SizeGuard("stabilizer formula enumeration exceeds the guard");
    std::vector<std::uint64_t> keys;
    for (std::uint64_t a = 0; a < Q; ++a)
        for (std::uint64_t b = 0; b < Q; ++b) {
            Mat u = Mat::scalar(R, 2, elem_from_rank(R, a, r)) + bh.scaled(elem_from_rank(R, b, r));
            if (matlin::kmat_rank(matlin::kmat_residue(u)) != 2) continue;
            for (const Mat& k : k1) keys.push_back(mat_key(mul(u, k), r));
        }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<Mat> out;
    out.reserve(keys.size());
    for (std::uint64_t k : keys) out.push_back(mat_from_key(R, 2, r, k));
    return out;
}

std::vector<Mat> conj_intersect(const SubgroupSpec& spec, const FracMat& g,
                                const SubgroupSpec& other, std::uint64_t guard) {
    if (!g.m.valid()) throw BadArgument("conjugation by an empty matrix");
    if (!spec.R->same_as(*other.R) || !spec.R->same_as(*g.ring()))
        throw DomainMismatch("conjugated intersection needs one common ring");
    if (spec.n != other.n || spec.n != g.n())
        throw DomainMismatch("conjugated intersection needs one common dimension");
    FracMat gi = matlin::frac_inverse(g);
    std::vector<Mat> out;
    for (const Mat& x : subgroup_elements(other, guard)) {
        FracMat y = frac_mul(frac_mul(g, frac(x, 0)), gi);
        if (frac_pattern_member(spec, y)) out.push_back(x);
    }
    return out;
}

bool char_trivial_on(const Character& chi, const SubgroupSpec& spec, std::uint64_t guard) {
    for (const Mat& x : subgroup_elements(spec, guard)) {
        try {
            if (!chi(x).is_zero()) return false;
        } catch (const NotInSubgroup& e) {
            throw DomainMismatch(std::string("character undefined on a subgroup element: ") + e.what());
        }
    }
    return true;
}

FracMat theta_beta(int which, const RingPtr& R) {
    if (which != 1 && which != 2) throw BadArgument("theta index must be 1 or 2");
    if (!R) throw BadArgument("theta needs a ring");
    Mat m = Mat::zero(R, 2, R->rw);
    m.at(0, 1) = Elem::one(R, R->rw);
    if (which == 1) m.at(1, 0) = Elem::one(R, R->rw).shifted_up(1);
    return frac(m, 1);
}

Character theta_from_beta(const RingPtr& R, const FracMat& beta) {
    if (!R || R->rw < 2) throw BadArgument("theta needs at least two digits of precision");
    if (!beta.m.valid() || beta.n() != 2 || !beta.ring()->same_as(*R))
        throw DomainMismatch("theta datum must be a 2 x 2 matrix over the given ring");
    const FracMat b = beta;
    return [R, b](const Mat& sM) -> AdditiveValue {
        if (!sM.valid() || sM.n() != 2 || !sM.ring()->same_as(*R))
            throw DomainMismatch("theta argument must be a 2 x 2 matrix over the theta ring");
        if (sM.prec() < 2) throw InsufficientPrecision("theta needs two digits of its argument");
        const Elem& s00 = sM.at(0, 0);
        if (s00.digit(0) == 0) throw NotInSubgroup("diagonal residue is not a unit");
        if (sM.at(1, 1).digit(0) != s00.digit(0))
            throw NotInSubgroup("diagonal residues disagree mod p");
        if (sM.at(1, 0).digit(0) != 0) throw NotInSubgroup("lower entry is not in p");
        Mat x = sub(sM, Mat::scalar(sM.ring(), 2, s00));
        FracElem t = frac_trace(frac_mul(b, frac(x, 0)));
        return psi(ring::frac_mul(ring::frac(s00.inv(), 0), t));
    };
}

Character theta_build(int which, const RingPtr& R) {
    return theta_from_beta(R, theta_beta(which, R));
}

ThetaReport theta_checks_for(const RingPtr& R, const FracMat& beta, std::uint64_t guard) {
    if (!R || R->rw < 2) throw BadArgument("theta checks need at least two digits");
    ThetaReport rep;
    Character th = theta_from_beta(R, beta);
    auto S = subgroup_elements(stab_span(R, 2), guard);
    const std::uint64_t q = static_cast<std::uint64_t>(R->q);
    const std::uint64_t Q2 = q * q;

    // value independent of which unit is split off the diagonal
    rep.well_defined = true;
    for (const Mat& sM : S) {
        bool first = true;
        AdditiveValue ref = AdditiveValue::zero(R->p);
        for (std::uint64_t ar = 0; ar < Q2 && rep.well_defined; ++ar) {
            if (ar % q == 0) continue;
            Elem a = elem_from_rank(R, ar, 2);
            Mat x = sub(sM.reduced(2), Mat::scalar(R, 2, a));
            if (x.at(0, 0).digit(0) != 0 || x.at(1, 1).digit(0) != 0 || x.at(1, 0).digit(0) != 0)
                continue;
            FracElem t = frac_trace(frac_mul(beta, frac(x, 0)));
            AdditiveValue v = psi(ring::frac_mul(ring::frac(a.inv(), 0), t));
            if (first) {
                ref = v;
                first = false;
            } else if (v != ref) {
                rep.well_defined = false;
            }
        }
        if (first) rep.well_defined = false; // no valid split at all
        if (!rep.well_defined) break;
    }

    rep.multiplicative = true;
    for (const Mat& a : S) {
        for (const Mat& b : S)
            if (th(mul(a, b)) != th(a) + th(b)) {
                rep.multiplicative = false;
                break;
            }
        if (!rep.multiplicative) break;
    }

    const Order mo{OrderKind::M, 2};
    bool trivial_u2 = true;
    for (const Mat& u : subgroup_elements(unit_filtration(R, mo, 2, 2), guard))
        if (!th(u).is_zero()) trivial_u2 = false;
    bool nontrivial_u1 = false;
    auto u1 = subgroup_elements(unit_filtration(R, mo, 1, 2), guard);
    for (const Mat& u : u1)
        if (!th(u).is_zero()) nontrivial_u1 = true;
    rep.conductor_two = trivial_u2 && nontrivial_u1;

    const FracMat b1 = theta_beta(1, R);
    rep.contains_beta0 = true;
    for (const Mat& u : u1) {
        FracElem t = frac_trace(frac_mul(b1, frac(sub(u, Mat::identity(R, 2, u.prec())), 0)));
        if (th(u) != psi(t)) {
            rep.contains_beta0 = false;
            break;
        }
    }
    return rep;
}

std::pair<ThetaReport, ThetaReport> theta_checks(const RingPtr& R, std::uint64_t guard) {
    return {theta_checks_for(R, theta_beta(1, R), guard),
            theta_checks_for(R, theta_beta(2, R), guard)};
}

bool gl2_small_conductor_check(const FracMat& beta, const Character& theta, int r,
                               std::uint64_t guard) {
    if (!beta.m.valid() || beta.n() != 2) throw BadArgument("the check needs a 2 x 2 datum");
    const auto& R = beta.ring();
    if (r < 2 || r > 3 || r > R->rw) throw BadArgument("the check is for conductor 2 or 3");
    Mat lifted = integral_part(frac_shift(beta, r - 1));
    if (!matlin::eisenstein(matlin::charpoly(lifted)))
        throw BadArgument("the orbit datum must have an Eisenstein characteristic polynomial");
    const Order mo{OrderKind::M, 2};
    const int mwin = (r + 1) / 2;
    strata::Stratum st{mo, r - 1, beta};
    bool agrees = true;
    for (const Mat& u : subgroup_elements(unit_filtration(R, mo, mwin, r), guard))
        if (theta(u) != strata::psi_beta(st, u, mwin)) {
            agrees = false;
            break;
        }
    if (!agrees) return false;
    for (const Mat& w : subgroup_elements(upper_unipotent(R, r, r - 2), guard))
        if (!theta(w).is_zero()) return true;
    return false;
}

bool verify_containment(int p, int m, int rw, std::uint64_t guard) {
    if (p < 2 || m < 0) throw BadArgument("containment check needs p >= 2, m >= 0");
    if (rw < m + 3) throw BadArgument("containment check needs rw >= m + 3");
    RingPtr R = ring::Ring::make({ring::Kind::Equal, p, 1, rw, {}});
    const int n = p;
    const Order io{OrderKind::I, n};
    const int base = 2 + m;
    const std::uint64_t per = checked_pow(static_cast<std::uint64_t>(p), rw - base);
    const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::uint64_t total = 1;
    for (std::size_t c = 0; c < cells; ++c) {
        if (total > guard / per) throw SizeGuard("containment enumeration exceeds the guard");
        total *= per;
    }
    std::vector<std::uint64_t> idx(cells, 0);
    for (std::uint64_t step = 0; step < total; ++step) {
        Mat x = Mat::identity(R, n, rw);
        std::uint64_t rest = step;
        for (std::size_t c = 0; c < cells; ++c) {
            std::uint64_t v = rest % per;
            rest /= per;
            if (v != 0) {
                Elem y = elem_from_rank(R, v, rw - base).shifted_up(base);
                const int i = static_cast<int>(c) / n, j = static_cast<int>(c) % n;
                x.at(i, j) = add(x.at(i, j), y);
            }
        }
        FracMat fx = frac(x, 0);
        for (int i = 2; i <= p + 1; ++i)
            if (!orders::in_U(fx, io, i + p * m)) return false;
    }
    return true;
}

bool containment_sharpness_probe(int p, int m) {
    if (p < 2 || m < 0) throw BadArgument("containment probe needs p >= 2, m >= 0");
    const int rw = m + 3;
    RingPtr R = ring::Ring::make({ring::Kind::Equal, p, 1, rw, {}});
    const int n = p;
    Mat x = Mat::identity(R, n, rw);
    x.at(n - 1, 0) = Elem::one(R, rw).shifted_up(2 + m);
    return !orders::in_U(frac(x, 0), Order{OrderKind::I, n}, (p + 2) + p * m);
}

bool det_character_scalar_check(const RingPtr& R, OrderKind kind, int n, int m,
                                std::uint64_t guard) {
    if (!R) throw BadArgument("the determinant lemma check needs a ring");
    if (m < 1) throw BadArgument("the determinant lemma check needs m >= 1");
    const int t = m + 1;
    if (R->rw < t) throw BadArgument("the determinant lemma check needs rw >= m + 1");
    const Order o{kind, n};
    auto gm = subgroup_elements(unit_filtration(R, o, m, t), guard);
    auto gm1 = subgroup_elements(unit_filtration(R, o, m + 1, t), guard);

    auto det_ranks = [&](const std::vector<Mat>& g) {
        std::vector<std::uint64_t> out;
        out.reserve(g.size());
        for (const Mat& x : g) out.push_back(matlin::det(x.reduced(t)).rank());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    const std::vector<std::uint64_t> d1 = det_ranks(gm);
    const std::vector<std::uint64_t> d2 = det_ranks(gm1);
    if (d1.size() > 12) throw SizeGuard("determinant image too large for the dual scan");

    // the quotient must have exponent p for the dual enumeration below
    const std::uint64_t one_rank = Elem::one(R, t).rank();
    std::map<std::uint64_t, std::size_t> pos;
    for (std::size_t i = 0; i < d1.size(); ++i) pos[d1[i]] = i;
    auto idx_of = [&](std::uint64_t rk) {
        auto it = pos.find(rk);
        if (it == pos.end()) throw Error("determinant image is not closed under products");
        return it->second;
    };
    for (std::uint64_t dr : d1) {
        Elem e = elem_from_rank(R, dr, t);
        Elem pw = Elem::one(R, t);
        for (int i = 0; i < R->p; ++i) pw = mul(pw, e);
        if (pw.rank() != one_rank) throw Error("determinant image exponent exceeds p");
    }

    // every character of the determinant image that kills the next level
    std::vector<std::vector<int>> duals;
    std::vector<int> c(d1.size(), 0);
    for (;;) {
        bool ok = c[idx_of(one_rank)] == 0;
        for (std::size_t i = 0; ok && i < d1.size(); ++i)
            for (std::size_t j = i; ok && j < d1.size(); ++j) {
                Elem prod = mul(elem_from_rank(R, d1[i], t), elem_from_rank(R, d1[j], t));
                if (c[idx_of(prod.rank())] != (c[i] + c[j]) % R->p) ok = false;
            }
        for (std::uint64_t dr : d2)
            if (ok && c[idx_of(dr)] != 0) ok = false;
        if (ok) duals.push_back(c);
        std::size_t k = c.size();
        while (k > 0) {
            --k;
            if (++c[k] < R->p) break;
            c[k] = 0;
            if (k == 0) goto dual_scan_done;
        }
    }
dual_scan_done:;

    // value tables of the scalar characters psi_b, b = c pi^{-s}, where computable
    std::vector<std::vector<AdditiveValue>> scalar_tables;
    const std::uint64_t q2 = checked_pow(static_cast<std::uint64_t>(R->q), 2);
    const Mat id = Mat::identity(R, n, t);
    for (int s = 0; s <= m + 1; ++s)
        for (std::uint64_t cr = 0; cr < q2; ++cr) {
            Elem ce = elem_from_rank(R, cr, t);
            std::vector<AdditiveValue> table;
            table.reserve(gm.size());
            bool computable = true;
            for (const Mat& x : gm) {
                Elem w = mul(ce, matlin::trace(sub(x.reduced(t), id)));
                try {
                    table.push_back(psi(FracElem{s, w}));
                } catch (const InsufficientPrecision&) {
                    computable = false;
                    break;
                }
            }
            if (computable) scalar_tables.push_back(std::move(table));
        }

    for (const auto& cvec : duals) {
        std::vector<AdditiveValue> table;
        table.reserve(gm.size());
        for (const Mat& x : gm)
            table.push_back(
                AdditiveValue::make(cvec[idx_of(matlin::det(x.reduced(t)).rank())], 1, R->p));
        bool found = false;
        for (const auto& st : scalar_tables) {
            if (st.size() != table.size()) continue;
            bool same = true;
            for (std::size_t i = 0; same && i < table.size(); ++i)
                if (!(st[i] == table[i])) same = false;
            if (same) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::vector<Example4Line> example4(const RingPtr& R, std::uint64_t guard) {
    if (!R || R->rw < 2) throw BadArgument("the worked example needs at least two digits");
    std::vector<Example4Line> out;
    auto [r1, r2] = theta_checks(R, guard);
    out.push_back({"theta1 passes its construction checks", true, r1.pass()});
    out.push_back({"theta2 passes its construction checks", true, r2.pass()});

    SubgroupSpec tri = from_entries(R, 2, 2,
                                    {{1, 1, false}, {0, 0, false}, {0, 2, false}, {1, 1, false}});
    out.push_back({"theta2 is trivial on the upper congruence subgroup (1+p, O; 0, 1+p)", true,
                   char_trivial_on(theta_build(2, R), tri, guard)});
    out.push_back({"theta1 is nontrivial on the upper congruence subgroup", true,
                   !char_trivial_on(theta_build(1, R), tri, guard)});

    bool degenerate_eis = matlin::eisenstein(
        matlin::charpoly(integral_part(frac_shift(theta_beta(2, R), 1))));
    out.push_back({"the degenerate datum fails the Eisenstein precondition", false, degenerate_eis});

    const FracMat b1 = theta_beta(1, R);
    out.push_back({"theta1 passes the small-conductor type criterion", true,
                   gl2_small_conductor_check(b1, theta_build(1, R), 2, guard)});
    out.push_back({"theta2 fails the small-conductor type criterion", false,
                   gl2_small_conductor_check(b1, theta_build(2, R), 2, guard)});
    return out;
}

} // namespace cusptype::grpfin
