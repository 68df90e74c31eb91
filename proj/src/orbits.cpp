#include "cusptype/orbits.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace cusptype::orbits {

LevelData level_data(int r) {
    if (r < 2) throw BadArgument("conductor must be >= 2");
    int l = (r + 1) / 2;
    return {r, l, r - l};
}

namespace {

std::uint64_t space_size(const RingPtr& R, int n, int lp, std::uint64_t guard) {
    std::uint64_t total = 1;
    for (int i = 0; i < n * n * lp; ++i) {
        if (total > guard / static_cast<unsigned>(R->q))
            throw SizeGuard("matrix space exceeds the size guard");
        total *= static_cast<unsigned>(R->q);
    }
    if (total > guard) throw SizeGuard("matrix space exceeds the size guard");
    return total;
}

// expand one conjugacy class by BFS; returns the sorted member keys
std::vector<std::uint64_t> expand_class(const RingPtr& R, int n, int lp, std::uint64_t start,
                                        const std::vector<std::pair<Mat, Mat>>& gens,
                                        std::uint64_t guard) {
    std::unordered_set<std::uint64_t> seen{start};
    std::vector<std::uint64_t> stack{start};
    while (!stack.empty()) {
        std::uint64_t key = stack.back();
        stack.pop_back();
        Mat x = matlin::mat_from_key(R, n, lp, key);
        for (const auto& [g, gi] : gens) {
            std::uint64_t y = matlin::mat_key(matlin::mul(matlin::mul(g, x), gi), lp);
            if (seen.insert(y).second) {
                if (seen.size() > guard) throw SizeGuard("orbit exceeds the size guard");
                stack.push_back(y);
            }
        }
    }
    std::vector<std::uint64_t> members(seen.begin(), seen.end());
    std::sort(members.begin(), members.end());
    return members;
}

} // namespace

std::vector<std::pair<Mat, Mat>> conjugators(const RingPtr& R, int n, int prec) {
    std::vector<std::pair<Mat, Mat>> gens;
    std::uint64_t Q = 1;
    for (int i = 0; i < prec; ++i) Q *= static_cast<unsigned>(R->q);
    // transvections 1 + a e_{ij}, inverse 1 - a e_{ij}
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::uint64_t a = 1; a < Q; ++a) {
                Elem e = ring::elem_from_rank(R, a, prec);
                Mat g = Mat::identity(R, n, prec);
                g.at(i, j) = e;
                Mat gi = Mat::identity(R, n, prec);
                gi.at(i, j) = -e;
                gens.emplace_back(std::move(g), std::move(gi));
            }
        }
    // diag(u, 1, ..., 1) for units u
    for (std::uint64_t a = 1; a < Q; ++a) {
        Elem u = ring::elem_from_rank(R, a, prec);
        if (u.digit(0) == 0) continue;
        Mat g = Mat::identity(R, n, prec);
        g.at(0, 0) = u;
        Mat gi = Mat::identity(R, n, prec);
        gi.at(0, 0) = u.inv();
        gens.emplace_back(std::move(g), std::move(gi));
    }
    return gens;
}

Mat orbit_rep(const Orbit& o) { return matlin::mat_from_key(o.R, o.n, o.level.lp, o.canon); }

Orbit orbit_of(const Mat& rep, int r, std::uint64_t guard) {
    LevelData lv = level_data(r);
    const auto& R = rep.ring();
    if (rep.prec() < lv.lp) throw InsufficientPrecision("orbit data needs precision lp");
    const int n = rep.n();
    Mat x = rep.reduced(lv.lp);
    auto gens = conjugators(R, n, lv.lp);
    auto members = expand_class(R, n, lv.lp, matlin::mat_key(x, lv.lp), gens, guard);
    return Orbit{R, n, lv, members.front(), std::move(members)};
}

std::vector<Orbit> enumerate_classes_serial(const RingPtr& R, int n, int lp, std::uint64_t guard) {
    if (lp < 1) throw BadArgument("precision must be >= 1");
    std::uint64_t total = space_size(R, n, lp, guard);
    auto gens = conjugators(R, n, lp);
    LevelData lv{2 * lp, lp, lp};
    std::vector<bool> visited(total, false);
    std::vector<Orbit> classes;
    for (std::uint64_t key = 0; key < total; ++key) {
        if (visited[key]) continue;
        auto members = expand_class(R, n, lp, key, gens, guard);
        for (std::uint64_t m : members) visited[m] = true;
        classes.push_back(Orbit{R, n, lv, members.front(), std::move(members)});
    }
    return classes;
}

std::vector<Orbit> enumerate_classes_parallel(const RingPtr& R, int n, int lp,
                                              std::uint64_t guard, int jobs) {
    if (lp < 1) throw BadArgument("precision must be >= 1");
    if (jobs < 1) throw BadArgument("worker count must be >= 1");
    std::uint64_t total = space_size(R, n, lp, guard);
    auto gens = conjugators(R, n, lp);
    std::vector<std::uint64_t> canon_of(total, 0);

    // each worker canonicalizes matrices independently; a per-thread memo
    // avoids re-expanding classes it has already seen
#ifdef CUSPTYPE_HAVE_OPENMP
#pragma omp parallel num_threads(jobs)
#endif
    {
        std::unordered_map<std::uint64_t, std::uint64_t> memo;
#ifdef CUSPTYPE_HAVE_OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
        for (long long key = 0; key < static_cast<long long>(total); ++key) {
            auto it = memo.find(static_cast<std::uint64_t>(key));
            if (it != memo.end()) {
                canon_of[static_cast<std::uint64_t>(key)] = it->second;
                continue;
            }
            auto members = expand_class(R, n, lp, static_cast<std::uint64_t>(key), gens, guard);
            std::uint64_t canon = members.front();
            for (std::uint64_t m : members) memo.emplace(m, canon);
            canon_of[static_cast<std::uint64_t>(key)] = canon;
        }
    }

    // deterministic merge: group ascending keys under their canonical key
    std::map<std::uint64_t, std::vector<std::uint64_t>> groups;
    for (std::uint64_t key = 0; key < total; ++key)
        groups[canon_of[key]].push_back(key);
    LevelData lv{2 * lp, lp, lp};
    std::vector<Orbit> classes;
    classes.reserve(groups.size());
    for (auto& [canon, members] : groups)
        classes.push_back(Orbit{R, n, lv, canon, std::move(members)});
    return classes;
}

std::vector<Orbit> enumerate_classes(const RingPtr& R, int n, int lp, std::uint64_t guard, int jobs) {
    if (jobs <= 1) return enumerate_classes_serial(R, n, lp, guard);
    return enumerate_classes_parallel(R, n, lp, guard, jobs);
}

Orbit twist(const Orbit& o, const Elem& c, std::uint64_t guard) {
    if (c.prec() < o.level.lp) throw InsufficientPrecision("twist scalar needs precision lp");
    Mat rep = matlin::add(orbit_rep(o), Mat::scalar(o.R, o.n, c.reduced(o.level.lp)));
    return orbit_of(rep, o.level.r, guard);
}

bool detect_irred(const Orbit& o) {
    return matlin::kpoly_irreducible(matlin::kmat_charpoly(matlin::kmat_residue(orbit_rep(o))));
}

namespace {

int ceil_pos(int a, int b) { return (a + b - 1) / b; } // a, b > 0

// necessary valuation pattern on the characteristic polynomial of a
// Pi^j-unit form; returns false only on a certain mismatch
bool newton_prefilter(const matlin::OPoly& f, int j, int n) {
    for (int i = 1; i <= n; ++i) {
        const Elem& a = f.c[static_cast<std::size_t>(n - i)];
        ring::Val v = a.valuation();
        if (i == n) { // constant term: valuation exactly j required
            if (v.exact && v.v != j) return false;
            if (!v.exact && v.v > j) return false;
        } else {
            int need = ceil_pos(j * i, n);
            if (v.exact && v.v < need) return false;
            // AtLeast(k) with k < need cannot reject: deeper digits are unknown
        }
    }
    return true;
}

} // namespace

bool detect_piform(const Orbit& o, int j, std::uint64_t guard) {
    const int n = o.n;
    if (j <= 0 || j >= n) throw BadArgument("Pi exponent must satisfy 0 < j < n");
    const auto& R = o.R;
    const int lp = o.level.lp;
    Mat rep = orbit_rep(o);
    matlin::OPoly f = matlin::charpoly(rep);

    if (!newton_prefilter(f, j, n)) return false;

    // at j = 1 and lp >= 2 the coset condition is equivalent to the
    // characteristic polynomial being Eisenstein, which is decidable here
    if (j == 1 && lp >= 2) return matlin::eisenstein(f);

    // literal scan of {Pi^j B : B in U_I mod p^{lp}} against the member list
    std::uint64_t Q = 1;
    for (int i = 0; i < lp; ++i) Q *= static_cast<unsigned>(R->q);
    std::vector<std::vector<std::uint64_t>> choices(static_cast<std::size_t>(n) * n);
    std::uint64_t count = 1;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto& c = choices[static_cast<std::size_t>(a * n + b)];
            for (std::uint64_t v = 0; v < Q; ++v) {
                int r0 = static_cast<int>(v % static_cast<unsigned>(R->q));
                if (a == b && r0 == 0) continue;   // diagonal: units
                if (a > b && r0 != 0) continue;    // below: divisible by pi
                c.push_back(v);
            }
            if (count > guard / c.size()) throw SizeGuard("coset scan exceeds the size guard");
            count *= c.size();
        }

    Mat pij = matlin::integral_part(orders::pi_power(R, orders::Order{orders::OrderKind::I, n}, j, lp));
    std::vector<std::size_t> idx(static_cast<std::size_t>(n) * n, 0);
    Mat B = Mat::zero(R, n, lp);
    while (true) {
        for (int t = 0; t < n * n; ++t)
            B.at(t / n, t % n) = ring::elem_from_rank(R, choices[static_cast<std::size_t>(t)][idx[static_cast<std::size_t>(t)]], lp);
        std::uint64_t key = matlin::mat_key(matlin::mul(pij, B), lp);
        if (std::binary_search(o.members.begin(), o.members.end(), key)) return true;
        int t = n * n - 1;
        while (t >= 0) {
            if (++idx[static_cast<std::size_t>(t)] < choices[static_cast<std::size_t>(t)].size()) break;
            idx[static_cast<std::size_t>(t)] = 0;
            --t;
        }
        if (t < 0) break;
    }
    return false;
}

bool is_regular_orbit(const Orbit& o) { return matlin::is_regular_modp(orbit_rep(o)); }

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::IsType: return "IsType";
        case Verdict::NotType: return "NotType";
        default: return "IndeterminateSmallConductor";
    }
}

ClassificationRecord classify(const Orbit& o, std::uint64_t guard) {
    ClassificationRecord rec;
    rec.regular = is_regular_orbit(o);
    const int lp = o.level.lp;
    std::uint64_t Q = 1;
    for (int i = 0; i < lp; ++i) Q *= static_cast<unsigned>(o.R->q);

    std::vector<Orbit> twisted;
    twisted.reserve(Q);
    for (std::uint64_t ci = 0; ci < Q; ++ci)
        twisted.push_back(ci == 0 ? o : twist(o, ring::elem_from_rank(o.R, ci, lp), guard));

    for (std::uint64_t ci = 0; ci < Q; ++ci)
        if (detect_irred(twisted[static_cast<std::size_t>(ci)])) {
            rec.label = "IrredModP";
            rec.has_twist = true;
            rec.twist_c = ci;
            rec.verdict = Verdict::IsType;
            return rec;
        }

    for (int j = 1; j < o.n; ++j)
        for (std::uint64_t ci = 0; ci < Q; ++ci)
            if (detect_piform(twisted[static_cast<std::size_t>(ci)], j, guard)) {
                rec.label = "PiForm";
                rec.j = j;
                rec.has_twist = true;
                rec.twist_c = ci;
                rec.verdict = o.level.r >= 4 ? Verdict::IsType
                                             : Verdict::IndeterminateSmallConductor;
                return rec;
            }

    rec.label = "NoCriterion";
    rec.verdict = Verdict::NotType;
    return rec;
}

std::vector<AtlasRow> atlas(const RingPtr& R, int n, int r, std::uint64_t guard, int jobs) {
    LevelData lv = level_data(r);
    std::vector<Orbit> classes = enumerate_classes(R, n, lv.lp, guard, jobs);
    std::vector<AtlasRow> rows;
    rows.reserve(classes.size());
    for (auto& o : classes) {
        o.level = lv;
        AtlasRow row{o, {}};
        row.record = classify(row.orbit, guard);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace cusptype::orbits
