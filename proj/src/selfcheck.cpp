#include "cusptype/selfcheck.hpp"

#include "cusptype/grpfin.hpp"
#include "cusptype/io.hpp"
#include "cusptype/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace cusptype::selfcheck {

using matlin::FracMat;
using matlin::Mat;
using orders::Order;
using orders::OrderKind;
using ring::Elem;
using ring::Kind;
using ring::RingPtr;

namespace {

RingPtr equal_ring(int p, int f, int rw) { return ring::Ring::make({Kind::Equal, p, f, rw, {}}); }
RingPtr mixed_ring(int p, int rw) { return ring::Ring::make({Kind::Mixed, p, 1, rw, {}}); }

std::uint64_t upow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

CheckResult fail(std::string name, std::string detail) {
    return {std::move(name), false, std::move(detail)};
}

CheckResult pass(std::string name, std::string detail) {
    return {std::move(name), true, std::move(detail)};
}

} // namespace

// ---------------------------------------------------------------------------
// 1: the 2 x 2 class census mod p at q = 2, against the brute-force
//    partition, and both shape detectors against the literal coset scan
CheckResult check_class_count_and_detectors() {
    const std::string name = "class census and shape detectors (q=2, n=2, r=2)";
    RingPtr R = equal_ring(2, 1, 2);
    auto classes = orbits::enumerate_classes(R, 2, 1);
    if (classes.size() != 6)
        return fail(name, "expected 6 classes, found " + std::to_string(classes.size()));
    auto blocks = oracle::brute_conjugacy_partition(R, 2, 1);
    if (blocks.size() != classes.size()) return fail(name, "brute partition size differs");
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].members != blocks[i]) return fail(name, "class membership differs from brute force");
    int irred = 0, piform = 0;
    for (const auto& o : classes) {
        bool fast = orbits::detect_piform(o, 1);
        bool brute = oracle::brute_coset_intersect(o, 1);
        if (fast != brute) return fail(name, "Pi-form detector disagrees with the coset scan");
        irred += orbits::detect_irred(o) ? 1 : 0;
        piform += fast ? 1 : 0;
    }
    if (irred != 1) return fail(name, "expected exactly one irreducible-residue class, found " + std::to_string(irred));
    if (piform != 1) return fail(name, "expected exactly one Pi-form class, found " + std::to_string(piform));
    return pass(name, "6 classes; detectors match the brute scans; one class per shape");
}

// ---------------------------------------------------------------------------
// 2: simplicity by matrix criterion vs field definition, exhaustively
CheckResult check_criterion_definition_agreement(bool full) {
    const std::string name = "simplicity criterion agrees with the definition";
    const std::uint64_t sweep_guard = 300000;
    long long tested = 0, skipped_scalar = 0, skipped_prec = 0, inconclusive = 0;

    struct Domain {
        RingPtr R;
        int dim;
    };
    std::vector<Domain> domains;
    for (int q : {2, 3})
        for (int dim : {2, 3}) domains.push_back({equal_ring(q, 1, 6), dim});
    for (int p : {2, 3}) domains.push_back({mixed_ring(p, 6), 2});

    for (const auto& dom : domains) {
        const RingPtr& R = dom.R;
        const int dim = dom.dim;
        for (OrderKind kind : {OrderKind::M, OrderKind::I}) {
            const Order o{kind, dim};
            for (int level = 1; level <= 3; ++level) {
                // 3^18 is out of reach at dim 3, q = 3; quick mode keeps all
                // dim-3 sweeps at one digit
                const int prec = (dim == 3 && (R->q == 3 || !full)) ? 1 : 2;
                std::uint64_t total = upow(R->q, dim * dim * prec);
                if (total > sweep_guard) continue;
                const int s = kind == OrderKind::M ? level : (level + dim - 1) / dim;
                for (std::uint64_t key = 0; key < total; ++key) {
                    Mat u = matlin::mat_from_key(R, dim, prec, key);
                    strata::Stratum st{o, level, FracMat{s, u}};
                    try {
                        strata::validate(st);
                    } catch (const BadArgument&) {
                        continue;
                    } catch (const InsufficientPrecision&) {
                        // whether beta even reaches down to -level is hidden
                        ++skipped_prec;
                        continue;
                    }
                    bool crit = false, defn = false, defn_known = true;
                    try {
                        crit = strata::is_simple_via_criterion(st);
                    } catch (const ScalarEquivalent&) {
                        ++skipped_scalar;
                        continue;
                    } catch (const InsufficientPrecision&) {
                        ++skipped_prec;
                        continue;
                    } catch (const PrecisionTooLow&) {
                        // the shift inside the route stripped the digits it needs
                        ++skipped_prec;
                        continue;
                    }
                    try {
                        defn = strata::is_simple_via_definition(st);
                    } catch (const ScalarEquivalent&) {
                        ++skipped_scalar;
                        continue;
                    } catch (const InconclusiveFieldData&) {
                        defn_known = false;
                    } catch (const InsufficientPrecision&) {
                        ++skipped_prec;
                        continue;
                    } catch (const PrecisionTooLow&) {
                        ++skipped_prec;
                        continue;
                    }
                    ++tested;
                    std::ostringstream w;
                    w << "ring " << R->token() << " order " << (kind == OrderKind::M ? "M" : "I")
                      << " dim " << dim << " level " << level << " key " << key;
                    if (defn_known && crit != defn)
                        return fail(name, "routes disagree at " + w.str());
                    if (!defn_known) {
                        ++inconclusive;
                        if (crit) return fail(name, "criterion true but definition inconclusive at " + w.str());
                    }
                    // a simple stratum's datum must be minimal (one-sided oracle);
                    // the oracle shifts beta differently, so it may starve for
                    // digits even where the routes above could decide
                    if (crit || (defn_known && defn)) {
                        try {
                            if (!oracle::brute_minimality(st.beta))
                                return fail(name, "simple stratum with non-minimal datum at " + w.str());
                        } catch (const InconclusiveFieldData&) {
                        } catch (const InsufficientPrecision&) {
                        } catch (const PrecisionTooLow&) {
                        }
                    }
                }
            }
        }
    }
    std::ostringstream d;
    d << tested << " strata compared, " << skipped_scalar << " scalar-equivalent skipped, "
      << skipped_prec << " precision-skipped, " << inconclusive << " definition-inconclusive";
    return pass(name, d.str());
}

// ---------------------------------------------------------------------------
// 3: the Eisenstein census over F_2[t]/t^3 and Krylov companion reduction
CheckResult check_companion_reduction() {
    const std::string name = "Eisenstein census and companion reduction (q=2, prec 3)";
    RingPtr R = equal_ring(2, 1, 3);
    std::vector<matlin::OPoly> eis;
    for (std::uint64_t c0 = 0; c0 < 8; ++c0)
        for (std::uint64_t c1 = 0; c1 < 8; ++c1) {
            matlin::OPoly f{R, {ring::elem_from_rank(R, c0, 3), ring::elem_from_rank(R, c1, 3),
                                Elem::one(R, 3)}};
            bool is = false;
            try {
                is = matlin::eisenstein(f);
            } catch (const PrecisionTooLow&) {
                return fail(name, "Eisenstein test undecidable at full precision");
            }
            if (is) eis.push_back(f);
        }
    if (eis.size() != 8)
        return fail(name, "expected 8 Eisenstein polynomials, found " + std::to_string(eis.size()));

    std::mt19937_64 rng(0x00c0ffee5eedULL);
    auto random_invertible = [&]() {
        for (;;) {
            std::vector<Elem> e;
            for (int i = 0; i < 4; ++i)
                e.push_back(ring::elem_from_rank(R, rng() % 8, 3));
            Mat g(R, 2, e);
            if (matlin::kmat_rank(matlin::kmat_residue(g)) == 2) return g;
        }
    };
    for (const auto& f : eis) {
        Mat c = matlin::companion(f);
        for (int trial = 0; trial < 50; ++trial) {
            Mat g = random_invertible();
            Mat m = mul(mul(g, c), matlin::inverse(g));
            auto [h, comp] = matlin::reduce_to_companion(m);
            if (!comp.same_value(matlin::companion(matlin::charpoly(m))))
                return fail(name, "companion reduction is not digit-exact");
            Mat back = mul(mul(matlin::inverse(h), m), h);
            if (!back.same_value(comp)) return fail(name, "Krylov conjugation does not reduce");
        }
    }
    return pass(name, "8 Eisenstein polynomials; 400 conjugates reduced digit-exactly");
}

// ---------------------------------------------------------------------------
// 4: residues of Pi^j * unit are regular exactly at j = 1; the two
//    regularity routes agree on full matrix spaces
CheckResult check_regularity() {
    const std::string name = "Pi-form regularity and route agreement";
    {
        RingPtr R = equal_ring(2, 1, 2);
        const Order io{OrderKind::I, 3};
        auto units = grpfin::subgroup_elements(grpfin::unit_filtration(R, io, 0, 1));
        for (const Mat& b : units)
            for (int j = 1; j <= 2; ++j) {
                FracMat pj = orders::pi_power(R, io, j, 2);
                Mat m = matlin::integral_part(matlin::frac_mul(pj, matlin::frac(b.zero_extended(2), 0)));
                bool reg = matlin::is_regular_modp(m.reduced(1));
                if (reg != (j == 1))
                    return fail(name, "dim-3 Pi^" + std::to_string(j) + " unit regularity wrong");
            }
    }
    {
        RingPtr R = equal_ring(2, 1, 2);
        const Order io{OrderKind::I, 5};
        std::mt19937_64 rng(0x5eed0002ULL);
        for (int trial = 0; trial < 6; ++trial) {
            Mat b = Mat::identity(R, 5, 2);
            if (trial > 0) {
                // random unit of the minimal order: unit diagonal, strictly
                // lower part divisible by pi
                for (int i = 0; i < 5; ++i)
                    for (int j = 0; j < 5; ++j) {
                        std::uint64_t r = rng() % 4;
                        if (i == j) r |= 1;
                        if (i > j) r &= ~UINT64_C(1);
                        b.at(i, j) = ring::elem_from_rank(R, r, 2);
                    }
            }
            for (int j = 1; j <= 4; ++j) {
                FracMat pj = orders::pi_power(R, io, j, 2);
                Mat m = matlin::integral_part(matlin::frac_mul(pj, matlin::frac(b, 0)));
                if (matlin::is_regular_modp(m.reduced(1)) != (j == 1))
                    return fail(name, "dim-5 Pi^" + std::to_string(j) + " unit regularity wrong");
            }
        }
    }
    // route agreement and the scalar/non-scalar split on small full spaces
    struct Space {
        int q, n;
    };
    for (Space sp : {Space{2, 2}, Space{3, 2}, Space{2, 3}}) {
        RingPtr R = equal_ring(sp.q, 1, 1);
        const std::uint64_t total = upow(sp.q, sp.n * sp.n);
        for (std::uint64_t key = 0; key < total; ++key) {
            Mat m = matlin::mat_from_key(R, sp.n, 1, key);
            bool reg = matlin::is_regular_modp(m); // throws if the routes split
            if (sp.n == 2) {
                bool scalar = true;
                for (int i = 0; i < 2 && scalar; ++i)
                    for (int j = 0; j < 2 && scalar; ++j)
                        if (m.at(i, j).digit(0) != (i == j ? m.at(0, 0).digit(0) : 0)) scalar = false;
                if (reg == scalar)
                    return fail(name, "2 x 2 regularity must coincide with non-scalarity");
            }
        }
    }
    return pass(name, "Pi^j regular iff j = 1; regularity routes agree on 609 matrices");
}

// ---------------------------------------------------------------------------
// 5: the stabilizer formula against brute force, with frozen orders
CheckResult check_stabilizers() {
    const std::string name = "stabilizer formula vs brute force (r=2)";
    for (int q : {2, 3}) {
        RingPtr R = equal_ring(q, 1, 2);
        std::vector<std::pair<std::string, Mat>> betas;
        {
            Mat nil = Mat::zero(R, 2, 2);
            nil.at(0, 1) = Elem::one(R, 2);
            betas.emplace_back("nilpotent", nil);
            matlin::OPoly f{R, {Elem::one(R, 2), Elem::one(R, 2), Elem::one(R, 2)}};
            betas.emplace_back("companion", matlin::companion(f));
        }
        for (const auto& [tag, beta] : betas) {
            auto brute = grpfin::stabilizer_bruteforce(beta.reduced(1), 2);
            auto formula = grpfin::stabilizer_formula(beta, 2);
            if (brute.size() != formula.size())
                return fail(name, tag + " q=" + std::to_string(q) + ": sizes " +
                                      std::to_string(brute.size()) + " vs " +
                                      std::to_string(formula.size()));
            for (std::size_t i = 0; i < brute.size(); ++i)
                if (!brute[i].same_value(formula[i]))
                    return fail(name, tag + " q=" + std::to_string(q) + ": element sets differ");
            const std::size_t want = q == 2 ? (tag == "nilpotent" ? 32 : 48) : 486;
            if (brute.size() != want)
                return fail(name, tag + " q=" + std::to_string(q) + ": order " +
                                      std::to_string(brute.size()) + ", expected " +
                                      std::to_string(want));
        }
    }
    return pass(name, "orders 32, 48 (q=2) and 486, 486 (q=3); sets coincide");
}

// ---------------------------------------------------------------------------
// 6: the worked conductor-2 example at q = 2, q = 3 and mixed p = 2
CheckResult check_worked_example() {
    const std::string name = "worked conductor-2 example";
    std::vector<RingPtr> rings = {equal_ring(2, 1, 3), equal_ring(3, 1, 3), mixed_ring(2, 3)};
    for (const RingPtr& R : rings)
        for (const auto& line : grpfin::example4(R))
            if (!line.pass())
                return fail(name, R->token() + ": " + line.claim + " (expected " +
                                      (line.expected ? "true" : "false") + ", got " +
                                      (line.observed ? "true" : "false") + ")");
    return pass(name, "all claims hold over " + std::to_string(rings.size()) + " rings");
}

// ---------------------------------------------------------------------------
// 7: unit-filtration containment with its sharpness probe, and the
//    conductor of psi_beta on canonical simple strata
CheckResult check_containment_and_conductors(bool full) {
    const std::string name = "filtration containment and psi_beta conductors";
    for (int p : {2, 3})
        for (int m : {0, 1}) {
            if (!full && p == 3 && m == 1) continue; // 3^18 elements
            std::uint64_t guard = UINT64_C(1) << 26;
            std::uint64_t size = upow(p, p * p * ((m + 3) - (2 + m)));
            if (size > 1000000) continue;
            if (!grpfin::verify_containment(p, m, m + 3, guard))
                return fail(name, "containment fails at p=" + std::to_string(p) +
                                      ", m=" + std::to_string(m));
            if (!grpfin::containment_sharpness_probe(p, m))
                return fail(name, "sharpness probe fails at p=" + std::to_string(p) +
                                      ", m=" + std::to_string(m));
        }

    // canonical simple strata and the triviality threshold of psi_beta
    struct Case {
        int q, dim, level;
        OrderKind kind;
    };
    std::vector<Case> cases;
    for (int q : {2, 3}) {
        for (int level = 1; level <= 4; ++level) cases.push_back({q, 2, level, OrderKind::M});
        for (int level = 1; level <= 3; ++level) cases.push_back({q, 3, level, OrderKind::M});
        for (int level : {1, 3}) cases.push_back({q, 2, level, OrderKind::I});
        for (int level : {1, 2}) cases.push_back({q, 3, level, OrderKind::I});
    }
    long long swept = 0;
    for (const Case& c : cases) {
        const int t = c.level + 1; // psi_beta needs digits through index level
        RingPtr R = equal_ring(c.q, 1, t + c.level + 1);
        const Order o{c.kind, c.dim};
        FracMat beta;
        if (c.kind == OrderKind::M) {
            std::vector<int> coeffs;
            if (c.dim == 2)
                coeffs = c.q == 2 ? std::vector<int>{1, 1} : std::vector<int>{1, 0};
            else
                coeffs = c.q == 2 ? std::vector<int>{1, 1, 0} : std::vector<int>{1, 2, 0};
            matlin::OPoly f{R, {}};
            for (int cc : coeffs) f.c.push_back(Elem::from_int(R, cc, R->rw));
            f.c.push_back(Elem::one(R, R->rw));
            beta = FracMat{c.level, matlin::companion(f)};
        } else {
            beta = orders::pi_power(R, o, -c.level, R->rw);
        }
        strata::Stratum st{o, c.level, beta};
        if (!strata::is_simple_via_criterion(st))
            return fail(name, "canonical stratum not simple at q=" + std::to_string(c.q) +
                                  " dim=" + std::to_string(c.dim) + " level=" + std::to_string(c.level));
        const int m0 = c.level / 2 + 1;
        const int cond = strata::type_conductor(st);
        const Order mo{OrderKind::M, c.dim};
        auto window = [&](int a) {
            grpfin::SubgroupSpec spec = grpfin::unit_filtration(R, mo, a, t);
            grpfin::SubgroupSpec dom = grpfin::unit_filtration(R, o, m0, t);
            for (int i = 0; i < c.dim; ++i)
                for (int j = 0; j < c.dim; ++j) {
                    auto& pe = spec.at(i, j);
                    pe.depth = std::max(pe.depth, dom.at(i, j).depth);
                }
            return spec;
        };
        auto domain_size = [&](const grpfin::SubgroupSpec& spec) {
            std::uint64_t n = 1;
            for (const auto& pe : spec.pat)
                n *= upow(R->q, t - std::min(pe.depth, t));
            return n;
        };
        grpfin::SubgroupSpec inner = window(cond), outer = window(cond - 1);
        // every window goes through the closure-verified enumerator, whose
        // quadratic check bounds what can be scanned exhaustively
        if (domain_size(outer) > (full ? 8000 : 2000)) continue;
        bool trivial_inner = true, nontrivial_outer = false;
        for (const Mat& x : grpfin::subgroup_elements(inner, UINT64_C(1) << 26))
            if (!strata::psi_beta(st, x, m0).is_zero()) trivial_inner = false;
        for (const Mat& x : grpfin::subgroup_elements(outer, UINT64_C(1) << 26))
            if (!strata::psi_beta(st, x, m0).is_zero()) nontrivial_outer = true;
        ++swept;
        if (!trivial_inner)
            return fail(name, "psi_beta not trivial at its conductor, q=" + std::to_string(c.q) +
                                  " dim=" + std::to_string(c.dim) + " level=" + std::to_string(c.level) +
                                  (c.kind == OrderKind::M ? " M" : " I"));
        if (!nontrivial_outer)
            return fail(name, "psi_beta already trivial below its conductor, q=" + std::to_string(c.q) +
                                  " dim=" + std::to_string(c.dim) + " level=" + std::to_string(c.level) +
                                  (c.kind == OrderKind::M ? " M" : " I"));
    }
    return pass(name, "containment holds and is sharp; " + std::to_string(swept) +
                          " conductor windows verified");
}

// ---------------------------------------------------------------------------
// 8: conjugated congruence intersections against the displayed patterns
CheckResult check_conjugated_intersections() {
    const std::string name = "conjugated congruence intersections (q=2, r=3)";
    RingPtr R = equal_ring(2, 1, 4);
    const int r = 3;
    grpfin::SubgroupSpec spec = grpfin::unit_filtration(R, Order{OrderKind::M, 2}, r - 1, r);
    grpfin::SubgroupSpec stab = grpfin::stab_span(R, r);
    auto keyset = [&](const std::vector<Mat>& v) {
        std::vector<std::uint64_t> k;
        k.reserve(v.size());
        for (const Mat& m : v) k.push_back(matlin::mat_key(m.reduced(r), r));
        return k;
    };
    for (int side = 0; side < 2; ++side)
        for (int n = 0; n <= 1; ++n) {
            Mat g = Mat::identity(R, 2, R->rw);
            g.at(side == 0 ? 1 : 0, side == 0 ? 1 : 0) = Elem::one(R, R->rw).shifted_up(n);
            auto got = grpfin::conj_intersect(spec, matlin::frac(g, 0), stab);
            const int up = side == 0 ? std::min(r, r - 1 + n) : std::max(1, r - 1 - n);
            const int low = side == 0 ? std::max(1, r - 1 - n) : std::min(r, r - 1 + n);
            grpfin::SubgroupSpec expect = grpfin::from_entries(
                R, 2, r,
                {{1, r - 1, false}, {0, up, false},
                 {0, low, false}, {1, r - 1, false}});
            auto want = grpfin::subgroup_elements(expect);
            if (keyset(got) != keyset(want))
                return fail(name, "pattern mismatch at side " + std::to_string(side) +
                                      ", shift " + std::to_string(n));
        }
    return pass(name, "all four displayed patterns reproduced exactly");
}

// ---------------------------------------------------------------------------
// 9: characters factoring through det are the scalar ones
CheckResult check_det_characters() {
    const std::string name = "det-factoring characters are scalar (m=1)";
    for (int q : {2, 3}) {
        RingPtr R = equal_ring(q, 1, 3);
        for (OrderKind kind : {OrderKind::M, OrderKind::I})
            if (!grpfin::det_character_scalar_check(R, kind, 2, 1))
                return fail(name, std::string(kind == OrderKind::M ? "M" : "I") +
                                      " order fails at q=" + std::to_string(q));
    }
    return pass(name, "holds for both orders at q = 2 and q = 3");
}

// ---------------------------------------------------------------------------
// 10: classes with Eisenstein charpoly stay nonzero mod p under every twist
CheckResult check_twist_nonvanishing() {
    const std::string name = "Eisenstein classes survive scalar twisting (q=2, lp=2)";
    RingPtr R = equal_ring(2, 1, 3);
    auto classes = orbits::enumerate_classes(R, 2, 2);
    int eis_classes = 0;
    for (const auto& o : classes) {
        Mat rep = orbits::orbit_rep(o);
        bool eis = false;
        try {
            eis = matlin::eisenstein(matlin::charpoly(rep));
        } catch (const PrecisionTooLow&) {
            eis = false;
        }
        if (!eis) continue;
        ++eis_classes;
        for (std::uint64_t c = 0; c < 4; ++c) {
            Mat t = add(rep, Mat::scalar(R, 2, ring::elem_from_rank(R, c, 2)));
            bool nonzero = false;
            for (int i = 0; i < 2 && !nonzero; ++i)
                for (int j = 0; j < 2 && !nonzero; ++j)
                    if (t.at(i, j).digit(0) != 0) nonzero = true;
            if (!nonzero)
                return fail(name, "twist by rank " + std::to_string(c) + " lands in p M");
        }
    }
    if (eis_classes == 0) return fail(name, "no Eisenstein classes found");
    return pass(name, std::to_string(eis_classes) + " Eisenstein classes, all twists nonzero mod p");
}

// ---------------------------------------------------------------------------
// 11: the atlas is byte-identical for any worker count
CheckResult check_atlas_determinism() {
    const std::string name = "atlas worker-count determinism (q=2, n=2, r=4)";
    RingPtr R = equal_ring(2, 1, 3);
    std::string csv1 = io::atlas_csv(orbits::atlas(R, 2, 4, orbits::kDefaultGuard, 1));
    std::string csv3 = io::atlas_csv(orbits::atlas(R, 2, 4, orbits::kDefaultGuard, 3));
    std::string csv4 = io::atlas_csv(orbits::atlas(R, 2, 4, orbits::kDefaultGuard, 4));
    if (csv1 != csv3 || csv1 != csv4) return fail(name, "CSV differs across worker counts");
    if (csv1.find("ring,n,r,l,lp,") != 0) return fail(name, "missing header");
    return pass(name, std::to_string(std::count(csv1.begin(), csv1.end(), '\n') - 1) +
                          " rows identical at 1, 3 and 4 workers");
}

namespace {

// a check that throws still yields its one verdict line, as a failure
CheckResult guarded(const char* name, const std::function<CheckResult()>& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return {name, false, std::string("aborted: ") + e.what()};
    }
}

} // namespace

std::vector<CheckResult> run_all(bool full) {
    std::vector<CheckResult> out;
    out.push_back(guarded("class census and shape detectors (q=2, n=2, r=2)",
                          [] { return check_class_count_and_detectors(); }));
    out.push_back(guarded("simplicity criterion agrees with the definition",
                          [&] { return check_criterion_definition_agreement(full); }));
    out.push_back(guarded("Eisenstein census and companion reduction (q=2, prec 3)",
                          [] { return check_companion_reduction(); }));
    out.push_back(guarded("Pi-form regularity and route agreement",
                          [] { return check_regularity(); }));
    out.push_back(guarded("stabilizer formula vs brute force (r=2)",
                          [] { return check_stabilizers(); }));
    out.push_back(guarded("worked conductor-2 example",
                          [] { return check_worked_example(); }));
    out.push_back(guarded("filtration containment and psi_beta conductors",
                          [&] { return check_containment_and_conductors(full); }));
    out.push_back(guarded("conjugated congruence intersections (q=2, r=3)",
                          [] { return check_conjugated_intersections(); }));
    out.push_back(guarded("det-factoring characters are scalar (m=1)",
                          [] { return check_det_characters(); }));
    out.push_back(guarded("Eisenstein classes survive scalar twisting (q=2, lp=2)",
                          [] { return check_twist_nonvanishing(); }));
    out.push_back(guarded("atlas worker-count determinism (q=2, n=2, r=4)",
                          [] { return check_atlas_determinism(); }));
    return out;
}

} // namespace cusptype::selfcheck
