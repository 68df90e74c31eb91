// Command-line front end: classify a conjugacy class, tabulate a full atlas,
// compare stabilizer computations, reduce to companion form, replay the
// conductor-2 character example, or run the acceptance checks.

#include "cusptype/grpfin.hpp"
#include "cusptype/io.hpp"
#include "cusptype/selfcheck.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using cusptype::BadArgument;
using cusptype::matlin::Mat;
using cusptype::ring::RingPtr;
namespace io = cusptype::io;
namespace orbits = cusptype::orbits;
namespace grpfin = cusptype::grpfin;
namespace ring = cusptype::ring;
namespace matlin = cusptype::matlin;
namespace selfcheck = cusptype::selfcheck;

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadArgument("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_all(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadArgument("cannot open output file: " + path);
    out << text;
}

// q is factored as p^f; "mixed" additionally demands that q be prime
RingPtr ring_from_flags(const std::string& kind, int q, int rw) {
    if (q < 2) throw BadArgument("the residue field size must be at least 2");
    int p = 2;
    while (q % p != 0) ++p;
    int f = 0;
    long long rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++f;
    }
    if (rest != 1) throw BadArgument("the residue field size must be a prime power");
    ring::Spec spec;
    spec.kind = kind == "mixed" ? ring::Kind::Mixed : ring::Kind::Equal;
    spec.p = p;
    spec.f = f;
    spec.rw = rw;
    return ring::Ring::make(spec);
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

int cmd_classify(const std::string& file, int r, std::uint64_t guard,
                 const std::string& format) {
    Mat m = io::mat_from_json(io::json::parse(read_all(file)));
    orbits::Orbit o = orbits::orbit_of(m, r, guard);
    orbits::ClassificationRecord rec = orbits::classify(o, guard);
    if (format == "json") {
        io::json out;
        out["ring"] = o.R->token();
        out["n"] = o.n;
        out["r"] = o.level.r;
        out["l"] = o.level.l;
        out["lp"] = o.level.lp;
        out["class_size"] = o.members.size();
        out["label"] = rec.label;
        if (rec.label == "PiForm") out["j"] = rec.j;
        out["has_twist"] = rec.has_twist;
        if (rec.has_twist) out["twist_c"] = rec.twist_c;
        out["verdict"] = orbits::verdict_name(rec.verdict);
        out["regular"] = rec.regular;
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "ring: " << o.R->token() << '\n'
                  << "n: " << o.n << '\n'
                  << "r: " << o.level.r << " (l=" << o.level.l << ", lp=" << o.level.lp
                  << ")\n"
                  << "class_size: " << o.members.size() << '\n'
                  << "label: " << rec.label << '\n';
        if (rec.label == "PiForm") std::cout << "j: " << rec.j << '\n';
        if (rec.has_twist) std::cout << "twist_c: " << rec.twist_c << '\n';
        std::cout << "verdict: " << orbits::verdict_name(rec.verdict) << '\n'
                  << "regular: " << (rec.regular ? "true" : "false") << '\n';
    }
    return rec.verdict == orbits::Verdict::IndeterminateSmallConductor ? 2 : 0;
}

int cmd_atlas(const std::string& kind, int q, int n, int r, const std::string& out_path,
              int jobs, std::uint64_t guard) {
    orbits::LevelData ld = orbits::level_data(r);
    RingPtr R = ring_from_flags(kind, q, ld.lp);
    std::vector<orbits::AtlasRow> rows = orbits::atlas(R, n, r, guard, jobs);
    write_all(out_path, io::atlas_csv(rows));
    int irred = 0, piform = 0, nocrit = 0, istype = 0, nottype = 0, indet = 0;
    for (const auto& row : rows) {
        if (row.record.label == "IrredModP") ++irred;
        else if (row.record.label == "PiForm") ++piform;
        else ++nocrit;
        switch (row.record.verdict) {
            case orbits::Verdict::IsType: ++istype; break;
            case orbits::Verdict::NotType: ++nottype; break;
            case orbits::Verdict::IndeterminateSmallConductor: ++indet; break;
        }
    }
    std::cerr << "classes: " << rows.size() << "  IrredModP: " << irred
              << "  PiForm: " << piform << "  NoCriterion: " << nocrit
              << "  IsType: " << istype << "  NotType: " << nottype
              << "  Indeterminate: " << indet << '\n';
    return 0;
}

int cmd_stabilizer(const std::string& file, int r, std::uint64_t guard,
                   const std::string& format) {
    Mat beta = io::mat_from_json(io::json::parse(read_all(file)));
    if (beta.n() != 2)
        throw BadArgument("the closed-form stabilizer covers 2x2 matrices only");
    std::vector<Mat> brute = grpfin::stabilizer_bruteforce(beta.reduced(1), r, guard);
    std::vector<Mat> formula = grpfin::stabilizer_formula(beta, r, guard);
    auto keys = [&](const std::vector<Mat>& v) {
        std::vector<std::uint64_t> k;
        k.reserve(v.size());
        for (const Mat& m : v) k.push_back(matlin::mat_key(m.reduced(r), r));
        return k;
    };
    const bool agree = keys(brute) == keys(formula);
    if (format == "json") {
        io::json out;
        out["ring"] = beta.ring()->token();
        out["r"] = r;
        out["brute_force_order"] = brute.size();
        out["closed_form_order"] = formula.size();
        out["agree"] = agree;
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "ring: " << beta.ring()->token() << '\n'
                  << "r: " << r << '\n'
                  << "brute_force_order: " << brute.size() << '\n'
                  << "closed_form_order: " << formula.size() << '\n'
                  << "agree: " << (agree ? "true" : "false") << '\n';
    }
    return agree ? 0 : 1;
}

int cmd_companion(const std::string& file) {
    Mat m = io::mat_from_json(io::json::parse(read_all(file)));
    auto [g, comp] = matlin::reduce_to_companion(m);
    io::json out;
    out["conjugator"] = io::mat_to_json(g);
    out["companion"] = io::mat_to_json(comp);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_example4(const std::string& kind, int q, std::uint64_t guard) {
    RingPtr R = ring_from_flags(kind, q, 3);
    std::vector<grpfin::Example4Line> lines = grpfin::example4(R, guard);
    int failures = 0;
    for (const auto& line : lines) {
        const bool ok = line.pass();
        failures += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << line.claim << " (expected "
                  << yesno(line.expected) << ", observed " << yesno(line.observed)
                  << ")\n";
    }
    return failures;
}

int cmd_selftest(const std::string& level) {
    const bool full = level == "full";
    std::vector<selfcheck::CheckResult> results = selfcheck::run_all(full);
    int failures = 0;
    for (const auto& res : results) {
        failures += res.pass ? 0 : 1;
        std::cout << (res.pass ? "PASS" : "FAIL") << "  " << res.name << " -- "
                  << res.detail << '\n';
    }
    std::cout << (static_cast<int>(results.size()) - failures) << "/" << results.size()
              << " checks passed\n";
    return failures;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact matrix calculus over truncated local rings"};
    app.require_subcommand(1);

    std::string file = "-";
    std::string out_path = "-";
    std::string format = "text";
    std::string kind = "equal";
    std::string level = "quick";
    int q = 2, n = 2, r = 2, jobs = 1;
    std::uint64_t guard = orbits::kDefaultGuard;

    CLI::App* classify =
        app.add_subcommand("classify", "classify the conjugacy class of a matrix");
    classify->add_option("--file", file, "matrix JSON path, - for stdin")
        ->capture_default_str();
    classify->add_option("--r", r, "level of the classification (>= 2)")->required();
    classify->add_option("--guard", guard, "enumeration size guard")
        ->capture_default_str();
    classify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    CLI::App* atlas =
        app.add_subcommand("atlas", "tabulate every conjugacy class at a level");
    atlas->add_option("q", q, "residue field size (prime power)")->required();
    atlas->add_option("n", n, "matrix dimension")->required();
    atlas->add_option("r", r, "level of the classification (>= 2)")->required();
    atlas->add_option("--ring", kind, "coefficient ring family")
        ->check(CLI::IsMember({"equal", "mixed"}))
        ->capture_default_str();
    atlas->add_option("--out", out_path, "output CSV path, - for stdout")
        ->capture_default_str();
    atlas->add_option("--jobs", jobs, "worker count for the parallel kernel")
        ->capture_default_str();
    atlas->add_option("--guard", guard, "enumeration size guard")->capture_default_str();

    CLI::App* stabilizer = app.add_subcommand(
        "stabilizer", "stabilizer of a residue matrix: brute force vs closed form");
    stabilizer->add_option("--file", file, "matrix JSON path, - for stdin")
        ->capture_default_str();
    stabilizer->add_option("--r", r, "precision of the acting group (>= 1)")->required();
    stabilizer->add_option("--guard", guard, "enumeration size guard")
        ->capture_default_str();
    stabilizer->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    CLI::App* companion =
        app.add_subcommand("companion", "conjugate a cyclic matrix to companion form");
    companion->add_option("--file", file, "matrix JSON path, - for stdin")
        ->capture_default_str();

    CLI::App* example4 = app.add_subcommand(
        "example4", "replay the two conductor-2 characters and their separation");
    example4->add_option("--q", q, "residue field size (prime power)")
        ->capture_default_str();
    example4->add_option("--ring", kind, "coefficient ring family")
        ->check(CLI::IsMember({"equal", "mixed"}))
        ->capture_default_str();
    example4->add_option("--guard", guard, "enumeration size guard")
        ->capture_default_str();

    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance checks");
    selftest->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify) return cmd_classify(file, r, guard, format);
        if (*atlas) return cmd_atlas(kind, q, n, r, out_path, jobs, guard);
        if (*stabilizer) return cmd_stabilizer(file, r, guard, format);
        if (*companion) return cmd_companion(file);
        if (*example4) return cmd_example4(kind, q, guard);
        if (*selftest) return cmd_selftest(level);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
