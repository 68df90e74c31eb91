// Times the serial reference enumeration against the parallel kernel on a
// few fixed workloads and verifies that both produce identical class lists.

#include "cusptype/orbits.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

namespace {

using cusptype::ring::Ring;
using cusptype::ring::RingPtr;
namespace orbits = cusptype::orbits;

struct Workload {
    int p, f, n, lp;
};

double best_ms(int reps, const std::function<void()>& body) {
    double best = 0.0;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (i == 0 || ms < best) best = ms;
    }
    return best;
}

bool same_classes(const std::vector<orbits::Orbit>& a, const std::vector<orbits::Orbit>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].canon != b[i].canon || a[i].members != b[i].members) return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 2) jobs = 2;
    int reps = 3;
    for (int i = 1; i < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--jobs" && i + 1 < argc) jobs = std::atoi(argv[i + 1]);
        else if (flag == "--reps" && i + 1 < argc) reps = std::atoi(argv[i + 1]);
        else {
            std::cerr << "usage: bench_atlas [--jobs N] [--reps N]\n";
            return 1;
        }
    }
    if (jobs < 1 || reps < 1) {
        std::cerr << "usage: bench_atlas [--jobs N] [--reps N]\n";
        return 1;
    }

    const std::vector<Workload> workloads = {
        {2, 1, 2, 2}, {3, 1, 2, 2}, {2, 2, 2, 2}, {2, 1, 3, 1}, {3, 1, 3, 1}};

    std::cout << "workload              classes   serial_ms  parallel_ms  speedup  (jobs="
              << jobs << ", best of " << reps << ")\n";
    bool all_match = true;
    for (const Workload& w : workloads) {
        RingPtr R = Ring::make({cusptype::ring::Kind::Equal, w.p, w.f, w.lp, {}});
        std::vector<orbits::Orbit> serial, parallel;
        double sms = best_ms(reps, [&] { serial = orbits::enumerate_classes_serial(R, w.n, w.lp); });
        double pms = best_ms(reps, [&] {
            parallel = orbits::enumerate_classes_parallel(R, w.n, w.lp, orbits::kDefaultGuard, jobs);
        });
        const bool match = same_classes(serial, parallel);
        all_match = all_match && match;
        char row[160];
        std::snprintf(row, sizeof(row), "%-6s n=%d lp=%d  %10zu  %10.2f  %11.2f  %7.2fx  %s",
                      R->token().c_str(), w.n, w.lp, serial.size(), sms, pms,
                      pms > 0 ? sms / pms : 0.0, match ? "" : "MISMATCH");
        std::cout << row << '\n';
    }
    if (!all_match) {
        std::cerr << "parallel kernel disagrees with the serial reference\n";
        return 1;
    }
    return 0;
}
