// Acceptance gate: runs every top-level check and prints one verdict line
// per check.  The exit status is the number of failed checks.

#include "cusptype/selfcheck.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    bool full = true;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") full = false;
        else if (arg == "--full") full = true;
        else {
            std::cerr << "usage: acceptance [--quick|--full]\n";
            return 1;
        }
    }
    const auto results = cusptype::selfcheck::run_all(full);
    int failures = 0;
    int idx = 0;
    for (const auto& res : results) {
        ++idx;
        std::cout << (res.pass ? "PASS" : "FAIL") << "  [" << idx << "/" << results.size()
                  << "] " << res.name << " -- " << res.detail << std::endl;
        failures += res.pass ? 0 : 1;
    }
    std::cout << (results.size() - static_cast<std::size_t>(failures)) << "/"
              << results.size() << " checks passed" << std::endl;
    return failures;
}
