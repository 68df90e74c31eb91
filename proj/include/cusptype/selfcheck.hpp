#pragma once

#include <string>
#include <vector>

// The library's acceptance checks: each one re-derives a published answer or
// cross-validates two independent code paths, and reports a single verdict.
namespace cusptype::selfcheck {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

CheckResult check_class_count_and_detectors();     //  1: class census + detector agreement
CheckResult check_criterion_definition_agreement(bool full); //  2: simplicity, two routes
CheckResult check_companion_reduction();           //  3: Eisenstein census + Krylov reduction
CheckResult check_regularity();                    //  4: Pi-form regularity + route agreement
CheckResult check_stabilizers();                   //  5: stabilizer formula vs brute force
CheckResult check_worked_example();                //  6: the conductor-2 example
CheckResult check_containment_and_conductors(bool full); //  7: filtration containment + psi_beta conductors
CheckResult check_conjugated_intersections();      //  8: conjugated congruence patterns
CheckResult check_det_characters();                //  9: det-factoring characters are scalar
CheckResult check_twist_nonvanishing();            // 10: Eisenstein classes survive twisting
CheckResult check_atlas_determinism();             // 11: atlas output is worker-count invariant

std::vector<CheckResult> run_all(bool full);

} // namespace cusptype::selfcheck
