#pragma once

#include <functional>
#include <string>
#include <vector>

namespace a1kit {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

// The named verification suites behind `verify <name>`; "all" runs the whole
// acceptance battery in order.
CriterionResult verify_algebra();            // 1: A(1) construction and A(1)//A(0)
CriterionResult verify_homology_P();         // 2: Toda homology of P against the class table
CriterionResult verify_figure2();            // 3: homology == closed-form table, r = 1..4
CriterionResult verify_pn_splitting();       // 4: P^{(x) n+1} ~ free + Sigma^{-n} Omega^n P
CriterionResult verify_periodicity();        // 5: P_{n+4} ~ Sigma^8 P_n
CriterionResult verify_joker();              // 6: J (x) J and the P0 (x) J, P (x) J identities
CriterionResult verify_sq2_homology();       // 7: Sq2-homology of TU, closed form
CriterionResult verify_couple();             // 8: TU/ST dimension accounting + Sq2 stability
CriterionResult verify_detection();          // 9: detection consistency, r <= 3
CriterionResult verify_properties();         // 10: module axioms, decalage, gf2 vs naive

std::vector<CriterionResult> verify_all();

// Prints one pass/fail line per criterion; returns the number of failures.
int print_results(const std::vector<CriterionResult>& results);

} // namespace a1kit
