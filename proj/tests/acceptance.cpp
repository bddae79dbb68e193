// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure. `a1kit verify all` runs the same suite.

#include "a1kit/verify.hpp"

#include <cstdio>

int main() {
    std::printf("a1kit acceptance suite\n");
    std::vector<a1kit::CriterionResult> results = a1kit::verify_all();
    int failures = a1kit::print_results(results);
    std::printf("%d/%zu criteria passed\n", int(results.size()) - failures, results.size());
    return failures == 0 ? 0 : 1;
}
