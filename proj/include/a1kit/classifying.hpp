#pragma once

#include "a1kit/module.hpp"

#include <string>
#include <vector>

namespace a1kit {

// Reduced mod-2 cohomology of B(Z/2)^r as an A(1)-module, with the monomial
// basis kept for reporting. Exponent vectors are sorted descending lex within
// each degree.
struct BVCohomology {
    int rank = 0;
    int max_degree = 0;
    A1Module mod;
    std::vector<std::vector<std::vector<int>>> basis;   // [d - 1] -> exponent vectors
};

BVCohomology bv_cohomology(int r, int N);

struct StuntedModule {
    std::string label;
    A1Module mod;
};

// P: reduced cohomology of BZ/2 on [1, N]; Sq1 u^n = n u^{n+1}, Sq2 u^n = C(n,2) u^{n+2}.
StuntedModule build_P(int N);
// R: nonsplit extension of Sigma^{-1} F by P; basis {x_-1} + {u^n}, Sq2 x = u.
StuntedModule build_R(int N);
// P0: nonsplit extension of R by F; basis {x_-1, y_0} + {u^n}, Sq1 x = y, Sq2 x = u.
StuntedModule build_P0(int N);
// P_n = Sigma^{-n} Omega^n P0 (so P_1 = P up to iso).
StuntedModule build_Pn(int n, int N);

// Enumerates degree-0 module maps and confirms the defining extensions of R
// and P0 admit no splitting. Throws if a splitting exists.
void verify_nonsplit(int N = 16);

struct KunnethReport {
    int rank = 0;
    int cells_compared = 0;
    struct Mismatch { MargolisOp op; int degree; int lhs, rhs; };
    std::vector<Mismatch> mismatches;
    bool pass() const { return mismatches.empty() && cells_compared > 0; }
};

// Checks that both Margolis homologies of bv_cohomology(r, N) agree degreewise
// with those of the direct sum of C(r,i) copies of P_i (free parts are
// invisible to Margolis homology).
KunnethReport kunneth_check(int r, int N);

} // namespace a1kit
