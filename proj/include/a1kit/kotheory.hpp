#pragma once

#include "a1kit/classifying.hpp"
#include "a1kit/grothendieck.hpp"
#include "a1kit/module.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace a1kit {

// Image of Q0 Q1 = Sq1 Sq2 Sq1 inside the cohomology of BV_r, with the Sq2
// action restricted to it. Sq2-stability is a hard assertion at build time.
struct TUSpace {
    int rank = 0;
    A1Module ambient;                       // bv cohomology module
    std::map<int, Subspace> tu;             // degree -> subspace (empty dims omitted)
    std::map<int, GF2Matrix> sq2_restricted; // degree d -> matrix in TU coordinates
    int reliable_hi = -1;                   // tu[d] exact for d <= reliable_hi

    int dim(int d) const {
        auto it = tu.find(d);
        return it == tu.end() ? 0 : int(it->second.dim());
    }
};

TUSpace tu_space(int r, int N);
TUSpace tu_space_of(const BVCohomology& bv);

struct Sq2Homology {
    std::map<int, int> dims;
    int reliable_lo = 0, reliable_hi = -1;
    int dim(int d) const {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
};

// Homology of the restricted Sq2 complex on TU.
Sq2Homology sq2_homology(const TUSpace& t);

// ST^d = image of the restricted Sq2 from degree d-2, in ambient coordinates.
std::map<int, Subspace> st_space(const TUSpace& t);

// Dimension of the stated Postnikov k-invariant image on H(BV_r), following
// the frozen source/target degree bookkeeping:
//   n=0: Sq2Sq2Sq2 from degree d-6;  n=1: Sq2Sq1 from d-2 (landing d+1);
//   n=2: Sq2 from d;                 n=3: Sq3 from d+1;
// extended to all n by Bott periodicity (n -> n-4 shifts d by -8).
// nullopt when the window cannot support the computation.
std::optional<int> theta_image(int n, int d, const A1Module& bv);

struct QOEntry {
    enum class Kind { Zero, FreeZ2, FDim };
    Kind kind = Kind::Zero;
    long long value = 0;   // free Z2-rank (2^r - 1) or F-dimension
    int index = 0;         // power of the augmentation ideal
    std::string str() const;
};

// Image of KO{n}(BV_r) in KO(BV_r) at degree d, per the closed tables:
// d=8k -> PbarZ2^{4k+n}; d=8k+4 -> PbarZ2^{4k+n+1}; d=8k+6 -> PbarF^{4k+n+2};
// d=8k+7 -> PbarF^{4k+n+3}; otherwise zero.
QOEntry qo_table(int n, int d, int r);
// Dimension (composition length) of QO{n}^d / QO{n+1}^d.
long long qo_quotient_dim(int n, int d, int r);

struct KOTableReport {
    int level = 0, degree = 0, rank = 0;
    QOEntry qo;
    std::optional<int> torsion_dim;   // dim Im(Sigma^{-1} theta_{n-1})
    bool consistent = false;          // closed-form detection consistency at this cell
};

KOTableReport ses_report(const A1Module& bv, int n, int d, int r);

struct DetectionReport {
    int rank = 0;
    int cells_checked = 0;
    struct Mismatch {
        int n, d;
        int homology;
        long long figure2, qo_quotient;
    };
    std::vector<Mismatch> mismatches;
    bool ko_totals_ok = true;   // qo_table at n -> -inf matches KO(BV) totals
    bool pass() const { return mismatches.empty() && ko_totals_ok && cells_checked > 0; }
};

// Central cross-validation: computed Toda homology == closed-form table ==
// successive QO quotients, over the given bidegree window.
DetectionReport detection_check(int r, int N, int n_min, int n_max, int d_min, int d_max);

// Exact couple ... -> D^{n+1} -> D^n -> E^n -> D^{n+2} -> ... with Bockstein
// B = q after del. Maps are stored per degree n where nonempty.
struct ExactCoupleData {
    std::map<int, int> dimD, dimE;
    std::map<int, GF2Matrix> i_map;    // D^n -> D^{n-1}
    std::map<int, GF2Matrix> q_map;    // D^n -> E^n
    std::map<int, GF2Matrix> del_map;  // E^n -> D^{n+2}
    int lo = 0, hi = -1;               // degrees n with data

    int dD(int n) const { auto it = dimD.find(n); return it == dimD.end() ? 0 : it->second; }
    int dE(int n) const { auto it = dimE.find(n); return it == dimE.end() ? 0 : it->second; }
    GF2Matrix q_of(int n) const;
    GF2Matrix del_of(int n) const;
    GF2Matrix i_of(int n) const;
};

// The couple (D, E) = (ST, TU) with q the inclusion, del the Sq2 factorization
// through ST^{n+2}, and i = 0.
ExactCoupleData couple_from_tu(const TUSpace& t);

struct CoupleVerdict {
    bool pass = false;
    std::string detail;
    int witness = 0;
};

// Verifies the subquotient chain Im(B^{n-2}) <= Im(q^n) <= Ker(del^n) <=
// Ker(B^n), dim E^n = dim D^n + dim D^{n+2} + dim H_B^n and
// dim D^n = rank B^{n-2} on the window.
CoupleVerdict exact_couple_check(const ExactCoupleData& data);

} // namespace a1kit
