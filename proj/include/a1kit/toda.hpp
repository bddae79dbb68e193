#pragma once

#include "a1kit/module.hpp"

#include <map>
#include <optional>
#include <vector>

namespace a1kit {

// Internal-degree offset of the cohomological index n: s(4k+i) = 8k + (0,1,2,4)[i],
// extended 8-periodically in both directions. The term of index n in internal
// degree t sits in module degree t + s(n); indices 0,3 mod 4 carry Ann_{Sq1},
// indices 1,2 mod 4 the full module.
int toda_offset(int n);
// Degree of the differential operator leaving index n: Sq2, Sq2, Sq3, Sq2Sq1Sq2.
int toda_op_degree(int n);

// The 4-periodic fundamental complex evaluated on a module, held implicitly:
// terms and differentials are derived from the module action on demand, with
// ranks cached per (index mod 4, module degree). Construction verifies
// d after d = 0 on every composable pair in the window.
class CochainComplex {
public:
    CochainComplex(A1Module m, int n_min, int n_max);

    const A1Module& module() const { return m_; }
    int n_min() const { return n_min_; }
    int n_max() const { return n_max_; }

    // Dimension of the term at (n, t); nullopt when truncation hides it.
    std::optional<int> term_dim(int n, int t) const;
    // Rank of the differential leaving (n, t); nullopt when not computable.
    std::optional<int> diff_rank(int n, int t) const;
    // Homology dimension at (n, t); nullopt when not computable from the window.
    std::optional<int> homology_at(int n, int t) const;
    bool reliable_at(int n, int t) const;

    // Precompute the rank cache for a bidegree rectangle (parallel fan-out).
    void warm(int n_lo, int n_hi, int t_lo, int t_hi) const;

private:
    const Subspace& ann_at(int d) const;
    std::optional<int> rank_of(int n_mod4, int d) const;   // module-degree keyed
    bool rank_computable(int n_mod4, int d) const;
    GF2Matrix diff_images(int n_mod4, int d) const;        // columns = images of the term basis
    void verify_d_squared() const;

    A1Module m_;
    int n_min_, n_max_;
    mutable std::map<int, Subspace> ann_;
    mutable std::map<std::pair<int, int>, int> ranks_;
};

struct HomologyCell {
    int n = 0;
    int degree = 0;
    int dim = 0;
    bool reliable = false;
};

struct BigradedDims {
    std::vector<HomologyCell> cells;   // ordered by (n, degree); computable cells only
    std::optional<int> at(int n, int t) const;
};

CochainComplex build_complex(const A1Module& m, int n_min, int n_max);
BigradedDims homology(const CochainComplex& c, int t_min, int t_max);

struct DecalageReport {
    bool hypothesis_ok = false;        // Q0-acyclicity of the input
    int hypothesis_witness = 0;
    int cells_compared = 0;
    struct Mismatch { int n, t, shifted, base; };
    std::vector<Mismatch> mismatches;
    bool pass() const { return hypothesis_ok && mismatches.empty() && cells_compared > 0; }
};

// Compares homology of the complex on Sigma^{-1} Omega m against the
// index-shifted homology of the complex on m (reliable cells only).
DecalageReport decalage_check(const A1Module& m, int n_min, int n_max, int t_min, int t_max);

} // namespace a1kit
