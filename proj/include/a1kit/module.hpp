#pragma once

#include "a1kit/gf2.hpp"
#include "a1kit/steenrod.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace a1kit {

// Degree bound standing in for "no truncation".
constexpr int kInfDeg = 1 << 28;

// Graded A(1)-module on a closed degree window [lo, hi]. Degrees below lo are
// genuinely zero. Degrees above hi are unknown unless `complete` is set, in
// which case the module is zero there as well and every stored degree is
// exact. For truncated models, data is guaranteed to agree with the
// untruncated object only up to reliable_hi.
struct A1Module {
    int lo = 0;
    int hi = -1;                 // empty module when hi < lo
    int reliable_hi = -1;
    bool complete = false;
    std::vector<int> dims;       // index d - lo
    std::vector<GF2Matrix> sq1;  // index d - lo, d in [lo, hi-1]; shape dims[d+1] x dims[d]
    std::vector<GF2Matrix> sq2;  // d in [lo, hi-2]; shape dims[d+2] x dims[d]

    bool empty() const { return hi < lo; }
    int dim(int d) const {
        if (d < lo || d > hi) return 0;
        return dims[d - lo];
    }
    int eff_reliable() const { return complete ? kInfDeg : reliable_hi; }
    // Action matrices; zero-shaped outside the stored range.
    GF2Matrix sq1_of(int d) const;
    GF2Matrix sq2_of(int d) const;

    int total_dim(int from, int to) const;
    // Checks Sq1 Sq1 = 0, Sq2 Sq2 = Sq1 Sq2 Sq1 and the degree-6 commutation
    // relation wherever the composites fit in the window. Throws on failure.
    void validate() const;
};

// Degree-shifted graded map between modules; mats[d - source.lo] maps
// source degree d to target degree d + shift.
struct A1ModuleMap {
    const A1Module* source = nullptr;
    const A1Module* target = nullptr;
    int shift = 0;
    std::vector<GF2Matrix> mats;

    GF2Matrix mat_of(int d) const;
    void validate() const;   // commutes with Sq1 and Sq2 on the window
};

enum class MargolisOp { Q0, Q1 };   // Q0 = Sq1 (degree 1), Q1 = [Sq2, Sq1] (degree 3)

struct MargolisHomology {
    MargolisOp op;
    std::map<int, int> dims;     // degree -> dimension, zero entries omitted
    int reliable_lo = 0;
    int reliable_hi = -1;
    int dim(int d) const {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
};

struct GradedSubspace {
    std::map<int, Subspace> by_degree;
    int dim(int d) const {
        auto it = by_degree.find(d);
        return it == by_degree.end() ? 0 : int(it->second.dim());
    }
};

// -------- constructors --------

A1Module zero_module();
A1Module trivial_module(int degree = 0);
// Free module on generators in the given degrees (ascending), on [lo, hi].
A1Module free_module(const std::vector<int>& generator_degrees, int lo, int hi);
A1Module direct_sum(const A1Module& a, const A1Module& b);
A1Module suspend(const A1Module& m, int k);
A1Module tensor(const A1Module& a, const A1Module& b);
// Drop zero degrees at the window bottom (and top, for complete modules).
A1Module trim(const A1Module& m);

// A(1) as a left module over itself, window [0, 6], complete.
A1Module a1_as_module();

struct CyclicQuotientModule {
    A1Module mod;
    int generator_degree = 0;
};
// A(1) // A(0): quotient by the left ideal A(1)Sq1. Dimension 4, degrees {0,2,3,5}.
CyclicQuotientModule build_a1_mod_a0();
// Joker J = desuspended quotient by the left ideal (Sq1 Sq2). Dimension 5, degrees -2..2.
CyclicQuotientModule build_joker();

// -------- operations --------

// Applies the composite Sq^{w1} ... Sq^{wk} (rightmost letter first) to a
// vector in degree d; returns the image vector (in degree d + |w|).
GF2Vector apply_word(const A1Module& m, const SqWord& word, int d, const GF2Vector& v);
// The same composite as a matrix M_d -> M_{d+|w|}.
GF2Matrix word_matrix(const A1Module& m, const SqWord& word, int d);

// Per-degree kernel of Sq1.
GradedSubspace ann_sq1(const A1Module& m);

MargolisHomology margolis(const A1Module& m, MargolisOp op);

// Basis of M / A(1)^+ M, lifted to representatives (greedy pivot choice in
// the graded-lex basis order).
std::vector<std::pair<int, GF2Vector>> min_generators(const A1Module& m);

// Smallest submodule containing the given vectors.
GradedSubspace submodule_span(const A1Module& m, const std::vector<std::pair<int, GF2Vector>>& gens);
// Quotient by a graded subspace that is closed under the action.
A1Module quotient_module(const A1Module& m, const GradedSubspace& sub);

// Kernel of the minimal free cover. Throws when the window is exhausted.
A1Module syzygy(const A1Module& m);
A1Module syzygy_n(const A1Module& m, int n);

struct SplitFreeResult {
    std::map<int, int> free_generators;   // degree -> number of free summands
    A1Module residual;
};
// Splits off a maximal free summand detected via the degree-6 top element of
// A(1); the residual is the (isomorphic) quotient complement with
// reliable_hi reduced by 6 per the window calculus.
SplitFreeResult split_free(const A1Module& m);

struct StableVerdict {
    enum class Kind { Equal, MargolisEqual, NotEqual, Undecided };
    Kind kind = Kind::Undecided;
    int witness_degree = 0;
    std::string detail;
    bool equal() const { return kind == Kind::Equal; }
};
// Stable comparison: Margolis homologies must agree degreewise on the common
// reliable window, then split-free residuals are matched by a graded
// isomorphism search (exhaustive or seeded-random over the hom space).
// Throws when the common window is empty.
StableVerdict stable_equal(const A1Module& a, const A1Module& b,
                           std::uint64_t seed = 0x9E3779B97F4A7C15ull);

} // namespace a1kit
