#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

namespace a1kit {

// A word in the generators: letters 1 and 2 stand for Sq^1 and Sq^2, leftmost
// letter acting last (so the word {1,2} is the composite Sq^1 Sq^2).
using SqWord = std::vector<std::uint8_t>;

// The eight-dimensional algebra A(1) with an explicit basis of canonical
// words and a full multiplication table over GF(2).
struct A1Basis {
    static constexpr int kDim = 8;
    std::array<SqWord, kDim> words;           // graded order, within a degree by lex
    std::array<int, kDim> degrees;            // 0,1,2,3,3,4,5,6
    // mult[i][j] = bitmask over basis indices of (words[i] * words[j])
    std::array<std::array<std::uint8_t, kDim>, kDim> mult;

    int index_of(const SqWord& w) const;      // -1 if not a canonical word
    std::uint8_t product(std::uint8_t a_mask, std::uint8_t b_mask) const;
    // elements of a given degree, ascending basis index
    std::vector<int> basis_of_degree(int d) const;
};

// Builds A(1) by word rewriting with the relation set {Sq1 Sq1 = 0,
// Sq2 Sq2 = Sq1 Sq2 Sq1, Sq2 Sq1 Sq2 Sq1 = Sq1 Sq2 Sq1 Sq2}, checks
// associativity exhaustively and validates every product against the Adem
// oracle for the full Steenrod algebra. Throws on any inconsistency.
const A1Basis& build_a1();

// Canonical GF(2) combination of words after rewriting; empty set is zero.
std::set<SqWord> a1_reduce_word(const SqWord& w);

namespace adem {

// Monomial Sq^{i1} Sq^{i2} ... in the full mod-2 Steenrod algebra.
using Monomial = std::vector<int>;

// Rewrites an arbitrary monomial into admissible form (i_k >= 2 i_{k+1})
// using the Adem relations; result is the GF(2) set of admissible monomials.
std::set<Monomial> normalize(const Monomial& m);

// Product of two GF(2) combinations of monomials.
std::set<Monomial> product(const std::set<Monomial>& a, const std::set<Monomial>& b);

} // namespace adem

} // namespace a1kit
