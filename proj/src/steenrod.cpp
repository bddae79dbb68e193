#include "a1kit/steenrod.hpp"

#include <algorithm>
#include <stdexcept>

namespace a1kit {

namespace {

void toggle(std::set<SqWord>& s, const SqWord& w) {
    auto it = s.find(w);
    if (it == s.end()) s.insert(w); else s.erase(it);
}

int word_degree(const SqWord& w) {
    int d = 0;
    for (auto c : w) d += c;
    return d;
}

// Rewrite rules, oriented so each application strictly decreases the word in
// the degreewise lexicographic order (2 > 1 at the rewrite position):
//   11   -> 0
//   22   -> 121
//   2121 -> 1212
// Returns false if the word is already irreducible.
bool rewrite_once(const SqWord& w, std::vector<SqWord>& out, bool& zero) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == 1 && w[i + 1] == 1) { zero = true; return true; }
        if (w[i] == 2 && w[i + 1] == 2) {
            SqWord nw(w.begin(), w.begin() + i);
            nw.insert(nw.end(), {1, 2, 1});
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            out.push_back(std::move(nw));
            return true;
        }
    }
    for (std::size_t i = 0; i + 3 < w.size(); ++i) {
        if (w[i] == 2 && w[i + 1] == 1 && w[i + 2] == 2 && w[i + 3] == 1) {
            SqWord nw(w.begin(), w.begin() + i);
            nw.insert(nw.end(), {1, 2, 1, 2});
            nw.insert(nw.end(), w.begin() + i + 4, w.end());
            out.push_back(std::move(nw));
            return true;
        }
    }
    return false;
}

constexpr int kRewriteBound = 1 << 16;

} // namespace

std::set<SqWord> a1_reduce_word(const SqWord& w) {
    std::set<SqWord> result;
    std::vector<SqWord> stack{w};
    int steps = 0;
    while (!stack.empty()) {
        if (++steps > kRewriteBound)
            throw std::runtime_error("a1_reduce_word: rewriting did not terminate (presentation error)");
        SqWord u = std::move(stack.back());
        stack.pop_back();
        bool zero = false;
        std::vector<SqWord> next;
        if (rewrite_once(u, next, zero)) {
            if (!zero) for (auto& n : next) stack.push_back(std::move(n));
        } else {
            if (word_degree(u) > 6)
                throw std::runtime_error("a1_reduce_word: irreducible word above degree 6");
            toggle(result, u);
        }
    }
    return result;
}

int A1Basis::index_of(const SqWord& w) const {
    for (int i = 0; i < kDim; ++i)
        if (words[i] == w) return i;
    return -1;
}

std::uint8_t A1Basis::product(std::uint8_t a_mask, std::uint8_t b_mask) const {
    std::uint8_t out = 0;
    for (int i = 0; i < kDim; ++i) {
        if (!((a_mask >> i) & 1)) continue;
        for (int j = 0; j < kDim; ++j)
            if ((b_mask >> j) & 1) out ^= mult[i][j];
    }
    return out;
}

std::vector<int> A1Basis::basis_of_degree(int d) const {
    std::vector<int> out;
    for (int i = 0; i < kDim; ++i)
        if (degrees[i] == d) out.push_back(i);
    return out;
}

namespace adem {

namespace {

bool binom_mod2(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return false;
    return (n & k) == k;   // Lucas
}

void toggle(std::set<Monomial>& s, const Monomial& m) {
    auto it = s.find(m);
    if (it == s.end()) s.insert(m); else s.erase(it);
}

} // namespace

std::set<Monomial> normalize(const Monomial& m0) {
    std::set<Monomial> result;
    std::vector<Monomial> stack{m0};
    while (!stack.empty()) {
        Monomial m = std::move(stack.back());
        stack.pop_back();
        // drop Sq^0 factors, kill negative exponents
        Monomial clean;
        bool dead = false;
        for (int e : m) {
            if (e < 0) { dead = true; break; }
            if (e > 0) clean.push_back(e);
        }
        if (dead) continue;
        m = std::move(clean);
        std::size_t bad = m.size();
        for (std::size_t i = 0; i + 1 < m.size(); ++i)
            if (m[i] < 2 * m[i + 1]) { bad = i; break; }
        if (bad == m.size()) {
            toggle(result, m);
            continue;
        }
        // Adem: Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c, a < 2b
        int a = m[bad], b = m[bad + 1];
        for (int c = 0; c <= a / 2; ++c) {
            if (!binom_mod2(b - c - 1, a - 2 * c)) continue;
            Monomial nm(m.begin(), m.begin() + bad);
            nm.push_back(a + b - c);
            if (c > 0) nm.push_back(c);
            nm.insert(nm.end(), m.begin() + bad + 2, m.end());
            stack.push_back(std::move(nm));
        }
    }
    return result;
}

std::set<Monomial> product(const std::set<Monomial>& a, const std::set<Monomial>& b) {
    std::set<Monomial> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Monomial m = x;
            m.insert(m.end(), y.begin(), y.end());
            for (const auto& t : normalize(m)) toggle(out, t);
        }
    return out;
}

} // namespace adem

namespace {

adem::Monomial word_to_monomial(const SqWord& w) {
    adem::Monomial m;
    for (auto c : w) m.push_back(c);
    return m;
}

std::set<adem::Monomial> set_to_adem(const std::set<SqWord>& words) {
    std::set<adem::Monomial> out;
    for (const auto& w : words)
        for (const auto& t : adem::normalize(word_to_monomial(w))) {
            auto it = out.find(t);
            if (it == out.end()) out.insert(t); else out.erase(it);
        }
    return out;
}

A1Basis construct_a1() {
    A1Basis a1;
    // enumerate irreducible words by degree, lex within a degree
    std::vector<SqWord> all;
    std::vector<SqWord> frontier{SqWord{}};
    while (!frontier.empty()) {
        std::vector<SqWord> next;
        for (const auto& w : frontier) {
            if (word_degree(w) > 6) continue;
            std::vector<SqWord> dummy;
            bool zero = false;
            if (!rewrite_once(w, dummy, zero)) all.push_back(w);
            for (std::uint8_t c : {std::uint8_t(1), std::uint8_t(2)}) {
                SqWord nw = w;
                nw.push_back(c);
                if (word_degree(nw) <= 6) next.push_back(nw);
            }
        }
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const SqWord& a, const SqWord& b) {
        int da = word_degree(a), db = word_degree(b);
        if (da != db) return da < db;
        return a < b;
    });
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() != A1Basis::kDim)
        throw std::runtime_error("build_a1: canonical basis has wrong size");
    for (int i = 0; i < A1Basis::kDim; ++i) {
        a1.words[i] = all[i];
        a1.degrees[i] = word_degree(all[i]);
    }
    for (int i = 0; i < A1Basis::kDim; ++i)
        for (int j = 0; j < A1Basis::kDim; ++j) {
            SqWord w = a1.words[i];
            w.insert(w.end(), a1.words[j].begin(), a1.words[j].end());
            std::uint8_t mask = 0;
            for (const auto& t : a1_reduce_word(w)) {
                int idx = a1.index_of(t);
                if (idx < 0) throw std::runtime_error("build_a1: product outside canonical basis");
                mask ^= std::uint8_t(1) << idx;
            }
            a1.mult[i][j] = mask;
        }
    return a1;
}

void check_dimensions(const A1Basis& a1) {
    const int expect[7] = {1, 1, 1, 2, 1, 1, 1};
    int got[7] = {};
    for (int i = 0; i < A1Basis::kDim; ++i) ++got[a1.degrees[i]];
    for (int d = 0; d < 7; ++d)
        if (got[d] != expect[d]) throw std::runtime_error("build_a1: dimension profile wrong");
}

void check_associativity(const A1Basis& a1) {
    for (int i = 0; i < A1Basis::kDim; ++i)
        for (int j = 0; j < A1Basis::kDim; ++j)
            for (int k = 0; k < A1Basis::kDim; ++k) {
                std::uint8_t ab_c = a1.product(a1.mult[i][j], std::uint8_t(1) << k);
                std::uint8_t a_bc = a1.product(std::uint8_t(1) << i, a1.mult[j][k]);
                if (ab_c != a_bc) throw std::runtime_error("build_a1: multiplication not associative");
            }
}

void check_against_adem(const A1Basis& a1) {
    for (int i = 0; i < A1Basis::kDim; ++i)
        for (int j = 0; j < A1Basis::kDim; ++j) {
            SqWord w = a1.words[i];
            w.insert(w.end(), a1.words[j].begin(), a1.words[j].end());
            std::set<adem::Monomial> lhs = adem::normalize(word_to_monomial(w));
            std::set<SqWord> table_result;
            for (int t = 0; t < A1Basis::kDim; ++t)
                if ((a1.mult[i][j] >> t) & 1) table_result.insert(a1.words[t]);
            if (lhs != set_to_adem(table_result))
                throw std::runtime_error("build_a1: multiplication table disagrees with Adem relations");
        }
    // confluence spot check: every word up to degree 7 reduces consistently
    std::vector<SqWord> frontier{SqWord{}};
    while (!frontier.empty()) {
        std::vector<SqWord> next;
        for (const auto& w : frontier) {
            if (word_degree(w) > 7) continue;
            if (set_to_adem(a1_reduce_word(w)) != adem::normalize(word_to_monomial(w)))
                throw std::runtime_error("build_a1: rewriting not confluent with Adem normal form");
            for (std::uint8_t c : {std::uint8_t(1), std::uint8_t(2)}) {
                SqWord nw = w;
                nw.push_back(c);
                if (word_degree(nw) <= 7) next.push_back(nw);
            }
        }
        frontier = std::move(next);
    }
}

} // namespace

const A1Basis& build_a1() {
    static const A1Basis a1 = [] {
        A1Basis b = construct_a1();
        check_dimensions(b);
        check_associativity(b);
        check_against_adem(b);
        return b;
    }();
    return a1;
}

} // namespace a1kit
