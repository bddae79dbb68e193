#include "a1kit/classifying.hpp"
#include "a1kit/grothendieck.hpp"
#include "a1kit/toda.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace a1kit;

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Poincare-series oracle for the homology of the complex on P
int hp_table(int n, int t) {
    int k = floor_div(n, 4);
    int i = n - 4 * k;
    int tt = t + 8 * k;
    bool periodic = tt >= 0 && tt % 4 == 0;
    switch (i) {
        case 0: return (tt >= 4 && tt % 4 == 0) ? 1 : 0;
        case 1: return periodic ? 1 : 0;
        case 2: return (tt == -1 || periodic) ? 1 : 0;
        default: return (tt == -2 || periodic) ? 1 : 0;
    }
}

} // namespace

TEST_SUITE("toda") {

TEST_CASE("offset table") {
    CHECK(toda_offset(0) == 0);
    CHECK(toda_offset(1) == 1);
    CHECK(toda_offset(2) == 2);
    CHECK(toda_offset(3) == 4);
    CHECK(toda_offset(4) == 8);
    CHECK(toda_offset(-1) == -4);
    CHECK(toda_offset(-2) == -6);
    CHECK(toda_offset(-3) == -7);
    CHECK(toda_offset(-4) == -8);
    for (int n = -9; n <= 9; ++n) CHECK(toda_offset(n + 4) == toda_offset(n) + 8);
}

TEST_CASE("terms of the complex on P") {
    A1Module P = build_P(24).mod;
    CochainComplex c(P, -2, 5);
    // index-0 term is Ann(P) = even powers of u
    for (int t = 1; t <= 16; ++t) {
        auto dim = c.term_dim(0, t);
        REQUIRE(dim.has_value());
        CHECK(*dim == (t % 2 == 0 ? 1 : 0));
    }
    // Sq2 Sq1 Sq2 vanishes identically on F[u^2]
    for (int d = 2; d + 5 <= 24; d += 2) {
        GF2Matrix theta = word_matrix(P, SqWord{2, 1, 2}, d);
        CHECK(theta.is_zero());
    }
}

TEST_CASE("zero module gives the zero complex") {
    CochainComplex c(zero_module(), -2, 6);
    for (int n = -2; n <= 6; ++n)
        for (int t = -10; t <= 10; ++t) {
            auto h = c.homology_at(n, t);
            REQUIRE(h.has_value());
            CHECK(*h == 0);
        }
}

TEST_CASE("homology of P matches the Poincare series oracle") {
    A1Module P = build_P(36).mod;
    CochainComplex c(P, -4, 7);
    int cells = 0;
    for (int n = -4; n <= 7; ++n)
        for (int t = -10; t <= 16; ++t) {
            if (!c.reliable_at(n, t)) continue;
            auto h = c.homology_at(n, t);
            if (!h) continue;
            ++cells;
            CHECK(*h == hp_table(n, t));
            CHECK(*h <= 1);
        }
    CHECK(cells > 200);
}

TEST_CASE("anchor cells on bv(2)") {
    BVCohomology bv = bv_cohomology(2, 24);
    CochainComplex c(bv.mod, 0, 3);
    auto h08 = c.homology_at(0, 8);
    REQUIRE(h08.has_value());
    CHECK(*h08 == 3);   // p_4 Ibar at rank 2
    auto h26 = c.homology_at(2, 6);
    REQUIRE(h26.has_value());
    CHECK(*h26 == 0);   // exterior powers above the rank vanish
}

TEST_CASE("free modules are acyclic") {
    A1Module F = free_module({0, 3}, 0, 16);
    CochainComplex c(F, -3, 6);
    for (int n = -3; n <= 6; ++n)
        for (int t = -12; t <= 12; ++t) {
            auto h = c.homology_at(n, t);
            if (!h) continue;
            CHECK(*h == 0);
        }
}

TEST_CASE("eight-fold periodicity") {
    BVCohomology bv = bv_cohomology(2, 30);
    CochainComplex c(bv.mod, -4, 6);
    for (int n = -3; n <= 2; ++n)
        for (int t = -6; t <= 10; ++t) {
            if (!c.reliable_at(n, t) || !c.reliable_at(n + 4, t - 8)) continue;
            auto a = c.homology_at(n, t);
            auto b = c.homology_at(n + 4, t - 8);
            if (!a || !b) continue;
            CHECK(*a == *b);
        }
}

TEST_CASE("corrupted module is rejected") {
    A1Module P = build_P(16).mod;
    P.sq2[0] = GF2Matrix(1, 1);      // break Sq2 at the bottom degree
    P.sq2[0].set(0, 0, true);        // Sq2 u = u^3, violating the action
    CHECK_THROWS_AS(CochainComplex(P, 0, 3), std::runtime_error);
}

TEST_CASE("decalage") {
    DecalageReport p = decalage_check(build_P(36).mod, -2, 5, -8, 12);
    CHECK(p.pass());

    DecalageReport pp =
        decalage_check(tensor(build_P(24).mod, build_P(24).mod), -2, 5, -8, 10);
    CHECK(pp.pass());

    DecalageReport f = decalage_check(free_module({0, 2}, 0, 20), -2, 4, -8, 8);
    CHECK(f.pass());   // both sides vanish

    // the trivial module is not Q0-acyclic: hypothesis must be reported
    DecalageReport bad = decalage_check(trivial_module(0), -2, 4, -8, 8);
    CHECK(!bad.hypothesis_ok);
    CHECK(bad.hypothesis_witness == 0);
}

TEST_CASE("bigraded report carries reliability flags") {
    BVCohomology bv = bv_cohomology(1, 16);
    CochainComplex c(bv.mod, 0, 4);
    BigradedDims h = homology(c, -4, 10);
    CHECK(!h.cells.empty());
    bool found_reliable = false, found_fringe = false;
    for (const auto& cell : h.cells) {
        if (cell.reliable) found_reliable = true;
        auto again = c.homology_at(cell.n, cell.degree);
        REQUIRE(again.has_value());
        CHECK(*again == cell.dim);
    }
    CHECK(found_reliable);
    (void)found_fringe;
}

} // TEST_SUITE
