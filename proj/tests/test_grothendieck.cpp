#include "a1kit/classifying.hpp"
#include "a1kit/grothendieck.hpp"
#include "a1kit/toda.hpp"

#include <doctest.h>

using namespace a1kit;

TEST_SUITE("grothendieck") {

TEST_CASE("binomials") {
    CHECK(binom(4, 2) == 6);
    CHECK(binom(4, 5) == 0);
    CHECK(binom(0, 0) == 1);
    CHECK(binom(-1, 0) == 0);
}

TEST_CASE("newton decomposition, single factor") {
    DimSequence s;
    for (int r = 0; r <= 6; ++r) s.values.push_back(binom(r, 2));
    NewtonResult res = newton_decompose(s);
    REQUIRE(res.ok);
    CHECK(res.cls.multiplicity == std::map<int, long long>{{2, 1}});
}

TEST_CASE("newton decomposition, truncated dual functor") {
    DimSequence s;
    for (int r = 0; r <= 5; ++r) s.values.push_back((1LL << r) - 1);
    NewtonResult res = newton_decompose(s);
    REQUIRE(res.ok);
    CHECK(res.cls.multiplicity ==
          std::map<int, long long>{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
}

TEST_CASE("newton decomposition, shifted binomial") {
    // C(r+1, 2) = C(r,1) + C(r,2) by the Pascal rule, so strict mode succeeds
    DimSequence s;
    for (int r = 0; r <= 6; ++r) s.values.push_back(binom(r + 1, 2));
    NewtonResult res = newton_decompose(s);
    REQUIRE(res.ok);
    CHECK(res.cls.multiplicity == std::map<int, long long>{{1, 1}, {2, 1}});
}

TEST_CASE("newton decomposition, multiplicity handling") {
    DimSequence s;
    for (int r = 0; r <= 5; ++r) s.values.push_back(2 * r);
    NewtonResult strict = newton_decompose(s, true);
    CHECK(!strict.ok);                       // coefficient 2 at Lambda^1
    NewtonResult gen = newton_decompose(s, false);
    REQUIRE(gen.ok);
    CHECK(gen.cls.multiplicity == std::map<int, long long>{{1, 2}});
}

TEST_CASE("newton decomposition rejects invalid sequences") {
    NewtonResult res = newton_decompose(DimSequence{{0, 1, 0}});
    CHECK(!res.ok);
    CHECK(res.error.find("negative") != std::string::npos);
}

TEST_CASE("round trip over 0/1 coefficient vectors") {
    for (unsigned mask = 0; mask < 256; ++mask) {
        GrothendieckClass cls;
        for (int i = 0; i < 8; ++i)
            if ((mask >> i) & 1) cls.multiplicity[i + 1] = 1;
        DimSequence s;
        for (int r = 0; r <= 9; ++r) s.values.push_back(cls.dim_at(r));
        NewtonResult res = newton_decompose(s);
        REQUIRE(res.ok);
        CHECK(res.cls.multiplicity == cls.multiplicity);
    }
}

TEST_CASE("partial order on classes") {
    GrothendieckClass a, b;
    a.multiplicity = {{1, 1}, {2, 1}};
    b.multiplicity = {{1, 1}, {2, 2}, {3, 1}};
    CHECK(leq(a, b));
    CHECK(!leq(b, a));
    CHECK(leq(a, a));
}

TEST_CASE("dimension evaluators") {
    CHECK(dim_lambda(2, 4) == 6);
    CHECK(dim_pIbar(4, 2) == 3);             // 2 + 1 + 0 + 0
    CHECK(dim_pIbar(0, 5) == 0);
    CHECK(dim_pIbar(-3, 5) == 0);
    CHECK(dim_pbarF_power(2, 3) == 4);       // C(3,2) + C(3,3)
    CHECK(dim_pbarF_power(0, 3) == 7);       // the whole augmentation ideal
    CHECK(dim_pbarF_power(1, 4) == 15);
    CHECK(len_pbarZ_quotient(0, 5) == 0);
    CHECK(len_pbarZ_quotient(2, 2) == dim_pIbar(1, 2) + dim_pIbar(2, 2));
}

TEST_CASE("figure2 closed form") {
    CHECK(figure2_dims(0, 8, 2) == 3);       // p_4 Ibar at rank 2
    CHECK(figure2_dims(0, 1, 5) == 0);       // no table row at d = 1 mod 8
    CHECK(figure2_dims(2, 6, 4) == 1);       // Lambda^4 at rank 4
    CHECK(figure2_dims(0, 6, 4) == binom(4, 2));
    CHECK(figure2_dims(-1, 6, 3) == binom(3, 1));
    CHECK(figure2_dims(1, -1, 5) == 0);      // Lambda^0 is masked out
    CHECK(figure2_dims(2, -2, 5) == 0);
    CHECK(figure2_dims(0, 4, 1) == 1);
}

TEST_CASE("figure2 Bott periodicity") {
    for (int n = -6; n <= 6; ++n)
        for (int d = -16; d <= 16; ++d)
            for (int r = 1; r <= 5; ++r)
                CHECK(figure2_dims(n, d, r) == figure2_dims(n + 4, d - 8, r));
}

TEST_CASE("figure2 agrees with the homology engine") {
    BVCohomology bv = bv_cohomology(2, 28);
    CochainComplex c(bv.mod, -2, 4);
    for (int n = -2; n <= 4; ++n)
        for (int d = -8; d <= 12; ++d) {
            if (!c.reliable_at(n, d)) continue;
            auto h = c.homology_at(n, d);
            if (!h) continue;
            CHECK(*h == figure2_dims(n, d, 2));
        }
}

} // TEST_SUITE
