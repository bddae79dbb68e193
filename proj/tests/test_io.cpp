#include "a1kit/classifying.hpp"
#include "a1kit/module.hpp"
#include "a1kit/module_io.hpp"
#include "support/naive_ref.hpp"

#include <doctest.h>

using namespace a1kit;

namespace {

bool modules_identical(const A1Module& a, const A1Module& b) {
    if (a.lo != b.lo || a.hi != b.hi || a.reliable_hi != b.reliable_hi ||
        a.complete != b.complete)
        return false;
    for (int d = a.lo; d <= a.hi; ++d)
        if (a.dim(d) != b.dim(d)) return false;
    for (int d = a.lo; d <= a.hi - 1; ++d)
        if (!(a.sq1_of(d) == b.sq1_of(d))) return false;
    for (int d = a.lo; d <= a.hi - 2; ++d)
        if (!(a.sq2_of(d) == b.sq2_of(d))) return false;
    return true;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("hex row codec") {
    GF2Vector v(11);
    v.set(0, true);
    v.set(2, true);
    v.set(10, true);
    std::string hex = hex_encode_row(v);
    CHECK(hex == "0504");
    CHECK(hex_decode_row(hex, 11) == v);

    naive::Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = std::size_t(rng.below(90));
        GF2Vector w(n);
        for (std::size_t i = 0; i < n; ++i)
            if (rng.next() & 1) w.set(i, true);
        CHECK(hex_decode_row(hex_encode_row(w), n) == w);
    }
    CHECK_THROWS(hex_decode_row("zz", 8));
    CHECK_THROWS(hex_decode_row("ff", 3));   // stray bits beyond the width
}

TEST_CASE("module round trip") {
    for (const A1Module& m : {build_P(12).mod, build_R(12).mod, build_joker().mod,
                              bv_cohomology(2, 8).mod, zero_module()}) {
        A1Module back = module_from_json(module_to_json(m));
        CHECK(modules_identical(m, back));
    }
}

TEST_CASE("serialization is deterministic") {
    A1Module m = bv_cohomology(2, 10).mod;
    CHECK(module_to_json(m) == module_to_json(m));
}

TEST_CASE("loading validates the action relations") {
    A1Module m = build_P(12).mod;
    std::string text = module_to_json(m);
    // corrupt Sq2 at degree 4 (legitimately zero for P): making Sq2 u^4 = u^6
    // breaks Sq2 Sq2 = Sq1 Sq2 Sq1 at degree 2
    auto pos = text.find("\"sq2\"");
    REQUIRE(pos != std::string::npos);
    auto at4 = text.find("\"4\": [", pos);
    REQUIRE(at4 != std::string::npos);
    auto row = text.find("\"00\"", at4);
    REQUIRE(row != std::string::npos);
    text.replace(row, 4, "\"01\"");
    CHECK_THROWS(module_from_json(text));
}

} // TEST_SUITE
