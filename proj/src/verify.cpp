#include "a1kit/verify.hpp"

#include "a1kit/classifying.hpp"
#include "a1kit/grothendieck.hpp"
#include "a1kit/kotheory.hpp"
#include "a1kit/module.hpp"
#include "a1kit/toda.hpp"

#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>

namespace a1kit {

namespace {

using Clock = std::chrono::steady_clock;

CriterionResult timed(int id, const std::string& name, double budget_s,
                      const std::function<std::string()>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto t0 = Clock::now();
    try {
        r.detail = body();
        r.pass = true;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.pass && budget_s > 0 && r.seconds > budget_s) {
        r.pass = false;
        r.detail += " [exceeded runtime budget]";
    }
    return r;
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b) && ((a < 0) != (b < 0))) --q;
    return q;
}

// closed-form homology of the fundamental complex on P (the class table)
int homology_P_table(int n, int t) {
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

// ---- naive unpacked GF(2) reference ----
namespace naive {

using Mat = std::vector<std::vector<unsigned char>>;

int rank(Mat m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    int r = 0;
    for (std::size_t c = 0; c < cols && r < int(rows); ++c) {
        int piv = -1;
        for (std::size_t i = r; i < rows; ++i)
            if (m[i][c]) { piv = int(i); break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = 0; i < rows; ++i)
            if (int(i) != r && m[i][c])
                for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= m[r][j];
        ++r;
    }
    return r;
}

std::vector<unsigned char> apply(const Mat& m, const std::vector<unsigned char>& v) {
    std::vector<unsigned char> out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        unsigned char acc = 0;
        for (std::size_t j = 0; j < v.size(); ++j) acc ^= (m[i][j] & v[j]);
        out[i] = acc;
    }
    return out;
}

} // namespace naive

struct Rng {
    std::uint64_t s = 0x853c49e6748fea9bull;
    std::uint64_t next() {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        return s;
    }
    int below(int n) { return int(next() % std::uint64_t(n)); }
};

std::string check_stable_pair(const std::string& what, const A1Module& a, const A1Module& b,
                              int min_window = 0) {
    if (min_window > 0) {
        int lo = std::max(a.lo, b.lo);
        int hi = std::min(a.eff_reliable(), b.eff_reliable());
        if (hi - lo + 1 < min_window)
            fail(what + ": common reliable window has only " + std::to_string(hi - lo + 1) +
                 " degrees");
    }
    StableVerdict v = stable_equal(a, b);
    if (!v.equal())
        fail(what + ": not stably equal (" + v.detail + " at degree " +
             std::to_string(v.witness_degree) + ")");
    return what + " EQUAL";
}

} // namespace

CriterionResult verify_algebra() {
    return timed(1, "A(1) construction, associativity, A(1)//A(0)", 1.0, [] {
        const A1Basis& a1 = build_a1();   // construction already validates against Adem
        int dims[7] = {};
        for (int i = 0; i < A1Basis::kDim; ++i) ++dims[a1.degrees[i]];
        const int expect[7] = {1, 1, 1, 2, 1, 1, 1};
        for (int d = 0; d < 7; ++d)
            if (dims[d] != expect[d]) fail("A(1) dimension profile wrong");
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                for (int k = 0; k < 8; ++k)
                    if (a1.product(a1.mult[i][j], std::uint8_t(1) << k) !=
                        a1.product(std::uint8_t(1) << i, a1.mult[j][k]))
                        fail("associativity fails");
        CyclicQuotientModule q = build_a1_mod_a0();
        for (int d = -1; d <= 7; ++d) {
            int want = (d == 0 || d == 2 || d == 3 || d == 5) ? 1 : 0;
            if (q.mod.dim(d) != want) fail("A(1)//A(0) dimensions wrong");
        }
        return std::string("dims [1,1,1,2,1,1,1], 8^3 associativity triples, quotient degrees {0,2,3,5}");
    });
}

CriterionResult verify_homology_P() {
    return timed(2, "Toda homology of P matches the class table (degree <= 40)", 5.0, [] {
        A1Module P = build_P(48).mod;
        CochainComplex c(P, 0, 3);
        int cells = 0;
        for (int n = 0; n <= 3; ++n) {
            int t_hi = 40 - toda_offset(n);
            for (int t = -12; t <= t_hi; ++t) {
                if (!c.reliable_at(n, t)) continue;
                auto h = c.homology_at(n, t);
                if (!h) continue;
                ++cells;
                if (*h > 1) fail("homology not at most 1-dimensional");
                if (*h != homology_P_table(n, t))
                    fail("class table mismatch at (" + std::to_string(n) + "," +
                         std::to_string(t) + ")");
            }
        }
        if (cells < 150) fail("window too small");
        return std::to_string(cells) + " bidegrees, exact match";
    });
}

CriterionResult verify_figure2() {
    return timed(3, "homology == closed-form functor table, r = 1..4", 120.0, [] {
        std::ostringstream msg;
        for (int r = 1; r <= 4; ++r) {
            int N = (r == 4) ? 34 : 48;
            BVCohomology bv = bv_cohomology(r, N);
            CochainComplex c(bv.mod, -3, 4);
            c.warm(-3, 4, -8, 24);
            int cells = 0;
            for (int n = -3; n <= 4; ++n)
                for (int d = -8; d <= 24; ++d) {
                    if (!c.reliable_at(n, d)) fail("cell not reliable; window too small");
                    auto h = c.homology_at(n, d);
                    if (!h) fail("cell not computable");
                    ++cells;
                    if (*h != figure2_dims(n, d, r))
                        fail("mismatch at r=" + std::to_string(r) + " (" + std::to_string(n) +
                             "," + std::to_string(d) + "): engine " + std::to_string(*h) +
                             " vs table " + std::to_string(figure2_dims(n, d, r)));
                }
            msg << "r=" << r << ": " << cells << " cells; ";
        }
        return msg.str() + "zero mismatches";
    });
}

CriterionResult verify_pn_splitting() {
    return timed(4, "P^{(x)n+1} splits as free + Sigma^{-n} Omega^n P", 120.0, [] {
        std::ostringstream msg;
        const int windows[4] = {0, 40, 32, 24};
        for (int n = 1; n <= 3; ++n) {
            int N = windows[n];
            A1Module power = build_P(N).mod;
            A1Module P = build_P(N).mod;
            for (int i = 0; i < n; ++i) power = tensor(power, P);
            SplitFreeResult split = split_free(power);
            A1Module target = suspend(syzygy_n(P, n), -n);
            msg << check_stable_pair("n=" + std::to_string(n), split.residual, target) << "; ";
        }
        return msg.str();
    });
}

CriterionResult verify_periodicity() {
    return timed(5, "P_{n+4} ~ Sigma^8 P_n (n = 0, 1)", 120.0, [] {
        const int N = 48;
        A1Module p0 = build_Pn(0, N).mod;
        A1Module p1 = build_Pn(1, N).mod;
        A1Module p4 = build_Pn(4, N).mod;
        A1Module p5 = build_Pn(5, N).mod;
        std::string a = check_stable_pair("P4 vs S^8 P0", p4, suspend(p0, 8), 16);
        std::string b = check_stable_pair("P5 vs S^8 P1", p5, suspend(p1, 8), 16);
        return a + "; " + b;
    });
}

CriterionResult verify_joker() {
    return timed(6, "Joker identities: J(x)J, P0(x)J, P(x)J", 60.0, [] {
        const int N = 32;
        A1Module J = build_joker().mod;
        SplitFreeResult jj = split_free(tensor(J, J));
        if (jj.residual.total_dim(jj.residual.lo, jj.residual.hi) != 1 ||
            jj.residual.dim(0) != 1)
            fail("J (x) J residual is not 1-dimensional in degree 0");
        A1Module p0j = tensor(build_P0(N).mod, J);
        A1Module p2 = suspend(build_Pn(2, N).mod, -4);
        std::string a = check_stable_pair("P0 (x) J vs S^-4 P2", p0j, p2);
        A1Module pj = tensor(build_P(N).mod, J);
        A1Module p3 = suspend(build_Pn(3, N).mod, -4);
        std::string b = check_stable_pair("P (x) J vs S^-4 P3", pj, p3);
        return "J(x)J residual = F in degree 0; " + a + "; " + b;
    });
}

CriterionResult verify_sq2_homology() {
    return timed(7, "Sq2-homology of TU matches the exterior-power table", 60.0, [] {
        const int N = 28;
        for (int r = 1; r <= 4; ++r) {
            TUSpace t = tu_space(r, N);
            Sq2Homology h = sq2_homology(t);
            for (int d = 1; d <= 24; ++d) {
                long long want = 0;
                int l = floor_div(d, 8);
                if (d - 8 * l == 6) want = binom(r, 4 * l + 2);
                if (d - 8 * l == 7) want = binom(r, 4 * l + 3);
                if (h.dim(d) != want)
                    fail("r=" + std::to_string(r) + " degree " + std::to_string(d) +
                         ": got " + std::to_string(h.dim(d)) + " want " + std::to_string(want));
            }
            if (r == 1)
                for (const auto& [d, v] : h.dims)
                    if (v) fail("rank 1 table should vanish");
        }
        return std::string("r = 1..4, degrees <= 24, exact (r=1 identically zero)");
    });
}

CriterionResult verify_couple() {
    return timed(8, "TU/ST dimension accounting and Sq2 stability", 60.0, [] {
        const int N = 28;
        for (int r = 1; r <= 4; ++r) {
            TUSpace t = tu_space(r, N);   // throws on any Sq2-stability violation
            Sq2Homology h = sq2_homology(t);
            std::map<int, Subspace> st = st_space(t);
            auto st_dim = [&](int d) {
                auto it = st.find(d);
                return it == st.end() ? 0 : int(it->second.dim());
            };
            for (int d = 1; d <= 24; ++d)
                if (t.dim(d) != st_dim(d) + st_dim(d + 2) + h.dim(d))
                    fail("accounting fails at r=" + std::to_string(r) + " d=" + std::to_string(d));
            CoupleVerdict v = exact_couple_check(couple_from_tu(t));
            if (!v.pass)
                fail("exact couple check fails at r=" + std::to_string(r) + ": " + v.detail);
        }
        return std::string("dim TU = dim ST + dim ST(+2) + H, r = 1..4, d <= 24; couple chain verified");
    });
}

CriterionResult verify_detection() {
    return timed(9, "detection consistency: homology == table == QO quotients, r <= 3", 120.0, [] {
        std::ostringstream msg;
        for (int r = 1; r <= 3; ++r) {
            DetectionReport rep = detection_check(r, 48, -3, 4, -8, 24);
            if (!rep.mismatches.empty()) {
                const auto& mm = rep.mismatches.front();
                fail("r=" + std::to_string(r) + " mismatch at (" + std::to_string(mm.n) + "," +
                     std::to_string(mm.d) + ")");
            }
            if (!rep.ko_totals_ok) fail("KO totals cross-check failed");
            if (rep.cells_checked != 8 * 33)
                fail("window not fully reliable (" + std::to_string(rep.cells_checked) + " cells)");
            msg << "r=" << r << ": " << rep.cells_checked << " cells; ";
        }
        return msg.str() + "zero mismatches";
    });
}

CriterionResult verify_properties() {
    return timed(10, "property suites: module axioms, decalage, packed vs naive gf2", 0.0, [] {
        // (a) action relations on the bundled corpus and random quotients
        std::vector<A1Module> corpus;
        corpus.push_back(a1_as_module());
        corpus.push_back(build_a1_mod_a0().mod);
        corpus.push_back(build_joker().mod);
        corpus.push_back(build_P(20).mod);
        corpus.push_back(build_R(20).mod);
        corpus.push_back(build_P0(20).mod);
        corpus.push_back(build_Pn(2, 24).mod);
        corpus.push_back(bv_cohomology(2, 12).mod);
        corpus.push_back(bv_cohomology(3, 10).mod);
        corpus.push_back(tensor(build_P(16).mod, build_P(16).mod));
        corpus.push_back(tensor(build_joker().mod, build_joker().mod));
        corpus.push_back(direct_sum(build_P(16).mod, suspend(build_R(16).mod, 2)));
        Rng rng;
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<int> gens;
            for (int g = 0; g < 2 + rng.below(2); ++g) gens.push_back(rng.below(4));
            A1Module f = free_module(gens, 0, 12);
            std::vector<std::pair<int, GF2Vector>> sub;
            for (int s = 0; s < 2; ++s) {
                int d = rng.below(6);
                if (!f.dim(d)) continue;
                GF2Vector v{std::size_t(f.dim(d))};
                for (int b = 0; b < f.dim(d); ++b)
                    if (rng.next() & 1) v.set(std::size_t(b), true);
                if (!v.is_zero()) sub.push_back({d, v});
            }
            corpus.push_back(quotient_module(f, submodule_span(f, sub)));
        }
        for (const auto& m : corpus) m.validate();
        // (b) decalage with Q0-acyclicity precheck
        for (const auto& [name, m] : std::vector<std::pair<std::string, A1Module>>{
                 {"P", build_P(40).mod},
                 {"P(x)P", tensor(build_P(28).mod, build_P(28).mod)},
                 {"P0", build_P0(40).mod}}) {
            DecalageReport rep = decalage_check(m, -2, 5, -8, 14);
            if (!rep.hypothesis_ok)
                fail("decalage precheck failed for " + name + " at degree " +
                     std::to_string(rep.hypothesis_witness));
            if (!rep.mismatches.empty() || rep.cells_compared == 0)
                fail("decalage fails for " + name);
        }
        // (c) packed kernel vs naive reference
        int checked = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            int rows = rng.below(200) + 1, cols = rng.below(200) + 1;
            if (trial % 7 == 0) { rows = rng.below(8); cols = rng.below(8); }
            GF2Matrix fast{std::size_t(rows), std::size_t(cols)};
            naive::Mat slow(rows, std::vector<unsigned char>(cols, 0));
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    if (rng.next() % 3 == 0) {
                        fast.set(std::size_t(i), std::size_t(j), true);
                        slow[i][j] = 1;
                    }
            if (int(fast.rank()) != naive::rank(slow)) fail("rank disagrees with naive reference");
            GF2Matrix ker = fast.kernel();
            if (int(ker.rows()) != cols - naive::rank(slow)) fail("kernel dimension mismatch");
            for (std::size_t i = 0; i < ker.rows(); ++i) {
                std::vector<unsigned char> x(cols);
                for (int j = 0; j < cols; ++j) x[j] = ker.get(i, std::size_t(j));
                for (unsigned char bit : naive::apply(slow, x))
                    if (bit) fail("kernel vector not annihilated (naive check)");
            }
            ++checked;
        }
        return "corpus of " + std::to_string(corpus.size()) + " modules valid; decalage for P, P(x)P, P0; " +
               std::to_string(checked) + " random matrices vs naive reference";
    });
}

std::vector<CriterionResult> verify_all() {
    std::vector<CriterionResult> out;
    out.push_back(verify_algebra());
    out.push_back(verify_homology_P());
    out.push_back(verify_figure2());
    out.push_back(verify_pn_splitting());
    out.push_back(verify_periodicity());
    out.push_back(verify_joker());
    out.push_back(verify_sq2_homology());
    out.push_back(verify_couple());
    out.push_back(verify_detection());
    out.push_back(verify_properties());
    return out;
}

int print_results(const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d: %s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        if (!r.pass) ++failures;
    }
    return failures;
}

} // namespace a1kit
