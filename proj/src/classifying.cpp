#include "a1kit/classifying.hpp"
#include "a1kit/grothendieck.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace a1kit {

namespace {

bool binom_odd(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return false;
    return (n & k) == k;
}

// exponent vectors of total degree d in r variables, descending lex
void gen_exponents(int r, int d, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(r, 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == r - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int a = rem; a >= 0; --a) {
            cur[pos] = a;
            self(self, pos + 1, rem - a);
        }
    };
    rec(rec, 0, d);
}

} // namespace

BVCohomology bv_cohomology(int r, int N) {
    if (r < 1 || N < 1) throw std::invalid_argument("bv_cohomology: need r >= 1, N >= 1");
    BVCohomology bv;
    bv.rank = r;
    bv.max_degree = N;
    bv.basis.resize(N);
    std::vector<std::map<std::vector<int>, int>> index(N + 1);
    for (int d = 1; d <= N; ++d) {
        gen_exponents(r, d, bv.basis[d - 1]);
        for (int i = 0; i < int(bv.basis[d - 1].size()); ++i)
            index[d][bv.basis[d - 1][i]] = i;
    }
    A1Module& m = bv.mod;
    m.lo = 1; m.hi = N; m.reliable_hi = N; m.complete = false;
    m.dims.resize(N);
    for (int d = 1; d <= N; ++d) m.dims[d - 1] = int(bv.basis[d - 1].size());
    // total square on a monomial: Sq^k(prod u_i^{a_i}) = sum over k_i with
    // sum k_i = k of prod C(a_i, k_i) u_i^{a_i + k_i}
    auto sq_k = [&](const std::vector<int>& e, int k, std::vector<std::vector<int>>& terms) {
        std::vector<int> cur(e.size());
        auto rec = [&](auto&& self, std::size_t pos, int rem) -> void {
            if (pos == e.size()) {
                if (rem == 0) terms.push_back(cur);
                return;
            }
            for (int ki = 0; ki <= std::min(rem, e[pos]); ++ki) {
                if (!binom_odd(e[pos], ki)) continue;
                cur[pos] = e[pos] + ki;
                self(self, pos + 1, rem - ki);
            }
        };
        rec(rec, 0, k);
    };
    for (int k = 1; k <= 2; ++k) {
        for (int d = 1; d + k <= N; ++d) {
            GF2Matrix mat{std::size_t(m.dim(d + k)), std::size_t(m.dim(d))};
            for (int i = 0; i < m.dim(d); ++i) {
                std::vector<std::vector<int>> terms;
                sq_k(bv.basis[d - 1][i], k, terms);
                for (const auto& t : terms)
                    mat.flip(std::size_t(index[d + k].at(t)), std::size_t(i));
            }
            (k == 1 ? m.sq1 : m.sq2).push_back(std::move(mat));
        }
    }
    return bv;
}

namespace {

// P-type action constants: Sq1 u^n = n u^{n+1}, Sq2 u^n = C(n,2) u^{n+2}
void fill_u_tail(A1Module& m, int N) {
    for (int d = m.lo; d <= N - 1; ++d) {
        GF2Matrix s{std::size_t(m.dim(d + 1)), std::size_t(m.dim(d))};
        if (d >= 1 && (d & 1)) s.set(0, 0, true);
        m.sq1.push_back(std::move(s));
    }
    for (int d = m.lo; d <= N - 2; ++d) {
        GF2Matrix s{std::size_t(m.dim(d + 2)), std::size_t(m.dim(d))};
        if (d >= 1 && binom_odd(d, 2)) s.set(0, 0, true);
        m.sq2.push_back(std::move(s));
    }
}

} // namespace

StuntedModule build_P(int N) {
    if (N < 4) throw std::invalid_argument("build_P: N >= 4 required");
    A1Module m;
    m.lo = 1; m.hi = N; m.reliable_hi = N;
    m.dims.assign(N, 1);
    fill_u_tail(m, N);
    return {"P", std::move(m)};
}

StuntedModule build_R(int N) {
    if (N < 4) throw std::invalid_argument("build_R: N >= 4 required");
    A1Module m;
    m.lo = -1; m.hi = N; m.reliable_hi = N;
    m.dims.assign(N + 2, 1);
    m.dims[1] = 0;   // nothing in degree 0
    fill_u_tail(m, N);
    // x in degree -1: Sq1 x = 0, Sq2 x = u
    m.sq2[0].set(0, 0, true);
    return {"R", std::move(m)};
}

StuntedModule build_P0(int N) {
    if (N < 4) throw std::invalid_argument("build_P0: N >= 4 required");
    A1Module m;
    m.lo = -1; m.hi = N; m.reliable_hi = N;
    m.dims.assign(N + 2, 1);
    fill_u_tail(m, N);
    // x in degree -1: Sq1 x = y, Sq2 x = u; y spans a trivial submodule
    // (the u-tail formulas already leave y annihilated)
    m.sq1[0].set(0, 0, true);
    m.sq2[0].set(0, 0, true);
    return {"P0", std::move(m)};
}

StuntedModule build_Pn(int n, int N) {
    if (n < 0) throw std::invalid_argument("build_Pn: n >= 0");
    StuntedModule p0 = build_P0(N);
    A1Module m = p0.mod;
    for (int i = 0; i < n; ++i) m = suspend(syzygy(m), -1);
    return {"P" + std::to_string(n), std::move(m)};
}

namespace {

// all degree-0 module maps a -> b on the window, as a hom-space basis
std::vector<std::vector<GF2Matrix>> hom_space(const A1Module& a, const A1Module& b) {
    int lo = std::min(a.lo, b.lo);
    int hi = std::max(a.hi, b.hi);
    int nvars = 0;
    std::map<int, int> offset;
    for (int d = lo; d <= hi; ++d) {
        offset[d] = nvars;
        nvars += a.dim(d) * b.dim(d);
    }
    auto var = [&](int d, int i, int j) { return offset[d] + i * a.dim(d) + j; };
    std::vector<GF2Vector> rows;
    for (int shift = 1; shift <= 2; ++shift)
        for (int d = lo; d <= hi - shift; ++d) {
            GF2Matrix sa = (shift == 1) ? a.sq1_of(d) : a.sq2_of(d);
            GF2Matrix sb = (shift == 1) ? b.sq1_of(d) : b.sq2_of(d);
            for (int i = 0; i < b.dim(d + shift); ++i)
                for (int j = 0; j < a.dim(d); ++j) {
                    GF2Vector row{std::size_t(nvars)};
                    for (int k = 0; k < a.dim(d + shift); ++k)
                        if (sa.get(k, j)) row.flip(std::size_t(var(d + shift, i, k)));
                    for (int k = 0; k < b.dim(d); ++k)
                        if (sb.get(i, k)) row.flip(std::size_t(var(d, k, j)));
                    if (!row.is_zero()) rows.push_back(std::move(row));
                }
        }
    GF2Matrix sols = GF2Matrix::from_rows(rows, std::size_t(nvars)).kernel();
    std::vector<std::vector<GF2Matrix>> basis;
    for (std::size_t s = 0; s < sols.rows(); ++s) {
        std::vector<GF2Matrix> maps;
        for (int d = lo; d <= hi; ++d) {
            GF2Matrix t{std::size_t(b.dim(d)), std::size_t(a.dim(d))};
            for (int i = 0; i < b.dim(d); ++i)
                for (int j = 0; j < a.dim(d); ++j)
                    if (sols.get(s, std::size_t(var(d, i, j)))) t.set(i, j, true);
            maps.push_back(std::move(t));
        }
        basis.push_back(std::move(maps));
    }
    return basis;
}

} // namespace

void verify_nonsplit(int N) {
    // A section of R ->> Sigma^{-1}F is a module map from the 1-dim module in
    // degree -1 that hits x; degree -1 of R is spanned by x alone, so any
    // hom with nonzero degree -1 block splits the extension.
    A1Module f1 = trivial_module(-1);
    A1Module r = build_R(N).mod;
    for (const auto& maps : hom_space(f1, r)) {
        const GF2Matrix& t = maps[0];   // degree -1 block
        if (t.rows() == 1 && t.cols() == 1 && t.get(0, 0))
            throw std::runtime_error("verify_nonsplit: R splits");
    }
    // A retraction P0 -> F onto the submodule spanned by y is a hom with
    // nonzero degree-0 block.
    A1Module f0 = trivial_module(0);
    A1Module p0 = build_P0(N).mod;
    int lo = std::min(p0.lo, f0.lo);
    for (const auto& maps : hom_space(p0, f0)) {
        const GF2Matrix& t = maps[0 - lo];   // degree 0 block
        if (t.rows() == 1 && t.cols() == 1 && t.get(0, 0))
            throw std::runtime_error("verify_nonsplit: P0 retracts onto F");
    }
}

KunnethReport kunneth_check(int r, int N) {
    KunnethReport rep;
    rep.rank = r;
    BVCohomology bv = bv_cohomology(r, N);
    std::vector<A1Module> p(r + 1);
    for (int i = 1; i <= r; ++i) p[i] = build_Pn(i, N).mod;
    for (MargolisOp op : {MargolisOp::Q0, MargolisOp::Q1}) {
        MargolisHomology lhs = margolis(bv.mod, op);
        std::vector<MargolisHomology> rhs;
        int lo = lhs.reliable_lo, hi = lhs.reliable_hi;
        for (int i = 1; i <= r; ++i) {
            rhs.push_back(margolis(p[i], op));
            lo = std::max(lo, rhs.back().reliable_lo);
            hi = std::min(hi, rhs.back().reliable_hi);
        }
        for (int d = lo; d <= hi; ++d) {
            long long sum = 0;
            for (int i = 1; i <= r; ++i) sum += binom(r, i) * rhs[i - 1].dim(d);
            ++rep.cells_compared;
            if (sum != lhs.dim(d))
                rep.mismatches.push_back({op, d, lhs.dim(d), int(sum)});
        }
    }
    return rep;
}

} // namespace a1kit
