#include "a1kit/module.hpp"

#include <algorithm>
#include <stdexcept>

namespace a1kit {

namespace {

GF2Matrix zero_mat(int rows, int cols) {
    return GF2Matrix(std::size_t(std::max(rows, 0)), std::size_t(std::max(cols, 0)));
}

// 64-bit xorshift, used for the deterministic iso search.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x2545F4914F6CDD1Dull) {}
    std::uint64_t next() {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        return s;
    }
    bool bit() { return next() & 1; }
};

} // namespace

GF2Matrix A1Module::sq1_of(int d) const {
    if (d >= lo && d <= hi - 1) return sq1[d - lo];
    return zero_mat(dim(d + 1), dim(d));
}

GF2Matrix A1Module::sq2_of(int d) const {
    if (d >= lo && d <= hi - 2) return sq2[d - lo];
    return zero_mat(dim(d + 2), dim(d));
}

int A1Module::total_dim(int from, int to) const {
    int s = 0;
    for (int d = std::max(from, lo); d <= std::min(to, hi); ++d) s += dim(d);
    return s;
}

void A1Module::validate() const {
    auto fail = [](const char* what, int d) {
        throw std::runtime_error(std::string("A1Module: relation ") + what +
                                 " fails at degree " + std::to_string(d));
    };
    for (int d = lo; d <= hi; ++d) {
        if (d + 2 <= hi) {
            if (!(sq1_of(d + 1) * sq1_of(d)).is_zero()) fail("Sq1 Sq1 = 0", d);
        }
        if (d + 4 <= hi) {
            GF2Matrix lhs = sq2_of(d + 2) * sq2_of(d);
            GF2Matrix rhs = sq1_of(d + 3) * (sq2_of(d + 1) * sq1_of(d));
            if (!(lhs == rhs)) fail("Sq2 Sq2 = Sq1 Sq2 Sq1", d);
        }
        if (d + 6 <= hi) {
            GF2Matrix lhs = sq2_of(d + 4) * (sq1_of(d + 3) * (sq2_of(d + 1) * sq1_of(d)));
            GF2Matrix rhs = sq1_of(d + 5) * (sq2_of(d + 3) * (sq1_of(d + 2) * sq2_of(d)));
            if (!(lhs == rhs)) fail("Sq2Sq1Sq2Sq1 = Sq1Sq2Sq1Sq2", d);
        }
    }
}

GF2Matrix A1ModuleMap::mat_of(int d) const {
    if (source && d >= source->lo && d - source->lo < int(mats.size())) return mats[d - source->lo];
    return zero_mat(target ? target->dim(d + shift) : 0, source ? source->dim(d) : 0);
}

void A1ModuleMap::validate() const {
    if (!source || !target) throw std::runtime_error("A1ModuleMap: missing endpoints");
    for (int d = source->lo; d <= source->hi; ++d) {
        if (d + 1 <= source->hi && d + shift + 1 <= target->hi) {
            GF2Matrix lhs = target->sq1_of(d + shift) * mat_of(d);
            GF2Matrix rhs = mat_of(d + 1) * source->sq1_of(d);
            if (!(lhs == rhs)) throw std::runtime_error("A1ModuleMap: does not commute with Sq1");
        }
        if (d + 2 <= source->hi && d + shift + 2 <= target->hi) {
            GF2Matrix lhs = target->sq2_of(d + shift) * mat_of(d);
            GF2Matrix rhs = mat_of(d + 2) * source->sq2_of(d);
            if (!(lhs == rhs)) throw std::runtime_error("A1ModuleMap: does not commute with Sq2");
        }
    }
}

A1Module zero_module() {
    A1Module m;
    m.lo = 0; m.hi = -1; m.reliable_hi = -1; m.complete = true;
    return m;
}

A1Module trivial_module(int degree) {
    A1Module m;
    m.lo = m.hi = m.reliable_hi = degree;
    m.complete = true;
    m.dims = {1};
    return m;
}

A1Module free_module(const std::vector<int>& generator_degrees, int lo, int hi) {
    if (generator_degrees.empty()) return zero_module();
    const A1Basis& a1 = build_a1();
    A1Module m;
    m.lo = lo; m.hi = hi;
    m.complete = true;
    for (int g : generator_degrees)
        if (g + 6 > hi) m.complete = false;
    m.reliable_hi = hi;
    if (hi < lo) throw std::invalid_argument("free_module: empty window");
    // basis of degree d: (generator index, algebra basis index), generators first
    std::vector<std::vector<std::pair<int, int>>> items(hi - lo + 1);
    for (int d = lo; d <= hi; ++d)
        for (int gi = 0; gi < int(generator_degrees.size()); ++gi) {
            int k = d - generator_degrees[gi];
            if (k < 0 || k > 6) continue;
            for (int b : a1.basis_of_degree(k)) items[d - lo].push_back({gi, b});
        }
    m.dims.resize(hi - lo + 1);
    for (int d = lo; d <= hi; ++d) m.dims[d - lo] = int(items[d - lo].size());
    auto index_in = [&](int d, int gi, int b) {
        const auto& lst = items[d - lo];
        for (int i = 0; i < int(lst.size()); ++i)
            if (lst[i].first == gi && lst[i].second == b) return i;
        throw std::runtime_error("free_module: basis bookkeeping error");
    };
    auto fill = [&](int op_index, int shift, std::vector<GF2Matrix>& out, int top) {
        for (int d = lo; d <= top; ++d) {
            GF2Matrix mat(m.dim(d + shift), m.dim(d));
            for (int k = 0; k < int(items[d - lo].size()); ++k) {
                auto [gi, b] = items[d - lo][k];
                std::uint8_t prod = a1.mult[op_index][b];
                for (int t = 0; t < A1Basis::kDim; ++t)
                    if ((prod >> t) & 1) mat.set(index_in(d + shift, gi, t), k, true);
            }
            out.push_back(std::move(mat));
        }
    };
    int i1 = a1.index_of(SqWord{1});
    int i2 = a1.index_of(SqWord{2});
    fill(i1, 1, m.sq1, hi - 1);
    fill(i2, 2, m.sq2, hi - 2);
    return m;
}

A1Module direct_sum(const A1Module& a, const A1Module& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    A1Module m;
    m.lo = std::min(a.lo, b.lo);
    int ahi = a.complete ? kInfDeg : a.hi;
    int bhi = b.complete ? kInfDeg : b.hi;
    m.hi = std::min({std::max(a.hi, b.hi), ahi, bhi});
    m.complete = a.complete && b.complete;
    m.reliable_hi = std::min({a.eff_reliable(), b.eff_reliable(), m.hi});
    if (m.hi < m.lo) throw std::invalid_argument("direct_sum: empty window intersection");
    m.dims.resize(m.hi - m.lo + 1);
    for (int d = m.lo; d <= m.hi; ++d) m.dims[d - m.lo] = a.dim(d) + b.dim(d);
    auto block = [&](const GF2Matrix& ma, const GF2Matrix& mb, int sd, int td) {
        GF2Matrix out{std::size_t(td), std::size_t(sd)};
        for (std::size_t i = 0; i < ma.rows(); ++i)
            for (std::size_t j = 0; j < ma.cols(); ++j)
                if (ma.get(i, j)) out.set(i, j, true);
        for (std::size_t i = 0; i < mb.rows(); ++i)
            for (std::size_t j = 0; j < mb.cols(); ++j)
                if (mb.get(i, j)) out.set(ma.rows() + i, ma.cols() + j, true);
        return out;
    };
    for (int d = m.lo; d <= m.hi - 1; ++d)
        m.sq1.push_back(block(a.sq1_of(d), b.sq1_of(d), m.dim(d), m.dim(d + 1)));
    for (int d = m.lo; d <= m.hi - 2; ++d)
        m.sq2.push_back(block(a.sq2_of(d), b.sq2_of(d), m.dim(d), m.dim(d + 2)));
    return m;
}

A1Module suspend(const A1Module& m, int k) {
    A1Module out = m;
    out.lo += k; out.hi += k;
    if (!m.complete) out.reliable_hi += k;
    else out.reliable_hi = out.hi;
    return out;
}

A1Module tensor(const A1Module& a, const A1Module& b) {
    if (a.empty() || b.empty()) return zero_module();
    A1Module m;
    m.lo = a.lo + b.lo;
    m.complete = a.complete && b.complete;
    if (m.complete) {
        m.hi = a.hi + b.hi;
        m.reliable_hi = m.hi;
    } else {
        int ha = a.complete ? kInfDeg : a.hi + b.lo;
        int hb = b.complete ? kInfDeg : b.hi + a.lo;
        m.hi = std::min(ha, hb);
        int ra = a.complete ? kInfDeg : a.reliable_hi + b.lo;
        int rb = b.complete ? kInfDeg : b.reliable_hi + a.lo;
        m.reliable_hi = std::min({ra, rb, m.hi});
    }
    if (m.hi < m.lo) throw std::invalid_argument("tensor: empty window");
    // basis of degree d: (i, x, y) with x in a-degree i, y in b-degree d-i,
    // ordered by i ascending then x then y
    auto count = [&](int d) {
        int n = 0;
        for (int i = a.lo; i <= std::min(a.hi, d - b.lo); ++i) n += a.dim(i) * b.dim(d - i);
        return n;
    };
    auto index_of = [&](int d, int i, int x, int y) {
        int off = 0;
        for (int ii = a.lo; ii < i; ++ii) off += a.dim(ii) * b.dim(d - ii);
        return off + x * b.dim(d - i) + y;
    };
    m.dims.resize(m.hi - m.lo + 1);
    for (int d = m.lo; d <= m.hi; ++d) m.dims[d - m.lo] = count(d);
    for (int shift = 1; shift <= 2; ++shift) {
        int top = m.hi - shift;
        for (int d = m.lo; d <= top; ++d) {
            GF2Matrix mat(m.dim(d + shift), m.dim(d));
            int col = 0;
            for (int i = a.lo; i <= std::min(a.hi, d - b.lo); ++i) {
                int j = d - i;
                if (!a.dim(i) || !b.dim(j)) continue;
                GF2Matrix a1m = a.sq1_of(i), a2m = a.sq2_of(i);
                GF2Matrix b1m = b.sq1_of(j), b2m = b.sq2_of(j);
                for (int x = 0; x < a.dim(i); ++x)
                    for (int y = 0; y < b.dim(j); ++y, ++col) {
                        if (shift == 1) {
                            // Sq1(x (x) y) = Sq1 x (x) y + x (x) Sq1 y
                            for (int xi = 0; xi < a.dim(i + 1); ++xi)
                                if (a1m.get(xi, x)) mat.flip(index_of(d + 1, i + 1, xi, y), col);
                            for (int yi = 0; yi < b.dim(j + 1); ++yi)
                                if (b1m.get(yi, y)) mat.flip(index_of(d + 1, i, x, yi), col);
                        } else {
                            // Cartan: Sq2 x (x) y + Sq1 x (x) Sq1 y + x (x) Sq2 y
                            for (int xi = 0; xi < a.dim(i + 2); ++xi)
                                if (a2m.get(xi, x)) mat.flip(index_of(d + 2, i + 2, xi, y), col);
                            for (int yi = 0; yi < b.dim(j + 2); ++yi)
                                if (b2m.get(yi, y)) mat.flip(index_of(d + 2, i, x, yi), col);
                            for (int xi = 0; xi < a.dim(i + 1); ++xi) {
                                if (!a1m.get(xi, x)) continue;
                                for (int yi = 0; yi < b.dim(j + 1); ++yi)
                                    if (b1m.get(yi, y)) mat.flip(index_of(d + 2, i + 1, xi, yi), col);
                            }
                        }
                    }
            }
            (shift == 1 ? m.sq1 : m.sq2).push_back(std::move(mat));
        }
    }
    return trim(m);
}

A1Module trim(const A1Module& m) {
    if (m.empty()) return m;
    int lo = m.lo, hi = m.hi;
    while (lo <= hi && m.dim(lo) == 0) ++lo;
    if (m.complete)
        while (hi >= lo && m.dim(hi) == 0) --hi;
    if (lo > hi) {
        if (m.complete) return zero_module();
        // zero on the window says nothing about degrees above it
        A1Module out;
        out.lo = m.lo;
        out.hi = m.lo - 1;
        out.reliable_hi = std::min(m.reliable_hi, m.lo - 1);
        out.complete = false;
        return out;
    }
    if (lo == m.lo && hi == m.hi) return m;
    A1Module out;
    out.lo = lo; out.hi = hi;
    out.complete = m.complete;
    out.reliable_hi = m.complete ? hi : std::min(m.reliable_hi, hi);
    out.dims.assign(m.dims.begin() + (lo - m.lo), m.dims.begin() + (hi - m.lo + 1));
    for (int d = lo; d <= hi - 1; ++d) out.sq1.push_back(m.sq1_of(d));
    for (int d = lo; d <= hi - 2; ++d) out.sq2.push_back(m.sq2_of(d));
    return out;
}

A1Module a1_as_module() {
    return free_module({0}, 0, 6);
}

CyclicQuotientModule build_a1_mod_a0() {
    A1Module A = a1_as_module();
    // Sq1 is the unique degree-1 basis element of A(1)
    GF2Vector sq1_vec(A.dim(1));
    sq1_vec.set(0, true);
    GradedSubspace ideal = submodule_span(A, {{1, sq1_vec}});
    CyclicQuotientModule out;
    out.mod = trim(quotient_module(A, ideal));
    out.generator_degree = 0;
    return out;
}

CyclicQuotientModule build_joker() {
    const A1Basis& a1 = build_a1();
    A1Module A = a1_as_module();
    // locate Sq1 Sq2 among the degree-3 basis elements
    auto deg3 = a1.basis_of_degree(3);
    int pos = -1;
    for (int i = 0; i < int(deg3.size()); ++i)
        if (a1.words[deg3[i]] == SqWord{1, 2}) pos = i;
    if (pos < 0) throw std::runtime_error("build_joker: Sq1Sq2 not found");
    GF2Vector v(A.dim(3));
    v.set(std::size_t(pos), true);
    GradedSubspace ideal = submodule_span(A, {{3, v}});
    CyclicQuotientModule out;
    out.mod = suspend(trim(quotient_module(A, ideal)), -2);
    out.generator_degree = -2;
    return out;
}

GF2Vector apply_word(const A1Module& m, const SqWord& word, int d, const GF2Vector& v) {
    GF2Vector cur = v;
    int deg = d;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it == 1) {
            cur = m.sq1_of(deg).apply(cur);
            deg += 1;
        } else {
            cur = m.sq2_of(deg).apply(cur);
            deg += 2;
        }
    }
    return cur;
}

GF2Matrix word_matrix(const A1Module& m, const SqWord& word, int d) {
    if (word.empty()) return GF2Matrix::identity(std::size_t(m.dim(d)));
    GF2Matrix acc;
    int deg = d;
    bool first = true;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        GF2Matrix op = (*it == 1) ? m.sq1_of(deg) : m.sq2_of(deg);
        deg += *it;
        acc = first ? std::move(op) : op * acc;
        first = false;
    }
    return acc;
}

GradedSubspace ann_sq1(const A1Module& m) {
    GradedSubspace out;
    for (int d = m.lo; d <= m.hi; ++d) {
        if (!m.dim(d)) continue;
        out.by_degree.emplace(d, kernel_space(m.sq1_of(d)));
    }
    return out;
}

MargolisHomology margolis(const A1Module& m, MargolisOp op) {
    MargolisHomology h;
    h.op = op;
    int q = (op == MargolisOp::Q0) ? 1 : 3;
    auto opmat = [&](int d) {
        if (op == MargolisOp::Q0) return m.sq1_of(d);
        GF2Matrix a = m.sq1_of(d + 2) * m.sq2_of(d);
        GF2Matrix b = m.sq2_of(d + 1) * m.sq1_of(d);
        return a + b;
    };
    std::map<int, int> ranks;
    auto rank_at = [&](int d) {
        if (d < m.lo || m.dim(d) == 0) return 0;
        auto it = ranks.find(d);
        if (it != ranks.end()) return it->second;
        int r = int(opmat(d).rank());
        ranks[d] = r;
        return r;
    };
    int top = m.complete ? m.hi : m.hi - q;
    for (int d = m.lo; d <= top; ++d) {
        if (!m.dim(d)) continue;
        int ker = m.dim(d) - rank_at(d);
        int im = rank_at(d - q);
        if (ker - im) h.dims[d] = ker - im;
    }
    if (m.complete) {
        // the module is exact everywhere, so its Margolis homology is too
        h.reliable_lo = -kInfDeg;
        h.reliable_hi = kInfDeg;
    } else {
        // degrees below lo are genuinely zero, so the bottom is exact
        h.reliable_lo = m.lo;
        h.reliable_hi = m.reliable_hi - q;
    }
    return h;
}

std::vector<std::pair<int, GF2Vector>> min_generators(const A1Module& m) {
    std::vector<std::pair<int, GF2Vector>> gens;
    for (int d = m.lo; d <= m.hi; ++d) {
        if (!m.dim(d)) continue;
        std::vector<GF2Vector> hit;
        if (d - 1 >= m.lo) {
            GF2Matrix s1 = m.sq1_of(d - 1);
            for (std::size_t j = 0; j < s1.cols(); ++j) {
                GF2Vector e(s1.cols());
                e.set(j, true);
                hit.push_back(s1.apply(e));
            }
        }
        if (d - 2 >= m.lo) {
            GF2Matrix s2 = m.sq2_of(d - 2);
            for (std::size_t j = 0; j < s2.cols(); ++j) {
                GF2Vector e(s2.cols());
                e.set(j, true);
                hit.push_back(s2.apply(e));
            }
        }
        Subspace sub = Subspace::from_span(std::size_t(m.dim(d)), hit);
        for (auto& rep : quotient_basis(sub)) gens.emplace_back(d, std::move(rep));
    }
    return gens;
}

GradedSubspace submodule_span(const A1Module& m,
                              const std::vector<std::pair<int, GF2Vector>>& gens) {
    std::map<int, std::vector<GF2Vector>> spans;
    for (const auto& [d, v] : gens) spans[d].push_back(v);
    GradedSubspace out;
    for (int d = m.lo; d <= m.hi; ++d) {
        Subspace s = Subspace::from_span(std::size_t(m.dim(d)),
                                         spans.count(d) ? spans[d] : std::vector<GF2Vector>{});
        if (s.dim()) {
            for (std::size_t i = 0; i < s.dim(); ++i) {
                GF2Vector b = s.basis().row(i);
                if (d + 1 <= m.hi) {
                    GF2Vector w = m.sq1_of(d).apply(b);
                    if (!w.is_zero()) spans[d + 1].push_back(std::move(w));
                }
                if (d + 2 <= m.hi) {
                    GF2Vector w = m.sq2_of(d).apply(b);
                    if (!w.is_zero()) spans[d + 2].push_back(std::move(w));
                }
            }
        }
        if (s.dim()) out.by_degree.emplace(d, std::move(s));
    }
    return out;
}

namespace {

// Quotient bookkeeping for one degree: representatives are the standard
// basis vectors at the non-pivot coordinates of the subspace.
struct DegreeQuotient {
    Subspace sub;
    std::vector<std::size_t> reps;   // non-pivot coordinates, ascending

    static DegreeQuotient make(Subspace s) {
        DegreeQuotient q;
        std::vector<bool> is_pivot(s.ambient_dim(), false);
        for (auto p : s.pivots()) is_pivot[p] = true;
        for (std::size_t c = 0; c < s.ambient_dim(); ++c)
            if (!is_pivot[c]) q.reps.push_back(c);
        q.sub = std::move(s);
        return q;
    }
    GF2Vector project(const GF2Vector& v) const {
        GF2Vector red = sub.reduce(v);
        GF2Vector out(reps.size());
        for (std::size_t k = 0; k < reps.size(); ++k)
            if (red.get(reps[k])) out.set(k, true);
        return out;
    }
};

} // namespace

A1Module quotient_module(const A1Module& m, const GradedSubspace& sub) {
    std::vector<DegreeQuotient> q;
    q.reserve(m.hi - m.lo + 1);
    for (int d = m.lo; d <= m.hi; ++d) {
        auto it = sub.by_degree.find(d);
        Subspace s = (it != sub.by_degree.end()) ? it->second : Subspace(std::size_t(m.dim(d)));
        q.push_back(DegreeQuotient::make(std::move(s)));
    }
    A1Module out;
    out.lo = m.lo; out.hi = m.hi;
    out.complete = m.complete;
    out.reliable_hi = m.complete ? m.hi : m.reliable_hi;
    out.dims.resize(m.hi - m.lo + 1);
    for (int d = m.lo; d <= m.hi; ++d) out.dims[d - m.lo] = int(q[d - m.lo].reps.size());
    for (int shift = 1; shift <= 2; ++shift) {
        for (int d = m.lo; d <= m.hi - shift; ++d) {
            const auto& src = q[d - m.lo];
            const auto& dst = q[d + shift - m.lo];
            GF2Matrix mat(dst.reps.size(), src.reps.size());
            GF2Matrix op = (shift == 1) ? m.sq1_of(d) : m.sq2_of(d);
            for (std::size_t k = 0; k < src.reps.size(); ++k) {
                GF2Vector e{std::size_t(m.dim(d))};
                e.set(src.reps[k], true);
                GF2Vector img = dst.project(op.apply(e));
                for (std::size_t t = 0; t < dst.reps.size(); ++t)
                    if (img.get(t)) mat.set(t, k, true);
            }
            (shift == 1 ? out.sq1 : out.sq2).push_back(std::move(mat));
        }
    }
    return out;
}

A1Module syzygy(const A1Module& m) {
    if (m.empty()) return zero_module();
    if (!m.complete && m.reliable_hi < m.lo)
        throw std::runtime_error("syzygy: window exhausted");
    auto gens = min_generators(m);
    if (gens.empty()) return zero_module();
    std::vector<int> gdegs;
    for (auto& [d, v] : gens) gdegs.push_back(d);
    int hi = m.hi;
    if (m.complete) hi = std::max(hi, gdegs.back() + 6);
    A1Module cover = free_module(gdegs, m.lo, hi);
    // cover map columns: apply the algebra word of each free basis element to
    // its generator vector
    const A1Basis& a1 = build_a1();
    std::vector<std::vector<std::pair<int, int>>> items(hi - m.lo + 1);
    for (int d = m.lo; d <= hi; ++d)
        for (int gi = 0; gi < int(gens.size()); ++gi) {
            int k = d - gens[gi].first;
            if (k < 0 || k > 6) continue;
            for (int b : a1.basis_of_degree(k)) items[d - m.lo].push_back({gi, b});
        }
    // kernel bases per degree plus their free-column structure for coordinates
    std::vector<GF2Matrix> kb(hi - m.lo + 1);
    std::vector<std::vector<std::size_t>> kb_free(hi - m.lo + 1);
    for (int d = m.lo; d <= hi; ++d) {
        GF2Matrix phi{std::size_t(m.dim(d)), std::size_t(cover.dim(d))};
        for (int c = 0; c < int(items[d - m.lo].size()); ++c) {
            auto [gi, b] = items[d - m.lo][c];
            GF2Vector img = apply_word(m, a1.words[b], gens[gi].first, gens[gi].second);
            if (int(img.size()) != m.dim(d)) throw std::runtime_error("syzygy: degree bookkeeping error");
            for (int t = 0; t < m.dim(d); ++t)
                if (img.get(t)) phi.set(t, c, true);
        }
        auto e = phi.rref();
        std::vector<bool> is_pivot(phi.cols(), false);
        for (auto p : e.pivots) is_pivot[p] = true;
        kb[d - m.lo] = phi.kernel();
        for (std::size_t c = 0; c < phi.cols(); ++c)
            if (!is_pivot[c]) kb_free[d - m.lo].push_back(c);
    }
    A1Module out;
    out.lo = m.lo; out.hi = hi;
    out.complete = m.complete;
    out.reliable_hi = m.complete ? hi : m.reliable_hi;
    out.dims.resize(hi - m.lo + 1);
    for (int d = m.lo; d <= hi; ++d) out.dims[d - m.lo] = int(kb[d - m.lo].rows());
    auto coords = [&](int d, const GF2Vector& w) {
        // kernel basis rows are standard at their own free columns
        const auto& fc = kb_free[d - m.lo];
        GF2Vector x(fc.size());
        for (std::size_t i = 0; i < fc.size(); ++i)
            if (w.get(fc[i])) x.set(i, true);
        return x;
    };
    for (int shift = 1; shift <= 2; ++shift) {
        for (int d = m.lo; d <= hi - shift; ++d) {
            const GF2Matrix& src = kb[d - m.lo];
            GF2Matrix op = (shift == 1) ? cover.sq1_of(d) : cover.sq2_of(d);
            GF2Matrix mat(kb[d + shift - m.lo].rows(), src.rows());
            for (std::size_t j = 0; j < src.rows(); ++j) {
                GF2Vector w = op.apply(src.row(j));
                GF2Vector x = coords(d + shift, w);
                // verify the coordinates reproduce w (kernel closed under the action)
                GF2Vector check(w.size());
                for (std::size_t i = 0; i < x.size(); ++i)
                    if (x.get(i)) check ^= kb[d + shift - m.lo].row(i);
                if (!(check == w)) throw std::runtime_error("syzygy: kernel not action-closed");
                for (std::size_t t = 0; t < x.size(); ++t)
                    if (x.get(t)) mat.set(t, j, true);
            }
            (shift == 1 ? out.sq1 : out.sq2).push_back(std::move(mat));
        }
    }
    return trim(out);
}

A1Module syzygy_n(const A1Module& m, int n) {
    A1Module cur = m;
    for (int i = 0; i < n; ++i) cur = syzygy(cur);
    return cur;
}

SplitFreeResult split_free(const A1Module& m) {
    SplitFreeResult res;
    if (m.empty()) {
        res.residual = m;
        return res;
    }
    const A1Basis& a1 = build_a1();
    int det_top = (m.complete ? m.hi : m.reliable_hi) - 6;
    std::vector<std::pair<int, GF2Vector>> gens;
    for (int d = m.lo; d <= det_top; ++d) {
        if (!m.dim(d) || !m.dim(d + 6)) continue;
        // theta = Sq1 Sq2 Sq1 Sq2, the top class of A(1)
        GF2Matrix theta = m.sq1_of(d + 5) * (m.sq2_of(d + 3) * (m.sq1_of(d + 2) * m.sq2_of(d)));
        std::vector<GF2Vector> acc;          // reduced echelon rows of chosen images
        std::vector<std::size_t> acc_pivots;
        for (int c = 0; c < m.dim(d); ++c) {
            GF2Vector e{std::size_t(m.dim(d))};
            e.set(std::size_t(c), true);
            GF2Vector img = theta.apply(e);
            for (std::size_t i = 0; i < acc.size(); ++i)
                if (img.get(acc_pivots[i])) img ^= acc[i];
            if (img.is_zero()) continue;
            std::size_t p = img.lowest_bit();
            acc.push_back(img);
            acc_pivots.push_back(p);
            gens.emplace_back(d, e);
        }
    }
    for (auto& [d, v] : gens) res.free_generators[d] += 1;
    // span of the generated free submodule, with exact size accounting
    std::map<int, std::vector<GF2Vector>> spans;
    std::map<int, int> expected;
    for (const auto& [d, v] : gens)
        for (int b = 0; b < A1Basis::kDim; ++b) {
            int dd = d + a1.degrees[b];
            if (dd > m.hi) continue;
            spans[dd].push_back(apply_word(m, a1.words[b], d, v));
            expected[dd] += 1;
        }
    GradedSubspace sub;
    for (auto& [d, vecs] : spans) {
        Subspace s = Subspace::from_span(std::size_t(m.dim(d)), vecs);
        if (int(s.dim()) != expected[d])
            throw std::runtime_error("split_free: free submodule sum is not direct (internal error)");
        if (s.dim()) sub.by_degree.emplace(d, std::move(s));
    }
    res.residual = quotient_module(m, sub);
    if (!m.complete) res.residual.reliable_hi = det_top;
    res.residual = trim(res.residual);
    return res;
}

namespace {

struct IsoWindow {
    int lo, hi;
    const A1Module& a;
    const A1Module& b;
};

// Searches for a degreewise-invertible element of the intertwining hom space.
bool graded_iso_exists(const IsoWindow& w, std::uint64_t seed) {
    int nvars = 0;
    std::map<int, int> offset;
    for (int d = w.lo; d <= w.hi; ++d) {
        offset[d] = nvars;
        nvars += w.a.dim(d) * w.b.dim(d);
    }
    if (nvars == 0) return true;
    auto var = [&](int d, int i, int j) { return offset[d] + i * w.a.dim(d) + j; };
    std::vector<GF2Vector> rows;
    for (int shift = 1; shift <= 2; ++shift) {
        for (int d = w.lo; d <= w.hi - shift; ++d) {
            GF2Matrix sa = (shift == 1) ? w.a.sq1_of(d) : w.a.sq2_of(d);
            GF2Matrix sb = (shift == 1) ? w.b.sq1_of(d) : w.b.sq2_of(d);
            for (int i = 0; i < w.b.dim(d + shift); ++i)
                for (int j = 0; j < w.a.dim(d); ++j) {
                    GF2Vector row{std::size_t(nvars)};
                    for (int k = 0; k < w.a.dim(d + shift); ++k)
                        if (sa.get(k, j)) row.flip(std::size_t(var(d + shift, i, k)));
                    for (int k = 0; k < w.b.dim(d); ++k)
                        if (sb.get(i, k)) row.flip(std::size_t(var(d, k, j)));
                    if (!row.is_zero()) rows.push_back(std::move(row));
                }
        }
    }
    GF2Matrix hom = GF2Matrix::from_rows(rows, std::size_t(nvars)).kernel();
    auto invertible = [&](const GF2Vector& sol) {
        for (int d = w.lo; d <= w.hi; ++d) {
            int n = w.a.dim(d);
            if (n != w.b.dim(d)) return false;
            if (n == 0) continue;
            GF2Matrix t{std::size_t(n), std::size_t(n)};
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (sol.get(std::size_t(var(d, i, j)))) t.set(i, j, true);
            if (int(t.rank()) != n) return false;
        }
        return true;
    };
    std::size_t k = hom.rows();
    if (k == 0) return false;
    if (k <= 14) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << k); ++mask) {
            GF2Vector sol{std::size_t(nvars)};
            for (std::size_t i = 0; i < k; ++i)
                if ((mask >> i) & 1) sol ^= hom.row(i);
            if (invertible(sol)) return true;
        }
        return false;
    }
    Rng rng(seed);
    for (int trial = 0; trial < 4096; ++trial) {
        GF2Vector sol{std::size_t(nvars)};
        for (std::size_t i = 0; i < k; ++i)
            if (rng.bit()) sol ^= hom.row(i);
        if (invertible(sol)) return true;
    }
    return false;
}

} // namespace

StableVerdict stable_equal(const A1Module& a, const A1Module& b, std::uint64_t seed) {
    StableVerdict v;
    if (a.empty() && b.empty()) {
        v.kind = StableVerdict::Kind::Equal;
        return v;
    }
    // degrees that can carry any homology at all
    int support_lo = std::min(a.empty() ? kInfDeg : a.lo, b.empty() ? kInfDeg : b.lo) - 3;
    int support_hi = std::max(a.empty() ? -kInfDeg : a.hi, b.empty() ? -kInfDeg : b.hi) + 3;
    for (MargolisOp op : {MargolisOp::Q0, MargolisOp::Q1}) {
        MargolisHomology ha = margolis(a, op);
        MargolisHomology hb = margolis(b, op);
        int lo = std::max({ha.reliable_lo, hb.reliable_lo, support_lo});
        int hi = std::min({ha.reliable_hi, hb.reliable_hi, support_hi});
        if (hi < lo) throw std::runtime_error("stable_equal: windows too small to decide");
        for (int d = lo; d <= hi; ++d)
            if (ha.dim(d) != hb.dim(d)) {
                v.kind = StableVerdict::Kind::NotEqual;
                v.witness_degree = d;
                v.detail = "Margolis homology mismatch";
                return v;
            }
    }
    SplitFreeResult sa = split_free(a);
    SplitFreeResult sb = split_free(b);
    const A1Module& ra = sa.residual;
    const A1Module& rb = sb.residual;
    if (ra.empty() && rb.empty()) {
        v.kind = StableVerdict::Kind::Equal;
        return v;
    }
    int lo = std::min(ra.empty() ? kInfDeg : ra.lo, rb.empty() ? kInfDeg : rb.lo);
    int hi = std::min(ra.eff_reliable(), rb.eff_reliable());
    if (hi >= kInfDeg) hi = std::max(ra.hi, rb.hi);
    if (hi < lo) throw std::runtime_error("stable_equal: windows too small to decide");
    for (int d = lo; d <= hi; ++d)
        if (ra.dim(d) != rb.dim(d)) {
            v.kind = StableVerdict::Kind::NotEqual;
            v.witness_degree = d;
            v.detail = "residual dimension mismatch";
            return v;
        }
    int total = 0;
    for (int d = lo; d <= hi; ++d) total += ra.dim(d);
    if (total > 64) {
        v.kind = StableVerdict::Kind::MargolisEqual;
        v.detail = "residuals too large for isomorphism search";
        return v;
    }
    IsoWindow w{lo, hi, ra, rb};
    if (graded_iso_exists(w, seed)) {
        v.kind = StableVerdict::Kind::Equal;
    } else {
        v.kind = StableVerdict::Kind::Undecided;
        v.detail = "no graded isomorphism found";
    }
    return v;
}

} // namespace a1kit
