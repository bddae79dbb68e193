#include "a1kit/toda.hpp"
#include "a1kit/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace a1kit {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b) && ((a < 0) != (b < 0))) --q;
    return q;
}

// extra module degrees touched above the source degree by the outgoing
// differential (operator degree, plus one when the target term is Ann)
constexpr int kNeedOut[4] = {2, 2, 4, 6};

bool term_is_ann(int n) {
    int i = n - 4 * floor_div(n, 4);
    return i == 0 || i == 3;
}

} // namespace

int toda_offset(int n) {
    static const int base[4] = {0, 1, 2, 4};
    int k = floor_div(n, 4);
    return 8 * k + base[n - 4 * k];
}

int toda_op_degree(int n) {
    static const int deg[4] = {2, 2, 3, 5};
    int k = floor_div(n, 4);
    return deg[n - 4 * k];
}

CochainComplex::CochainComplex(A1Module m, int n_min, int n_max)
    : m_(std::move(m)), n_min_(n_min), n_max_(n_max) {
    if (n_min_ > n_max_) throw std::invalid_argument("CochainComplex: empty index range");
    verify_d_squared();
}

const Subspace& CochainComplex::ann_at(int d) const {
    auto it = ann_.find(d);
    if (it != ann_.end()) return it->second;
    Subspace s = kernel_space(m_.sq1_of(d));
    return ann_.emplace(d, std::move(s)).first->second;
}

bool CochainComplex::rank_computable(int n_mod4, int d) const {
    if (d + kNeedOut[n_mod4] <= m_.hi || m_.complete) return true;
    return false;
}

GF2Matrix CochainComplex::diff_images(int n_mod4, int d) const {
    // the differential leaving module degree d, as a matrix with columns
    // indexed by the source-term basis (Ann basis for indices 0 and 3)
    static const SqWord ops[4] = {SqWord{2}, SqWord{2}, SqWord{1, 2}, SqWord{2, 1, 2}};
    GF2Matrix op = word_matrix(m_, ops[n_mod4], d);
    if (n_mod4 == 0 || n_mod4 == 3) return op * ann_at(d).basis().transpose();
    return op;
}

std::optional<int> CochainComplex::rank_of(int n_mod4, int d) const {
    if (d < m_.lo || m_.dim(d) == 0) return 0;
    if (!rank_computable(n_mod4, d)) return std::nullopt;
    auto key = std::make_pair(n_mod4, d);
    auto it = ranks_.find(key);
    if (it != ranks_.end()) return it->second;
    int r = int(diff_images(n_mod4, d).rank());
    ranks_[key] = r;
    return r;
}

std::optional<int> CochainComplex::term_dim(int n, int t) const {
    int d = t + toda_offset(n);
    if (d < m_.lo) return 0;
    if (d > m_.hi) return m_.complete ? std::optional<int>(0) : std::nullopt;
    if (term_is_ann(n)) {
        if (d + 1 > m_.hi && !m_.complete) return std::nullopt;
        return int(ann_at(d).dim());
    }
    return m_.dim(d);
}

std::optional<int> CochainComplex::diff_rank(int n, int t) const {
    int i = n - 4 * floor_div(n, 4);
    return rank_of(i, t + toda_offset(n));
}

std::optional<int> CochainComplex::homology_at(int n, int t) const {
    auto dim = term_dim(n, t);
    if (!dim) return std::nullopt;
    auto out = diff_rank(n, t);
    if (!out) return std::nullopt;
    int dprev = (t - 1) + toda_offset(n - 1);
    std::optional<int> in = (dprev < m_.lo) ? std::optional<int>(0) : diff_rank(n - 1, t - 1);
    if (!in) return std::nullopt;
    return *dim - *out - *in;
}

bool CochainComplex::reliable_at(int n, int t) const {
    int d = t + toda_offset(n);
    int i = n - 4 * floor_div(n, 4);
    return d + kNeedOut[i] <= m_.eff_reliable();
}

void CochainComplex::warm(int n_lo, int n_hi, int t_lo, int t_hi) const {
    std::vector<std::pair<int, int>> keys;
    for (int n = n_lo - 1; n <= n_hi; ++n) {
        int i = n - 4 * floor_div(n, 4);
        for (int t = t_lo - 1; t <= t_hi; ++t) {
            int d = t + toda_offset(n);
            if (d < m_.lo || d > m_.hi || m_.dim(d) == 0) continue;
            if (!rank_computable(i, d)) continue;
            auto key = std::make_pair(i, d);
            if (ranks_.count(key)) continue;
            ranks_[key] = -1;   // reserve
            keys.push_back(key);
        }
    }
    // ann bases are shared state; materialize them serially first
    for (auto& [i, d] : keys)
        if (i == 0 || i == 3) ann_at(d);
    std::vector<int> results(keys.size());
    parallel_for(keys.size(), [&](std::size_t k) {
        results[k] = int(diff_images(keys[k].first, keys[k].second).rank());
    });
    for (std::size_t k = 0; k < keys.size(); ++k) ranks_[keys[k]] = results[k];
}

void CochainComplex::verify_d_squared() const {
    // d_{n+1} after d_n = 0, checked on actual matrices per module degree
    static const SqWord ops[4] = {SqWord{2}, SqWord{2}, SqWord{1, 2}, SqWord{2, 1, 2}};
    static const int opdeg[4] = {2, 2, 3, 5};
    for (int i = 0; i < 4; ++i) {
        int j = (i + 1) % 4;
        for (int d = m_.lo; d <= m_.hi; ++d) {
            if (m_.dim(d) == 0) continue;
            int mid = d + opdeg[i];
            if (mid + opdeg[j] > m_.hi && !m_.complete) continue;
            if (mid > m_.hi) continue;
            if ((i == 0 || i == 3) && d + 1 > m_.hi && !m_.complete) continue;
            GF2Matrix first = diff_images(i, d);
            GF2Matrix composite = word_matrix(m_, ops[j], mid) * first;
            if (!composite.is_zero())
                throw std::runtime_error(
                    "build_complex: d after d is nonzero (corrupted source module) at module degree " +
                    std::to_string(d));
        }
    }
}

CochainComplex build_complex(const A1Module& m, int n_min, int n_max) {
    return CochainComplex(m, n_min, n_max);
}

std::optional<int> BigradedDims::at(int n, int t) const {
    for (const auto& c : cells)
        if (c.n == n && c.degree == t) return c.dim;
    return std::nullopt;
}

BigradedDims homology(const CochainComplex& c, int t_min, int t_max) {
    c.warm(c.n_min(), c.n_max(), t_min, t_max);
    BigradedDims out;
    for (int n = c.n_min(); n <= c.n_max(); ++n)
        for (int t = t_min; t <= t_max; ++t) {
            auto h = c.homology_at(n, t);
            if (!h) continue;
            out.cells.push_back({n, t, *h, c.reliable_at(n, t)});
        }
    return out;
}

DecalageReport decalage_check(const A1Module& m, int n_min, int n_max, int t_min, int t_max) {
    DecalageReport rep;
    MargolisHomology q0 = margolis(m, MargolisOp::Q0);
    rep.hypothesis_ok = true;
    for (const auto& [d, v] : q0.dims)
        if (v != 0 && d >= q0.reliable_lo && d <= q0.reliable_hi) {
            rep.hypothesis_ok = false;
            rep.hypothesis_witness = d;
            return rep;
        }
    A1Module shifted = suspend(syzygy(m), -1);
    CochainComplex cs(shifted, n_min, n_max);
    CochainComplex cm(m, n_min - 1, n_max);
    cs.warm(n_min, n_max, t_min, t_max);
    cm.warm(n_min - 1, n_max - 1, t_min, t_max);
    for (int n = n_min; n <= n_max; ++n)
        for (int t = t_min; t <= t_max; ++t) {
            if (!cs.reliable_at(n, t) || !cm.reliable_at(n - 1, t)) continue;
            auto hs = cs.homology_at(n, t);
            auto hm = cm.homology_at(n - 1, t);
            if (!hs || !hm) continue;
            ++rep.cells_compared;
            if (*hs != *hm) rep.mismatches.push_back({n, t, *hs, *hm});
        }
    return rep;
}

} // namespace a1kit
