#include "a1kit/kotheory.hpp"
#include "a1kit/toda.hpp"

#include <stdexcept>

namespace a1kit {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

TUSpace tu_space_of(const BVCohomology& bv) {
    TUSpace t;
    t.rank = bv.rank;
    t.ambient = bv.mod;
    const A1Module& m = t.ambient;
    t.reliable_hi = m.eff_reliable();
    static const SqWord q0q1{1, 2, 1};   // Q0 Q1 = Sq1 Sq2 Sq1, degree 4
    for (int d = m.lo + 4; d <= m.hi; ++d) {
        if (!m.dim(d) || !m.dim(d - 4)) continue;
        Subspace s = image(word_matrix(m, q0q1, d - 4));
        if (s.dim()) t.tu.emplace(d, std::move(s));
    }
    // restricted Sq2, with the stability assertion of the ku -> KO comparison
    for (const auto& [d, sub] : t.tu) {
        if (d + 2 > m.hi) continue;
        const Subspace* target = nullptr;
        auto it = t.tu.find(d + 2);
        if (it != t.tu.end()) target = &it->second;
        GF2Matrix restr{std::size_t(target ? target->dim() : 0), sub.dim()};
        for (std::size_t j = 0; j < sub.dim(); ++j) {
            GF2Vector w = m.sq2_of(d).apply(sub.basis().row(j));
            if (w.is_zero()) continue;
            if (!target)
                throw std::runtime_error("tu_space: Sq2 instability at degree " + std::to_string(d));
            auto coords = target->coordinates(w);
            if (!coords)
                throw std::runtime_error("tu_space: Sq2 instability at degree " + std::to_string(d));
            for (std::size_t i = 0; i < coords->size(); ++i)
                if (coords->get(i)) restr.set(i, j, true);
        }
        t.sq2_restricted.emplace(d, std::move(restr));
    }
    // the restricted complex squares to zero: Sq2 Sq2 kills Q0 Q1 images
    for (const auto& [d, restr] : t.sq2_restricted) {
        auto next = t.sq2_restricted.find(d + 2);
        if (next == t.sq2_restricted.end()) continue;
        if (!(next->second * restr).is_zero())
            throw std::runtime_error("tu_space: restricted Sq2 does not square to zero");
    }
    return t;
}

TUSpace tu_space(int r, int N) { return tu_space_of(bv_cohomology(r, N)); }

Sq2Homology sq2_homology(const TUSpace& t) {
    Sq2Homology h;
    const A1Module& m = t.ambient;
    h.reliable_lo = m.lo;
    h.reliable_hi = std::min(t.reliable_hi, m.hi) - 2;
    std::map<int, int> rank_in;
    for (const auto& [d, restr] : t.sq2_restricted) rank_in[d + 2] = int(restr.rank());
    for (int d = m.lo; d <= m.hi - 2; ++d) {
        int dim_d = t.dim(d);
        if (!dim_d) continue;
        auto it = t.sq2_restricted.find(d);
        int rank_out = (it != t.sq2_restricted.end()) ? int(it->second.rank()) : 0;
        int ker = dim_d - rank_out;
        int im = rank_in.count(d) ? rank_in[d] : 0;
        if (ker - im) h.dims[d] = ker - im;
    }
    return h;
}

std::map<int, Subspace> st_space(const TUSpace& t) {
    std::map<int, Subspace> st;
    const A1Module& m = t.ambient;
    for (const auto& [d, sub] : t.tu) {
        if (d + 2 > m.hi) continue;
        std::vector<GF2Vector> imgs;
        for (std::size_t j = 0; j < sub.dim(); ++j) {
            GF2Vector w = m.sq2_of(d).apply(sub.basis().row(j));
            if (!w.is_zero()) imgs.push_back(std::move(w));
        }
        Subspace s = Subspace::from_span(std::size_t(m.dim(d + 2)), imgs);
        if (s.dim()) st.emplace(d + 2, std::move(s));
    }
    return st;
}

std::optional<int> theta_image(int n, int d, const A1Module& bv) {
    while (n > 3) { n -= 4; d -= 8; }
    while (n < 0) { n += 4; d += 8; }
    static const SqWord words[4] = {SqWord{2, 2, 2}, SqWord{2, 1}, SqWord{2}, SqWord{1, 2}};
    static const int source_off[4] = {-6, -2, 0, 1};
    const SqWord& w = words[n];
    int wdeg = 0;
    for (auto c : w) wdeg += c;
    int src = d + source_off[n];
    if (src < bv.lo) return 0;
    if (src > bv.hi || (src + wdeg > bv.hi && !bv.complete)) return std::nullopt;
    return int(word_matrix(bv, w, src).rank());
}

std::string QOEntry::str() const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::FreeZ2:
            return "Z2-free rank " + std::to_string(value) + " (index " + std::to_string(index) + ")";
        case Kind::FDim:
            return "F-dim " + std::to_string(value) + " (power " + std::to_string(index) + ")";
    }
    return "?";
}

QOEntry qo_table(int n, int d, int r) {
    QOEntry e;
    int k = floor_div(d, 8);
    long long full = (1LL << r) - 1;
    switch (d - 8 * k) {
        case 0:
            e.kind = QOEntry::Kind::FreeZ2; e.value = full; e.index = 4 * k + n;
            break;
        case 4:
            e.kind = QOEntry::Kind::FreeZ2; e.value = full; e.index = 4 * k + n + 1;
            break;
        case 6:
            e.index = 4 * k + n + 2;
            e.kind = QOEntry::Kind::FDim; e.value = dim_pbarF_power(e.index, r);
            break;
        case 7:
            e.index = 4 * k + n + 3;
            e.kind = QOEntry::Kind::FDim; e.value = dim_pbarF_power(e.index, r);
            break;
        default:
            e.kind = QOEntry::Kind::Zero;
    }
    return e;
}

long long qo_quotient_dim(int n, int d, int r) {
    QOEntry a = qo_table(n, d, r);
    QOEntry b = qo_table(n + 1, d, r);
    switch (a.kind) {
        case QOEntry::Kind::Zero: return 0;
        case QOEntry::Kind::FreeZ2: {
            // PbarZ2^s / PbarZ2^{s+1} = p_s Ibar, one step per filtration index
            long long s = 0;
            for (int i = a.index; i < b.index; ++i) s += dim_pIbar(i, r);
            return s;
        }
        case QOEntry::Kind::FDim:
            return a.value - b.value;
    }
    return 0;
}

namespace {

bool ko_total_ok(int d, int r) {
    // KO(BV_r) totals: the n -> -inf stabilization of qo_table
    QOEntry e = qo_table(-1000, d, r);
    long long full = (1LL << r) - 1;
    int k = floor_div(d, 8);
    switch (d - 8 * k) {
        case 0: case 4:
            return e.kind == QOEntry::Kind::FreeZ2 && e.value == full;
        case 6: case 7:
            return e.kind == QOEntry::Kind::FDim && e.value == full;
        default:
            return e.kind == QOEntry::Kind::Zero;
    }
}

} // namespace

KOTableReport ses_report(const A1Module& bv, int n, int d, int r) {
    KOTableReport rep;
    rep.level = n; rep.degree = d; rep.rank = r;
    rep.qo = qo_table(n, d, r);
    rep.torsion_dim = theta_image(n - 1, d, bv);
    rep.consistent = (figure2_dims(n, d, r) == qo_quotient_dim(n, d, r)) && ko_total_ok(d, r);
    return rep;
}

DetectionReport detection_check(int r, int N, int n_min, int n_max, int d_min, int d_max) {
    DetectionReport rep;
    rep.rank = r;
    BVCohomology bv = bv_cohomology(r, N);
    CochainComplex c(bv.mod, n_min, n_max);
    c.warm(n_min, n_max, d_min, d_max);
    for (int n = n_min; n <= n_max; ++n)
        for (int d = d_min; d <= d_max; ++d) {
            if (!c.reliable_at(n, d)) continue;
            auto h = c.homology_at(n, d);
            if (!h) continue;
            ++rep.cells_checked;
            long long f2 = figure2_dims(n, d, r);
            long long qd = qo_quotient_dim(n, d, r);
            if (*h != f2 || *h != qd)
                rep.mismatches.push_back({n, d, *h, f2, qd});
        }
    for (int d = d_min; d <= d_max; ++d)
        if (!ko_total_ok(d, r)) rep.ko_totals_ok = false;
    return rep;
}

GF2Matrix ExactCoupleData::q_of(int n) const {
    auto it = q_map.find(n);
    if (it != q_map.end()) return it->second;
    return GF2Matrix(std::size_t(dE(n)), std::size_t(dD(n)));
}

GF2Matrix ExactCoupleData::del_of(int n) const {
    auto it = del_map.find(n);
    if (it != del_map.end()) return it->second;
    return GF2Matrix(std::size_t(dD(n + 2)), std::size_t(dE(n)));
}

GF2Matrix ExactCoupleData::i_of(int n) const {
    auto it = i_map.find(n);
    if (it != i_map.end()) return it->second;
    return GF2Matrix(std::size_t(dD(n - 1)), std::size_t(dD(n)));
}

ExactCoupleData couple_from_tu(const TUSpace& t) {
    ExactCoupleData data;
    const A1Module& m = t.ambient;
    std::map<int, Subspace> st = st_space(t);
    data.lo = m.lo;
    data.hi = std::min(t.reliable_hi, m.hi) - 2;
    for (int n = data.lo; n <= data.hi; ++n) {
        auto sit = st.find(n);
        int dDn = (sit != st.end()) ? int(sit->second.dim()) : 0;
        int dEn = t.dim(n);
        if (dDn) data.dimD[n] = dDn;
        if (dEn) data.dimE[n] = dEn;
        // i = 0 (eta acts trivially on ST); omit zero blocks entirely
        if (dDn && dEn) {
            // q: ST^n -> TU^n, inclusion in TU coordinates
            GF2Matrix q{std::size_t(dEn), std::size_t(dDn)};
            const Subspace& tu_n = t.tu.at(n);
            for (int j = 0; j < dDn; ++j) {
                auto coords = tu_n.coordinates(sit->second.basis().row(std::size_t(j)));
                if (!coords) throw std::runtime_error("couple_from_tu: ST not inside TU");
                for (std::size_t i = 0; i < coords->size(); ++i)
                    if (coords->get(i)) q.set(i, std::size_t(j), true);
            }
            data.q_map.emplace(n, std::move(q));
        }
        if (dEn && n + 2 <= data.hi) {
            auto s2 = st.find(n + 2);
            int dDn2 = (s2 != st.end()) ? int(s2->second.dim()) : 0;
            GF2Matrix del{std::size_t(dDn2), std::size_t(dEn)};
            const Subspace& tu_n = t.tu.at(n);
            for (int j = 0; j < dEn; ++j) {
                GF2Vector w = m.sq2_of(n).apply(tu_n.basis().row(std::size_t(j)));
                if (w.is_zero()) continue;
                auto coords = s2->second.coordinates(w);
                if (!coords) throw std::runtime_error("couple_from_tu: Sq2 image escapes ST");
                for (std::size_t i = 0; i < coords->size(); ++i)
                    if (coords->get(i)) del.set(i, std::size_t(j), true);
            }
            data.del_map.emplace(n, std::move(del));
        }
    }
    return data;
}

CoupleVerdict exact_couple_check(const ExactCoupleData& data) {
    CoupleVerdict v;
    auto fail = [&](int n, const std::string& why) {
        v.pass = false;
        v.witness = n;
        v.detail = why;
        return v;
    };
    for (int n = data.lo; n <= data.hi; ++n) {
        if (!data.i_of(n).is_zero()) return fail(n, "i is nonzero");
        GF2Matrix q_n = data.q_of(n);
        GF2Matrix del_n = data.del_of(n);
        // Im q^n <= Ker del^n
        if (n + 2 <= data.hi && !(del_n * q_n).is_zero())
            return fail(n, "del after q nonzero");
        if (n + 2 > data.hi) continue;
        GF2Matrix B_n = data.q_of(n + 2) * del_n;                 // E^n -> E^{n+2}
        // Ker del^n <= Ker B^n
        GF2Matrix ker_del = del_n.kernel();
        for (std::size_t i = 0; i < ker_del.rows(); ++i)
            if (!B_n.apply(ker_del.row(i)).is_zero())
                return fail(n, "Ker del not inside Ker B");
        // Im B^{n-2} <= Im q^n, and D^n identifies with Im B^{n-2}
        GF2Matrix B_prev = data.q_of(n) * data.del_of(n - 2);     // E^{n-2} -> E^n
        Subspace im_q = image(q_n);
        Subspace im_Bprev = image(B_prev);
        for (std::size_t i = 0; i < im_Bprev.dim(); ++i)
            if (!im_q.contains(im_Bprev.basis().row(i)))
                return fail(n, "Im B^{n-2} not inside Im q^n");
        if (n - 2 >= data.lo && int(im_Bprev.dim()) != data.dD(n))
            return fail(n, "dim D^n != rank B^{n-2}");
        // dim E^n = dim D^n + dim D^{n+2} + dim H_B^n
        int ker_B = data.dE(n) - int(B_n.rank());
        int h_B = ker_B - int(im_Bprev.dim());
        if (data.dE(n) != data.dD(n) + data.dD(n + 2) + h_B)
            return fail(n, "dimension accounting fails");
    }
    v.pass = true;
    return v;
}

} // namespace a1kit
