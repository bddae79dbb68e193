#pragma once

// Unpacked reference implementations used to cross-check the bit-packed
// kernel. Everything here is deliberately plain: byte matrices, Pascal
// binomials, no shared code with the fast paths.

#include <cstdint>
#include <vector>

namespace naive {

using Mat = std::vector<std::vector<unsigned char>>;   // rows x cols over GF(2)

inline Mat zeros(std::size_t r, std::size_t c) {
    return Mat(r, std::vector<unsigned char>(c, 0));
}

inline int rank(Mat m) {
    if (m.empty() || m[0].empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    int r = 0;
    for (std::size_t c = 0; c < cols && r < int(rows); ++c) {
        int piv = -1;
        for (std::size_t i = std::size_t(r); i < rows; ++i)
            if (m[i][c]) { piv = int(i); break; }
        if (piv < 0) continue;
        std::swap(m[std::size_t(r)], m[std::size_t(piv)]);
        for (std::size_t i = 0; i < rows; ++i)
            if (int(i) != r && m[i][c])
                for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= m[std::size_t(r)][j];
        ++r;
    }
    return r;
}

inline Mat mul(const Mat& a, const Mat& b) {
    std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Mat out = zeros(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (a[i][t])
                for (std::size_t j = 0; j < c; ++j) out[i][j] ^= b[t][j];
    return out;
}

inline std::vector<unsigned char> apply(const Mat& m, const std::vector<unsigned char>& v) {
    std::vector<unsigned char> out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] ^= (m[i][j] & v[j]);
    return out;
}

// Pascal-triangle binomials mod 2 (independent of the Lucas shortcut)
inline int binom_mod2(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::vector<std::vector<int>> pas(n + 1, std::vector<int>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        pas[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            pas[i][j] = (pas[i - 1][j - 1] + (j <= i - 1 ? pas[i - 1][j] : 0)) % 2;
    }
    return pas[n][k];
}

// Reference model of the cohomology of BV_r: monomials of total degree d in r
// variables, with the total-square action expanded from binomials.
struct BVRef {
    int rank, N;
    std::vector<std::vector<std::vector<int>>> monos;   // [d-1] -> exponent vectors
    std::vector<Mat> sq1, sq2;                          // index d-1

    BVRef(int r, int n) : rank(r), N(n) {
        monos.resize(std::size_t(N));
        for (int d = 1; d <= N; ++d) gen(r, d, monos[std::size_t(d - 1)]);
        sq1.resize(std::size_t(N));
        sq2.resize(std::size_t(N));
        for (int k = 1; k <= 2; ++k)
            for (int d = 1; d + k <= N; ++d) {
                const auto& src = monos[std::size_t(d - 1)];
                const auto& dst = monos[std::size_t(d + k - 1)];
                Mat m = zeros(dst.size(), src.size());
                for (std::size_t j = 0; j < src.size(); ++j) {
                    std::vector<std::vector<int>> terms;
                    sq_terms(src[j], k, terms);
                    for (const auto& t : terms)
                        for (std::size_t i = 0; i < dst.size(); ++i)
                            if (dst[i] == t) m[i][j] ^= 1;
                }
                (k == 1 ? sq1 : sq2)[std::size_t(d - 1)] = std::move(m);
            }
    }

    int dim(int d) const {
        if (d < 1 || d > N) return 0;
        return int(monos[std::size_t(d - 1)].size());
    }
    const Mat& s1(int d) const { return sq1[std::size_t(d - 1)]; }
    const Mat& s2(int d) const { return sq2[std::size_t(d - 1)]; }

    // dim of the image of Q0 Q1 = Sq1 Sq2 Sq1 landing in degree d
    int tu_dim(int d) const {
        if (d - 4 < 1 || d > N) return 0;
        Mat comp = mul(s1(d - 1), mul(s2(d - 3), s1(d - 4)));
        return naive::rank(comp);
    }

private:
    static void gen(int r, int d, std::vector<std::vector<int>>& out) {
        std::vector<int> cur(std::size_t(r), 0);
        rec(0, r, d, cur, out);
    }
    static void rec(int pos, int r, int rem, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
        if (pos == r - 1) {
            cur[std::size_t(pos)] = rem;
            out.push_back(cur);
            return;
        }
        for (int a = rem; a >= 0; --a) {
            cur[std::size_t(pos)] = a;
            rec(pos + 1, r, rem - a, cur, out);
        }
    }
    void sq_terms(const std::vector<int>& e, int k, std::vector<std::vector<int>>& terms) const {
        std::vector<int> cur(e.size());
        walk(e, 0, k, cur, terms);
    }
    void walk(const std::vector<int>& e, std::size_t pos, int rem, std::vector<int>& cur,
              std::vector<std::vector<int>>& terms) const {
        if (pos == e.size()) {
            if (rem == 0) terms.push_back(cur);
            return;
        }
        for (int ki = 0; ki <= rem && ki <= e[pos]; ++ki) {
            if (!binom_mod2(e[pos], ki)) continue;
            cur[pos] = e[pos] + ki;
            walk(e, pos + 1, rem - ki, cur, terms);
        }
    }
};

// deterministic xorshift for test data
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed = 0xdeadbeefcafef00dull) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        return s;
    }
    int below(int n) { return int(next() % std::uint64_t(n)); }
};

} // namespace naive
