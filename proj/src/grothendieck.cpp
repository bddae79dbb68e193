#include "a1kit/grothendieck.hpp"

#include <stdexcept>

namespace a1kit {

long long binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

long long GrothendieckClass::dim_at(int r) const {
    long long s = 0;
    for (const auto& [i, m] : multiplicity) s += m * binom(r, i);
    return s;
}

NewtonResult newton_decompose(const DimSequence& s, bool strict) {
    NewtonResult res;
    const auto& v = s.values;
    if (v.empty()) {
        res.error = "empty dimension sequence";
        return res;
    }
    // forward differences at 0
    std::vector<long long> diff = v;
    std::vector<long long> eps;
    for (std::size_t i = 0; i < v.size(); ++i) {
        eps.push_back(diff[0]);
        if (diff[0] < 0) {
            res.error = "negative forward difference at order " + std::to_string(i) +
                        ": not a dimension sequence of this form";
            return res;
        }
        for (std::size_t j = 0; j + 1 < diff.size(); ++j) diff[j] = diff[j + 1] - diff[j];
        diff.pop_back();
    }
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (strict && eps[i] > 1) {
            res.error = "coefficient " + std::to_string(eps[i]) + " at Lambda^" +
                        std::to_string(i) + " outside {0,1} (strict mode)";
            return res;
        }
        if (eps[i]) res.cls.multiplicity[int(i)] = eps[i];
    }
    for (std::size_t r = 0; r < v.size(); ++r)
        if (res.cls.dim_at(int(r)) != v[r]) {
            res.error = "reconstruction mismatch at rank " + std::to_string(r);
            res.cls.multiplicity.clear();
            return res;
        }
    res.ok = true;
    return res;
}

bool leq(const GrothendieckClass& a, const GrothendieckClass& b) {
    for (const auto& [i, m] : a.multiplicity) {
        auto it = b.multiplicity.find(i);
        if ((it == b.multiplicity.end() ? 0 : it->second) < m) return false;
    }
    return true;
}

long long dim_lambda(int i, int r) { return binom(r, i); }

long long dim_pIbar(int n, int r) {
    if (n <= 0) return 0;
    long long s = 0;
    for (int j = 1; j <= n; ++j) s += binom(r, j);
    return s;
}

long long dim_pbarF_power(int m, int r) {
    int from = m < 1 ? 1 : m;
    long long s = 0;
    for (int j = from; j <= r; ++j) s += binom(r, j);
    return s;
}

long long len_pbarZ_quotient(int n, int r) {
    long long s = 0;
    for (int j = 1; j <= n; ++j) s += dim_pIbar(j, r);
    return s;
}

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

long long figure2_dims(int n, int d, int r) {
    int l = floor_div(d, 8);
    switch (d - 8 * l) {
        case 0: return dim_pIbar(n + 4 * l, r);
        case 4: return dim_pIbar(n + 4 * l + 1, r);
        case 6: {
            int e = n + 4 * l + 2;
            return e >= 1 ? binom(r, e) : 0;
        }
        case 7: {
            int e = n + 4 * l + 3;
            return e >= 1 ? binom(r, e) : 0;
        }
        default: return 0;
    }
}

} // namespace a1kit
