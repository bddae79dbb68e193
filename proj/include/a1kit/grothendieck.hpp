#pragma once

#include <map>
#include <string>
#include <vector>

namespace a1kit {

long long binom(int n, int k);

// Dimension sequence of a functor: values[r] = dim F(F^r), r = 0..R.
struct DimSequence {
    std::vector<long long> values;
};

// Multiset of exterior-power composition factors.
struct GrothendieckClass {
    std::map<int, long long> multiplicity;   // Lambda^i -> count, i >= 0
    long long dim_at(int r) const;
};

struct NewtonResult {
    bool ok = false;
    GrothendieckClass cls;
    std::string error;
};

// componentwise comparison of composition-factor multiplicities
bool leq(const GrothendieckClass& a, const GrothendieckClass& b);

// Binomial-basis decomposition via forward differences at 0. In strict mode
// every coefficient must lie in {0,1}; the generalized mode allows natural
// multiplicities. Fails on negative differences or reconstruction mismatch.
NewtonResult newton_decompose(const DimSequence& s, bool strict = true);

// dim Lambda^i(F^r) = C(r, i)
long long dim_lambda(int i, int r);
// dim p_n Ibar(F^r) = sum_{j=1..n} C(r, j); zero for n <= 0
long long dim_pIbar(int n, int r);
// dim PbarF^m(F^r) = sum_{j >= max(m,1)} C(r, j)
long long dim_pbarF_power(int m, int r);
// composition length of PbarZ2 / PbarZ2^{n+1} at rank r
long long len_pbarZ_quotient(int n, int r);

// Closed-form homology table of the fundamental complex on H(BV_r), bidegree
// (level n, internal degree d):
//   d = 8l   -> dim p_{n+4l} Ibar
//   d = 8l+4 -> dim p_{n+4l+1} Ibar
//   d = 8l+6 -> dim Lambda^{n+4l+2}   (zero when the exponent is < 1)
//   d = 8l+7 -> dim Lambda^{n+4l+3}   (zero when the exponent is < 1)
//   otherwise 0.
long long figure2_dims(int n, int d, int r);

} // namespace a1kit
