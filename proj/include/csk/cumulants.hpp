#pragma once

#include <csk/rational.hpp>
#include <csk/series.hpp>

#include <string>
#include <vector>

namespace csk {

// All sequences are 1-indexed: values[0] holds the first entry (m1, r1 or
// k1). The zeroth entry is implicit (m0 = 1, r0 = 0) and never stored.
struct MomentSequence {
    std::vector<Rational> values;  // m1..mN
    unsigned size() const { return static_cast<unsigned>(values.size()); }
};

struct BooleanCumulants {
    std::vector<Rational> values;  // r1..rN
    unsigned size() const { return static_cast<unsigned>(values.size()); }
};

struct FreeCumulants {
    std::vector<Rational> values;  // k1..kN
    unsigned size() const { return static_cast<unsigned>(values.size()); }
};

// Boolean cumulants are the coefficients of eta(w) = 1 - 1/M(w) where
// M(w) = 1 + sum m_n w^n; equivalently K(1/w) = eta(w)/w.
BooleanCumulants moments_to_boolean(const MomentSequence& m);
MomentSequence boolean_to_moments(const BooleanCumulants& r);

// Free cumulants through the moment-cumulant recursion
//   m_n = sum_{k=1..n} kappa_k [w^(n-k)] M(w)^k.
FreeCumulants moments_to_free(const MomentSequence& m);
MomentSequence free_to_moments(const FreeCumulants& k);

// Convolution powers act on cumulants by scaling.
BooleanCumulants boolean_power(const BooleanCumulants& r, const Rational& alpha);
FreeCumulants free_power(const FreeCumulants& k, const Rational& alpha);

// The t-parameter bijection nu -> (nu boxplus (1+t)) uplus 1/(1+t), applied
// on moment sequences, and its inverse.
MomentSequence bp_map(const MomentSequence& m, const Rational& t);
MomentSequence bp_inverse(const MomentSequence& m, const Rational& t);

struct HankelReport {
    bool is_psd = false;
    std::vector<Rational> determinants;  // leading principal minors, sizes 1..size
};

// Exact leading principal minors of the Hankel matrix H[i][j] = s[i+j]
// (0-indexed). is_psd is true iff all minors are >= 0. Requires at least
// 2*size - 1 entries.
HankelReport hankel_psd_check(const std::vector<Rational>& s, unsigned size);

}  // namespace csk
