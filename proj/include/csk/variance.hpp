#pragma once

#include <csk/cumulants.hpp>
#include <csk/polynomial.hpp>

#include <optional>

namespace csk {

// Polynomial variance function V(m) together with the mean m0 of the
// generating measure. V(m0) > 0 is required (non-degeneracy).
struct VarianceFunction {
    VarianceFunction(Polynomial poly_, Rational m0_);

    Polynomial poly;
    Rational m0;

    friend bool operator==(const VarianceFunction& a, const VarianceFunction& b) = default;
};

// Pseudo-variance as a reduced ratio of polynomials; the affine images of a
// polynomial variance function leave the polynomial class. Canonical form:
// denominator monic, gcd(num, den) = 1.
struct PseudoVariance {
    PseudoVariance(Polynomial num_, Polynomial den_);

    Polynomial num;
    Polynomial den;

    friend bool operator==(const PseudoVariance& a, const PseudoVariance& b) = default;

    friend PseudoVariance operator+(const PseudoVariance& a, const PseudoVariance& b);
    friend PseudoVariance operator*(const PseudoVariance& a, const PseudoVariance& b);
    friend PseudoVariance operator*(const Rational& c, const PseudoVariance& p);
};

// pvar(m) = m V(m)/(m - m0); polynomial (and equal to V) when m0 = 0.
PseudoVariance vf_to_pseudo(const VarianceFunction& v);

// Variance function of the free convolution power: m -> alpha V(m/alpha),
// mean alpha*m0.
VarianceFunction vf_free_power(const VarianceFunction& v, const Rational& alpha);

// Variance function of the boolean convolution power:
//   alpha V(m/alpha) + m (m - alpha m0) (1/alpha - 1), mean alpha*m0.
VarianceFunction vf_boolean_power(const VarianceFunction& v, const Rational& alpha);

// Pseudo-variance of the boolean convolution power:
//   alpha pvar(m/alpha) + m^2 (1/alpha - 1).
PseudoVariance pvf_boolean_power(const PseudoVariance& pv, const Rational& alpha);

struct AffinePseudoVariance {
    PseudoVariance expr;
    // the image measure of x -> (x - gamma)/delta with delta < 0 has support
    // bounded from below and generates a left-sided family
    bool left_sided = false;
};

// Pseudo-variance of the image measure under x -> (x - gamma)/delta:
//   m -> [m / (delta (m delta + gamma))] pvar(delta m + gamma).
AffinePseudoVariance pvf_affine(const PseudoVariance& pv, const Rational& gamma,
                                const Rational& delta);

// V + t m (m - m0): the variance function of the t-parameter bijection image.
VarianceFunction vf_bt(const VarianceFunction& v, const Rational& t);

enum class MixedPowerOrder { free_then_boolean, boolean_then_free };

// Variance functions of (nu^{boxplus 1/alpha})^{uplus alpha} and
// (nu^{uplus 1/alpha})^{boxplus alpha}: V +- (1/alpha - 1) m (m - m0).
VarianceFunction vf_mixed_power(const VarianceFunction& v, const Rational& alpha,
                                MixedPowerOrder order);

// Boolean cumulants extracted from the variance function:
//   r1 = m0,  r_{n+1} = (1/n!) d^{n-1}/dm^{n-1} (V(m) + m(m - m0))^n at m0.
BooleanCumulants lagrange_boolean_cumulants(const VarianceFunction& v, unsigned n);

struct CubicClassResult {
    bool in_v = false;      // (b+1)^3 >= 27 c^2
    bool in_v_inf = false;  // b^3 >= 27 c^2
};

// Membership tests for V(m) = 1 + a m + b m^2 + c m^3 in the class of
// variance functions of centered standardized measures, and in the
// dilation-stable subclass. Exact rational comparisons.
CubicClassResult cubic_class_check(const Rational& a, const Rational& b, const Rational& c);

enum class BijectionDirection { forward, inverse };

struct BijectionResult {
    VarianceFunction vf;
    // reported when the result is cubic or lower; inverse images may leave
    // the admissible class and this flags it instead of refusing
    std::optional<CubicClassResult> cubic_class;
};

// V -> V + m^2 (forward) or V -> V - m^2 (inverse); requires m0 = 0.
BijectionResult vf_bijection_pair(const VarianceFunction& v, BijectionDirection direction);

}  // namespace csk
