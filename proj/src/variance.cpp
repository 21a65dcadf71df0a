#include <csk/variance.hpp>

namespace csk {

namespace {

void require_positive(const Rational& alpha) {
    if (alpha <= 0) throw validation_error("convolution power requires alpha > 0");
}

// m (m - m0)
Polynomial mean_quadratic(const Rational& m0) {
    return Polynomial{Rational(0), -m0, Rational(1)};
}

}  // namespace

VarianceFunction::VarianceFunction(Polynomial poly_, Rational m0_)
    : poly(std::move(poly_)), m0(std::move(m0_)) {
    if (poly(m0) <= 0)
        throw validation_error("variance function must be positive at the mean");
}

PseudoVariance::PseudoVariance(Polynomial num_, Polynomial den_)
    : num(std::move(num_)), den(std::move(den_)) {
    if (den.is_zero()) throw validation_error("pseudo-variance denominator is zero");
    if (num.is_zero()) {
        den = Polynomial{Rational(1)};
        return;
    }
    const Polynomial g = gcd(num, den);
    if (g.degree() > 0) {
        Polynomial q, r;
        Polynomial::divmod(num, g, q, r);
        num = q;
        Polynomial::divmod(den, g, q, r);
        den = q;
    }
    const Rational lead = den.leading();
    num = (Rational(1) / lead) * num;
    den = (Rational(1) / lead) * den;
}

PseudoVariance operator+(const PseudoVariance& a, const PseudoVariance& b) {
    return PseudoVariance(a.num * b.den + b.num * a.den, a.den * b.den);
}

PseudoVariance operator*(const PseudoVariance& a, const PseudoVariance& b) {
    return PseudoVariance(a.num * b.num, a.den * b.den);
}

PseudoVariance operator*(const Rational& c, const PseudoVariance& p) {
    return PseudoVariance(c * p.num, p.den);
}

PseudoVariance vf_to_pseudo(const VarianceFunction& v) {
    return PseudoVariance(Polynomial::identity() * v.poly,
                          Polynomial{-v.m0, Rational(1)});
}

VarianceFunction vf_free_power(const VarianceFunction& v, const Rational& alpha) {
    require_positive(alpha);
    return VarianceFunction(alpha * v.poly.scale_argument_inverse(alpha), alpha * v.m0);
}

VarianceFunction vf_boolean_power(const VarianceFunction& v, const Rational& alpha) {
    require_positive(alpha);
    const Rational new_mean = alpha * v.m0;
    const Polynomial scaled = alpha * v.poly.scale_argument_inverse(alpha);
    const Rational factor = Rational(1) / alpha - 1;
    return VarianceFunction(scaled + factor * mean_quadratic(new_mean), new_mean);
}

PseudoVariance pvf_boolean_power(const PseudoVariance& pv, const Rational& alpha) {
    require_positive(alpha);
    const PseudoVariance scaled(alpha * pv.num.scale_argument_inverse(alpha),
                                pv.den.scale_argument_inverse(alpha));
    const Rational factor = Rational(1) / alpha - 1;
    const PseudoVariance square(factor * Polynomial{Rational(0), Rational(0), Rational(1)},
                                Polynomial{Rational(1)});
    return scaled + square;
}

AffinePseudoVariance pvf_affine(const PseudoVariance& pv, const Rational& gamma,
                                const Rational& delta) {
    if (delta == 0) throw validation_error("affine image requires delta != 0");
    const Polynomial num_sub = pv.num.compose_affine(delta, gamma);
    const Polynomial den_sub = pv.den.compose_affine(delta, gamma);
    // m / (delta (m delta + gamma)) = m / (delta^2 m + delta gamma)
    const Polynomial prefix_den{delta * gamma, delta * delta};
    AffinePseudoVariance out{
        PseudoVariance(Polynomial::identity() * num_sub, prefix_den * den_sub),
        delta < 0};
    return out;
}

VarianceFunction vf_bt(const VarianceFunction& v, const Rational& t) {
    if (t < 0) throw validation_error("the bijection parameter requires t >= 0");
    return VarianceFunction(v.poly + t * mean_quadratic(v.m0), v.m0);
}

VarianceFunction vf_mixed_power(const VarianceFunction& v, const Rational& alpha,
                                MixedPowerOrder order) {
    require_positive(alpha);
    const Rational factor = order == MixedPowerOrder::free_then_boolean
                                ? Rational(1) / alpha - 1
                                : Rational(1) - Rational(1) / alpha;
    return VarianceFunction(v.poly + factor * mean_quadratic(v.m0), v.m0);
}

BooleanCumulants lagrange_boolean_cumulants(const VarianceFunction& v, unsigned n) {
    if (n < 1) throw validation_error("cumulant extraction needs N >= 1");
    BooleanCumulants r;
    r.values.reserve(n);
    r.values.push_back(v.m0);
    const Polynomial phi = v.poly + mean_quadratic(v.m0);
    for (unsigned j = 1; j < n; ++j)
        r.values.push_back(derivative_of_power(phi, j, j - 1, v.m0) / factorial(j));
    return r;
}

CubicClassResult cubic_class_check(const Rational& a, const Rational& b, const Rational& c) {
    (void)a;  // the linear coefficient does not enter either criterion
    CubicClassResult out;
    const Rational rhs = 27 * c * c;
    const Rational b1 = b + 1;
    out.in_v = b1 * b1 * b1 >= rhs;
    out.in_v_inf = b * b * b >= rhs;
    return out;
}

BijectionResult vf_bijection_pair(const VarianceFunction& v, BijectionDirection direction) {
    if (v.m0 != 0)
        throw validation_error("the variance-function bijection is defined for mean 0");
    const Polynomial square{Rational(0), Rational(0), Rational(1)};
    const Polynomial mapped =
        direction == BijectionDirection::forward ? v.poly + square : v.poly - square;
    BijectionResult out{VarianceFunction(mapped, Rational(0)), std::nullopt};
    if (mapped.degree() <= 3 && mapped.coeff(0) == 1)
        out.cubic_class = cubic_class_check(mapped.coeff(1), mapped.coeff(2), mapped.coeff(3));
    return out;
}

}  // namespace csk
