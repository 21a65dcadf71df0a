#pragma once

#include <csk/rational.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace csk {

// Dense univariate polynomial over Rational. coeffs[i] is the degree-i
// coefficient; trailing zeros are trimmed so the leading coefficient is
// nonzero unless the polynomial is zero (empty coefficient list).
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Rational> cs) : coeffs_(cs) { trim(); }
    explicit Polynomial(std::vector<Rational> cs) : coeffs_(std::move(cs)) { trim(); }
    explicit Polynomial(const Rational& c) : coeffs_{c} { trim(); }

    static Polynomial identity();  // m

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Rational(0);
    }
    const Rational& leading() const;

    Rational operator()(const Rational& x) const;
    double eval_double(double x) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    Polynomial derivative() const;
    Polynomial pow(unsigned n) const;
    // p(scale * m + shift)
    Polynomial compose_affine(const Rational& scale, const Rational& shift) const;
    // p(m / scale), exact in the coefficients
    Polynomial scale_argument_inverse(const Rational& scale) const;

    // Euclidean division, denominator-clearing not needed over Q.
    static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);
    Polynomial monic() const;

    std::string str(const std::string& var = "m") const;

  private:
    void trim();
    std::vector<Rational> coeffs_;
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);

// k-th derivative of base(m)^n evaluated at m = at, exact, without any
// factorial prefactor. Computed from the Taylor coefficient of the shifted
// power rather than by repeated symbolic differentiation.
Rational derivative_of_power(const Polynomial& base, unsigned n, unsigned k, const Rational& at);

}  // namespace csk
