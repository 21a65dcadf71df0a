#pragma once

#include <csk/polynomial.hpp>
#include <csk/rational.hpp>

#include <vector>

namespace csk {

// Formal variable a truncated series is written in. Series in different
// variables never mix.
enum class SeriesVar { z_inverse, mean };

// Exact formal power series truncated at an explicit order N: coefficients
// c0..cN are always all stored. Binary operations truncate to the smaller
// operand order.
class TruncatedSeries {
  public:
    TruncatedSeries(SeriesVar var, unsigned order)
        : var_(var), coeffs_(order + 1, Rational(0)) {}
    TruncatedSeries(SeriesVar var, std::vector<Rational> coeffs);

    static TruncatedSeries constant(SeriesVar var, unsigned order, const Rational& c);
    static TruncatedSeries identity(SeriesVar var, unsigned order);  // the bare variable

    SeriesVar var() const { return var_; }
    unsigned order() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& coeff(unsigned i) const { return coeffs_.at(i); }
    void set_coeff(unsigned i, const Rational& c) { coeffs_.at(i) = c; }

    TruncatedSeries truncated(unsigned order) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const Rational& c, const TruncatedSeries& s);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

  private:
    SeriesVar var_;
    std::vector<Rational> coeffs_;
};

// Multiplicative inverse to the shared order; requires nonzero constant term.
TruncatedSeries reciprocal(const TruncatedSeries& a);

// b(a(x)) to the shared order; requires a to have zero constant term.
TruncatedSeries compose(const TruncatedSeries& b, const TruncatedSeries& a);

// Compositional inverse: the unique b with a(b(x)) = x to order N.
// Requires c0 = 0 and c1 != 0. Solved coefficient by coefficient.
TruncatedSeries reversion(const TruncatedSeries& a);

}  // namespace csk
