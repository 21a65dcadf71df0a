#include <csk/series.hpp>

namespace csk {

namespace {

void require_same_var(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.var() != b.var())
        throw validation_error("series variable mismatch");
}

unsigned shared_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    return std::min(a.order(), b.order());
}

}  // namespace

TruncatedSeries::TruncatedSeries(SeriesVar var, std::vector<Rational> coeffs)
    : var_(var), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw validation_error("a truncated series stores at least c0");
}

TruncatedSeries TruncatedSeries::constant(SeriesVar var, unsigned order, const Rational& c) {
    TruncatedSeries s(var, order);
    s.coeffs_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::identity(SeriesVar var, unsigned order) {
    TruncatedSeries s(var, order);
    if (order >= 1) s.coeffs_[1] = Rational(1);
    return s;
}

TruncatedSeries TruncatedSeries::truncated(unsigned order) const {
    if (order >= this->order()) return *this;
    return TruncatedSeries(var_, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_var(a, b);
    const unsigned n = shared_order(a, b);
    TruncatedSeries out(a.var(), n);
    for (unsigned i = 0; i <= n; ++i) out.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_var(a, b);
    const unsigned n = shared_order(a, b);
    TruncatedSeries out(a.var(), n);
    for (unsigned i = 0; i <= n; ++i) out.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_var(a, b);
    const unsigned n = shared_order(a, b);
    TruncatedSeries out(a.var(), n);
    for (unsigned i = 0; i <= n; ++i)
        for (unsigned j = 0; i + j <= n; ++j)
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return out;
}

TruncatedSeries operator*(const Rational& c, const TruncatedSeries& s) {
    TruncatedSeries out = s;
    for (auto& v : out.coeffs_) v *= c;
    return out;
}

TruncatedSeries reciprocal(const TruncatedSeries& a) {
    if (a.coeff(0) == 0)
        throw validation_error("series reciprocal requires a nonzero constant term");
    const unsigned n = a.order();
    TruncatedSeries b(a.var(), n);
    const Rational inv0 = Rational(1) / a.coeff(0);
    b.set_coeff(0, inv0);
    // triangular solve of (a*b)_k = 0 for k >= 1
    for (unsigned k = 1; k <= n; ++k) {
        Rational acc(0);
        for (unsigned j = 0; j < k; ++j) acc += a.coeff(k - j) * b.coeff(j);
        b.set_coeff(k, -inv0 * acc);
    }
    return b;
}

TruncatedSeries compose(const TruncatedSeries& b, const TruncatedSeries& a) {
    require_same_var(a, b);
    if (a.coeff(0) != 0)
        throw validation_error("series composition requires the inner series to vanish at 0");
    const unsigned n = std::min(a.order(), b.order());
    TruncatedSeries acc = TruncatedSeries::constant(a.var(), n, b.coeff(0));
    TruncatedSeries apow = TruncatedSeries::constant(a.var(), n, Rational(1));
    const TruncatedSeries at = a.truncated(n);
    for (unsigned k = 1; k <= n; ++k) {
        apow = apow * at;
        acc = acc + b.coeff(k) * apow;
    }
    return acc;
}

TruncatedSeries reversion(const TruncatedSeries& a) {
    if (a.coeff(0) != 0 || a.order() < 1 || a.coeff(1) == 0)
        throw validation_error("series reversion requires c0 = 0 and c1 != 0");
    const unsigned n = a.order();
    TruncatedSeries b(a.var(), n);
    b.set_coeff(1, Rational(1) / a.coeff(1));
    // Order-by-order: with b known through w^(k-1), the w^k coefficient of
    // a(b(w)) is a1*b_k plus terms involving only lower b coefficients.
    for (unsigned k = 2; k <= n; ++k) {
        const TruncatedSeries trial = compose(a.truncated(k), b.truncated(k));
        b.set_coeff(k, -trial.coeff(k) / a.coeff(1));
    }
    return b;
}

}  // namespace csk
