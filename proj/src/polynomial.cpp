#include <csk/polynomial.hpp>

#include <sstream>

namespace csk {

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::identity() { return Polynomial{Rational(0), Rational(1)}; }

const Rational& Polynomial::leading() const {
    if (coeffs_.empty()) throw validation_error("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

Polynomial Polynomial::operator-() const {
    std::vector<Rational> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = -coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
    std::vector<Rational> out(p.coeffs_.size());
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] = c * p.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = Rational(i) * coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial result{Rational(1)};
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1u) result = result * base;
        base = base * base;
        n >>= 1u;
    }
    return result;
}

Polynomial Polynomial::compose_affine(const Rational& scale, const Rational& shift) const {
    // Horner in the affine argument
    Polynomial arg{shift, scale};
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * arg + Polynomial(*it);
    return acc;
}

Polynomial Polynomial::scale_argument_inverse(const Rational& scale) const {
    if (scale == 0) throw validation_error("argument scale must be nonzero");
    std::vector<Rational> out(coeffs_.size());
    Rational p(1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[i] = coeffs_[i] / p;
        p *= scale;
    }
    return Polynomial(std::move(out));
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
    if (b.is_zero()) throw validation_error("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs_;
    const int db = b.degree();
    std::vector<Rational> quot;
    if (a.degree() >= db) quot.assign(a.degree() - db + 1, Rational(0));
    while (static_cast<int>(rem.size()) - 1 >= db) {
        if (rem.back() == 0) { rem.pop_back(); continue; }
        const std::size_t shift = rem.size() - 1 - db;
        const Rational factor = rem.back() / b.leading();
        quot[shift] = factor;
        for (int i = 0; i <= db; ++i) rem[shift + i] -= factor * b.coeffs_[i];
        rem.pop_back();
    }
    q = Polynomial(std::move(quot));
    r = Polynomial(std::move(rem));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return (Rational(1) / leading()) * *this;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial q, r;
        Polynomial::divmod(x, y, q, r);
        x = y;
        y = r;
    }
    return x.monic();
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        Rational mag = abs(coeffs_[i]);
        if (i == 0 || mag != 1) os << to_string(mag);
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

Rational derivative_of_power(const Polynomial& base, unsigned n, unsigned k, const Rational& at) {
    // d^k/dm^k base(m)^n at m = at equals k! times the degree-k Taylor
    // coefficient of base(m + at)^n.
    Polynomial shifted = base.compose_affine(Rational(1), at);
    Polynomial p = shifted.pow(n);
    return factorial(k) * p.coeff(k);
}

}  // namespace csk
