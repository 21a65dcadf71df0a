#include <csk/cumulants.hpp>

namespace csk {

namespace {

TruncatedSeries moment_series(const MomentSequence& m) {
    // M(w) = 1 + m1 w + ... + mN w^N
    std::vector<Rational> c(m.size() + 1, Rational(0));
    c[0] = 1;
    for (unsigned i = 0; i < m.size(); ++i) c[i + 1] = m.values[i];
    return TruncatedSeries(SeriesVar::z_inverse, std::move(c));
}

void require_positive(const Rational& alpha) {
    if (alpha <= 0) throw validation_error("convolution power requires alpha > 0");
}

void require_nonnegative(const Rational& t) {
    if (t < 0) throw validation_error("the bijection parameter requires t >= 0");
}

}  // namespace

BooleanCumulants moments_to_boolean(const MomentSequence& m) {
    const TruncatedSeries M = moment_series(m);
    const TruncatedSeries eta =
        TruncatedSeries::constant(SeriesVar::z_inverse, m.size(), Rational(1)) - reciprocal(M);
    BooleanCumulants r;
    r.values.reserve(m.size());
    for (unsigned n = 1; n <= m.size(); ++n) r.values.push_back(eta.coeff(n));
    return r;
}

MomentSequence boolean_to_moments(const BooleanCumulants& r) {
    const unsigned n = r.size();
    std::vector<Rational> c(n + 1, Rational(0));
    c[0] = 1;
    for (unsigned i = 0; i < n; ++i) c[i + 1] = -r.values[i];
    // M = 1/(1 - eta)
    const TruncatedSeries M = reciprocal(TruncatedSeries(SeriesVar::z_inverse, std::move(c)));
    MomentSequence m;
    m.values.reserve(n);
    for (unsigned i = 1; i <= n; ++i) m.values.push_back(M.coeff(i));
    return m;
}

FreeCumulants moments_to_free(const MomentSequence& m) {
    const unsigned n = m.size();
    const TruncatedSeries M = moment_series(m);
    // powers[k] = M^k truncated at order n
    std::vector<TruncatedSeries> powers;
    powers.reserve(n + 1);
    powers.push_back(TruncatedSeries::constant(SeriesVar::z_inverse, n, Rational(1)));
    for (unsigned k = 1; k <= n; ++k) powers.push_back(powers.back() * M);

    FreeCumulants out;
    out.values.assign(n, Rational(0));
    for (unsigned j = 1; j <= n; ++j) {
        Rational acc = m.values[j - 1];
        for (unsigned k = 1; k < j; ++k) acc -= out.values[k - 1] * powers[k].coeff(j - k);
        out.values[j - 1] = acc;  // [w^0] M^j = 1
    }
    return out;
}

MomentSequence free_to_moments(const FreeCumulants& k) {
    const unsigned n = k.size();
    TruncatedSeries M = TruncatedSeries::constant(SeriesVar::z_inverse, n, Rational(1));
    MomentSequence out;
    out.values.assign(n, Rational(0));
    for (unsigned j = 1; j <= n; ++j) {
        // m_j depends on M only through coefficients below j, already final.
        TruncatedSeries pw = TruncatedSeries::constant(SeriesVar::z_inverse, n, Rational(1));
        Rational acc(0);
        for (unsigned i = 1; i <= j; ++i) {
            pw = pw * M;
            acc += k.values[i - 1] * pw.coeff(j - i);
        }
        out.values[j - 1] = acc;
        M.set_coeff(j, acc);
    }
    return out;
}

BooleanCumulants boolean_power(const BooleanCumulants& r, const Rational& alpha) {
    require_positive(alpha);
    BooleanCumulants out;
    out.values.reserve(r.size());
    for (const auto& v : r.values) out.values.push_back(alpha * v);
    return out;
}

FreeCumulants free_power(const FreeCumulants& k, const Rational& alpha) {
    require_positive(alpha);
    FreeCumulants out;
    out.values.reserve(k.size());
    for (const auto& v : k.values) out.values.push_back(alpha * v);
    return out;
}

MomentSequence bp_map(const MomentSequence& m, const Rational& t) {
    require_nonnegative(t);
    const Rational s = Rational(1) + t;
    const MomentSequence freed = free_to_moments(free_power(moments_to_free(m), s));
    return boolean_to_moments(boolean_power(moments_to_boolean(freed), Rational(1) / s));
}

MomentSequence bp_inverse(const MomentSequence& m, const Rational& t) {
    require_nonnegative(t);
    const Rational s = Rational(1) + t;
    const MomentSequence boosted = boolean_to_moments(boolean_power(moments_to_boolean(m), s));
    return free_to_moments(free_power(moments_to_free(boosted), Rational(1) / s));
}

HankelReport hankel_psd_check(const std::vector<Rational>& s, unsigned size) {
    if (size == 0) throw validation_error("hankel check needs size >= 1");
    if (s.size() < 2 * size - 1)
        throw validation_error("hankel check needs at least 2*size - 1 sequence entries");

    HankelReport report;
    report.determinants.reserve(size);
    for (unsigned k = 1; k <= size; ++k) {
        // fraction-free enough: plain Gaussian elimination over Q is exact
        std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j) a[i][j] = s[i + j];
        Rational det(1);
        for (unsigned col = 0; col < k && det != 0; ++col) {
            unsigned pivot = col;
            while (pivot < k && a[pivot][col] == 0) ++pivot;
            if (pivot == k) { det = 0; break; }
            if (pivot != col) { std::swap(a[pivot], a[col]); det = -det; }
            det *= a[col][col];
            for (unsigned row = col + 1; row < k; ++row) {
                if (a[row][col] == 0) continue;
                const Rational f = a[row][col] / a[col][col];
                for (unsigned j = col; j < k; ++j) a[row][j] -= f * a[col][j];
            }
        }
        report.determinants.push_back(det);
    }
    report.is_psd = true;
    for (const auto& d : report.determinants)
        if (d < 0) report.is_psd = false;
    return report;
}

}  // namespace csk
