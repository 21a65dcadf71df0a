#include <csk/verify.hpp>

#include <csk/cumulants.hpp>
#include <csk/measure.hpp>
#include <csk/rational.hpp>
#include <csk/variance.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace csk {

bool VerifyReport::all_pass() const {
    for (const VerifyCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

Rational catalan(unsigned n) { return binomial(2 * n, n) / Rational(n + 1); }
Rational fuss_catalan3(unsigned n) { return binomial(3 * n + 1, n) / Rational(3 * n + 1); }

std::vector<Rational> random_rationals(std::mt19937& rng, unsigned n) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    std::vector<Rational> out;
    out.reserve(n);
    for (unsigned i = 0; i < n; ++i) out.push_back(Rational(num(rng), den(rng)));
    return out;
}

// worst absolute difference between exact sequences, as a double
double exact_mismatch(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    double worst = a.size() == b.size() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        worst = std::max(worst, std::abs(to_double(a[i] - b[i])));
    return worst;
}

struct SuiteRunner {
    VerifyReport report;
    double numeric_tol_override;

    void exact(const std::string& name, const std::string& identity,
               const std::function<double()>& worst_deviation) {
        VerifyCheck check{"exact", name, identity, false, 0.0, 0.0};
        try {
            check.deviation = worst_deviation();
            check.pass = check.deviation == 0.0;
        } catch (const std::exception&) {
            check.deviation = std::numeric_limits<double>::infinity();
        }
        report.checks.push_back(std::move(check));
    }

    void numeric(const std::string& name, const std::string& identity, double tolerance,
                 const std::function<double()>& worst_deviation) {
        if (numeric_tol_override > 0.0) tolerance = numeric_tol_override;
        VerifyCheck check{"numeric", name, identity, false, 0.0, tolerance};
        try {
            check.deviation = worst_deviation();
            check.pass = check.deviation <= tolerance;
        } catch (const std::exception&) {
            check.deviation = std::numeric_limits<double>::infinity();
        }
        report.checks.push_back(std::move(check));
    }
};

std::vector<Rational> bernoulli_moments(unsigned n) {
    std::vector<Rational> m(n, Rational(0));
    for (unsigned i = 2; i <= n; i += 2) m[i - 1] = 1;
    return m;
}

std::vector<Rational> semicircle_moments(unsigned n) {
    std::vector<Rational> m(n, Rational(0));
    for (unsigned i = 2; i <= n; i += 2) m[i - 1] = catalan(i / 2);
    return m;
}

std::vector<Rational> mp2_moments(unsigned n) {
    BooleanCumulants r;
    r.values.assign(n, Rational(0));
    for (unsigned i = 2; i <= n; ++i) r.values[i - 1] = catalan(i - 1);
    return boolean_to_moments(r).values;
}

}  // namespace

VerifyReport verify_all(const VerifyOptions& opts) {
    SuiteRunner run;
    run.numeric_tol_override = opts.numeric_tol;
    const NumericConfig& cfg = opts.numeric;
    const unsigned N = std::max(1u, opts.order);

    run.exact("moments-boolean round trip", "M = 1/(1 - eta), eta = 1 - 1/M", [&] {
        std::mt19937 rng(20240901);
        double worst = 0.0;
        for (int s = 0; s < 50; ++s) {
            MomentSequence m{random_rationals(rng, N)};
            worst = std::max(worst, exact_mismatch(boolean_to_moments(moments_to_boolean(m)).values,
                                                   m.values));
            BooleanCumulants r{random_rationals(rng, N)};
            worst = std::max(worst, exact_mismatch(moments_to_boolean(boolean_to_moments(r)).values,
                                                   r.values));
        }
        return worst;
    });

    run.exact("moments-free round trip", "m_n = sum_k kappa_k [w^(n-k)] M(w)^k", [&] {
        std::mt19937 rng(20240902);
        double worst = 0.0;
        for (int s = 0; s < 50; ++s) {
            MomentSequence m{random_rationals(rng, N)};
            worst = std::max(worst,
                             exact_mismatch(free_to_moments(moments_to_free(m)).values, m.values));
            FreeCumulants k{random_rationals(rng, N)};
            worst = std::max(worst,
                             exact_mismatch(moments_to_free(free_to_moments(k)).values, k.values));
        }
        return worst;
    });

    run.exact("catalan extraction",
              "(1/n!) d^(n-1)/dm^(n-1) (1+m)^(2n) at 0 = C(2n,n)/(n+1)", [&] {
                  VarianceFunction v(Polynomial{Rational(1), Rational(2)}, Rational(0));
                  std::vector<Rational> want(9, Rational(0));
                  for (unsigned n = 1; n <= 8; ++n) want[n] = catalan(n);
                  return exact_mismatch(lagrange_boolean_cumulants(v, 9).values, want);
              });

    run.exact("fuss-catalan extraction",
              "(1/n!) d^(n-1)/dm^(n-1) (1+m)^(3n) at 0 = C(3n+1,n)/(3n+1)", [&] {
                  VarianceFunction v(Polynomial{Rational(1), Rational(3), Rational(2), Rational(1)},
                                     Rational(0));
                  std::vector<Rational> want(9, Rational(0));
                  for (unsigned n = 1; n <= 8; ++n) want[n] = fuss_catalan3(n);
                  return exact_mismatch(lagrange_boolean_cumulants(v, 9).values, want);
              });

    run.exact("bijection transport", "kappa_n of the t=1 image = r_n of the source", [&] {
        double worst = 0.0;
        for (const auto& values : {bernoulli_moments(N), semicircle_moments(N), mp2_moments(N)}) {
            MomentSequence m{values};
            worst = std::max(worst, exact_mismatch(moments_to_free(bp_map(m, Rational(1))).values,
                                                   moments_to_boolean(m).values));
        }
        return worst;
    });

    run.exact("cubic class", "in V iff (b+1)^3 >= 27c^2; in V_inf iff b^3 >= 27c^2", [&] {
        int bad = 0;
        auto expect = [&](int a, int b, int c, bool in_v, bool in_v_inf) {
            CubicClassResult r = cubic_class_check(Rational(a), Rational(b), Rational(c));
            if (r.in_v != in_v || r.in_v_inf != in_v_inf) ++bad;
        };
        expect(3, 2, 1, true, false);
        expect(0, 3, 1, true, true);
        expect(0, 0, 2, false, false);
        return double(bad);
    });

    run.exact("power transport", "pseudo route and variance route agree on boolean powers", [&] {
        int bad = 0;
        VarianceFunction v1(Polynomial{Rational(1), Rational(3), Rational(2), Rational(1)},
                            Rational(0));
        VarianceFunction v2(Polynomial{Rational(2), Rational(1)}, Rational(1));
        for (const auto& v : {v1, v2})
            for (const Rational& alpha : {Rational(2), Rational(1, 3)}) {
                PseudoVariance via_vf = vf_to_pseudo(vf_boolean_power(v, alpha));
                PseudoVariance via_pv = pvf_boolean_power(vf_to_pseudo(v), alpha);
                if (!(via_vf == via_pv)) ++bad;
            }
        return double(bad);
    });

    run.exact("mixed power limit", "V_(u 1/a then boxplus a) - V_(t=1 image) = -m(m-m0)/a", [&] {
        int bad = 0;
        VarianceFunction vq(Polynomial{Rational(1), Rational(2)}, Rational(0));
        VarianceFunction vc(Polynomial{Rational(2), Rational(1), Rational(1), Rational(1)},
                            Rational(-1));
        for (const auto& v : {vq, vc}) {
            Polynomial q = Polynomial{Rational(0), Rational(1)} *
                           (Polynomial{Rational(0), Rational(1)} - Polynomial{v.m0});
            Polynomial bt1 = vf_bt(v, Rational(1)).poly;
            for (Rational alpha = 2; alpha <= 1024; alpha *= 2) {
                Polynomial got =
                    vf_mixed_power(v, alpha, MixedPowerOrder::boolean_then_free).poly - bt1;
                Polynomial want = (Rational(-1) / alpha) * q;
                if (!(got == want)) ++bad;
            }
        }
        return double(bad);
    });

    // shared corpus for the numeric suites
    const Measure bern = Measure::bernoulli_symmetric();
    const Measure bern2 = boolean_power_atomic(bern, 2.0);
    const Measure mp1 = Measure::marchenko_pastur(1.0);
    const Measure mp2 = Measure::marchenko_pastur(2.0);
    const Measure semi = Measure::semicircle_standard();
    struct Named {
        const char* name;
        const Measure* nu;
        std::vector<double> m_grid;
    };
    const std::vector<Named> corpus{{"two-point", &bern, {0.05, 0.15, 0.3, 0.45}},
                                    {"two-point boolean square", &bern2, {0.1, 0.4, 0.8}},
                                    {"mp a=1", &mp1, {0.05, 0.1, 0.2}},
                                    {"mp a=2", &mp2, {0.05, 0.1, 0.2}},
                                    {"semicircle", &semi, {0.1, 0.3, 0.5}}};

    run.numeric("self-energy monotone", "K(z1) > K(z2) for b < z1 < z2", 0.0, [&] {
        std::mt19937 rng(20240903);
        double worst = 0.0;
        for (const Named& entry : corpus) {
            double b = entry.nu->upper_bound();
            std::uniform_real_distribution<double> dz(b + 0.05, b + 10.0);
            for (int i = 0; i < 20; ++i) {
                double z1 = dz(rng), z2 = dz(rng);
                if (z2 < z1) std::swap(z1, z2);
                if (z1 == z2) continue;
                worst = std::max(worst, k_transform(*entry.nu, z2, cfg) -
                                            k_transform(*entry.nu, z1, cfg));
            }
        }
        return std::max(worst, 0.0);
    });

    run.numeric("mean inversion residual", "K(m + pvar(m)/m) = m", 1e-10, [&] {
        double worst = 0.0;
        for (const Named& entry : corpus)
            for (double m : entry.m_grid) {
                double pv = pseudo_variance_numeric(*entry.nu, m, cfg);
                worst = std::max(worst,
                                 std::abs(k_transform(*entry.nu, m + pv / m, cfg) - m));
            }
        return worst;
    });

    run.numeric("transform consistency", "G(m + pvar(m)/m) = m / pvar(m)", 1e-9, [&] {
        double worst = 0.0;
        for (const Named& entry : corpus)
            for (double m : entry.m_grid) {
                double pv = pseudo_variance_numeric(*entry.nu, m, cfg);
                worst = std::max(worst, std::abs(cauchy_transform(*entry.nu, m + pv / m, cfg) -
                                                 m / pv));
            }
        return worst;
    });

    run.numeric("pseudo-variance linear in the mean", "pvar of MP(a) is 1 + a m", 1e-8, [&] {
        double worst = 0.0;
        for (double a : {1.0, 2.0}) {
            const Measure& nu = a == 1.0 ? mp1 : mp2;
            for (int i = 1; i <= 20; ++i) {
                double m = 0.3 * i / 20.0;
                worst = std::max(worst,
                                 std::abs(pseudo_variance_numeric(nu, m, cfg) - (1.0 + a * m)));
            }
        }
        return worst;
    });

    run.numeric("pseudo-variance of the two-point law", "pvar(m) = 1 - m^2", 1e-8, [&] {
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) {
            double m = 0.5 * i / 20.0;
            worst = std::max(worst,
                             std::abs(pseudo_variance_numeric(bern, m, cfg) - (1.0 - m * m)));
        }
        return worst;
    });

    run.numeric("atomic boolean square", "doubling K moves the atoms to +-sqrt(2)", 1e-10, [&] {
        double worst = std::abs(bern2.atoms()[0].location + std::sqrt(2.0));
        worst = std::max(worst, std::abs(bern2.atoms()[1].location - std::sqrt(2.0)));
        worst = std::max(worst, std::abs(bern2.atoms()[0].weight - 0.5));
        worst = std::max(worst, std::abs(bern2.atoms()[1].weight - 0.5));
        return worst;
    });

    run.numeric("boolean power bridge", "pvar of the power = a pvar(m/a) + m^2 (1/a - 1)", 1e-8,
                [&] {
                    double worst = 0.0;
                    for (double alpha : {0.5, 2.0})
                        worst = std::max(
                            worst,
                            verify_boolean_power_vf(bern, alpha, {0.05, 0.1, 0.15}, cfg)
                                .max_deviation);
                    return worst;
                });

    run.numeric("moment bridge to catalan", "MP(2) boolean cumulants are shifted Catalan", 1e-7,
                [&] {
                    std::vector<double> mom = raw_moments(mp2, 8, cfg);
                    MomentSequence m;
                    for (double v : mom) m.values.push_back(rational_from_double(v));
                    BooleanCumulants r = moments_to_boolean(m);
                    double worst = std::abs(to_double(r.values[0]));
                    for (unsigned n = 2; n <= 8; ++n)
                        worst = std::max(
                            worst, std::abs(to_double(r.values[n - 1] - catalan(n - 1))));
                    return worst;
                });

    run.numeric("domain endpoints", "m_plus: two-point 1, boolean square sqrt(2), MP(a) 1", 1e-7,
                [&] {
                    double worst = std::abs(means_domain(bern, cfg).m_plus - 1.0);
                    worst = std::max(worst,
                                     std::abs(means_domain(bern2, cfg).m_plus - std::sqrt(2.0)));
                    worst = std::max(worst, std::abs(means_domain(mp1, cfg).m_plus - 1.0));
                    worst = std::max(worst, std::abs(means_domain(mp2, cfg).m_plus - 1.0));
                    return worst;
                });

    return run.report;
}

}  // namespace csk
