#include <csk/measure.hpp>

#include <csk/rational.hpp>
#include <csk/root_isolation.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace csk {

namespace {

// quadrature node with edge distances computed in cancellation-free form:
// from_upper = 2h sin^2(theta/2), from_lower = 2h cos^2(theta/2)
struct QuadNode {
    double x;
    double from_upper;
    double from_lower;
};

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// 1 + a x at x = a + 2 cos(theta), as a sum of nonnegative terms
double mp_kernel_denominator(double a, double sin_half_sq, double cos_half_sq) {
    if (a >= 0.0) return (a - 1.0) * (a - 1.0) + 4.0 * a * cos_half_sq;
    return (a + 1.0) * (a + 1.0) - 4.0 * a * sin_half_sq;
}

// one Gauss-Chebyshev (second kind) pass with n interior nodes:
//   integral over [lo,up] of f(x) g(x) sqrt((up-x)(x-lo)) dx
double gc2_pass(const DensityComponent& comp, unsigned n,
                const std::function<double(const QuadNode&)>& f) {
    const double lo = comp.lower(), up = comp.upper();
    const double c = 0.5 * (lo + up), h = 0.5 * (up - lo);
    const double step = std::numbers::pi / (n + 1);
    const bool mp = comp.kind() == DensityComponent::Kind::marchenko_pastur;
    // the kernel density integrates to min(1, 1/a^2) by itself, so the whole
    // law's mass is the right scale here
    const double mp_scale = comp.mass() / (2.0 * std::numbers::pi);

    KahanSum acc;
    // theta-space trapezoid endpoints: sin^2 kills them unless the kernel
    // pole of the marchenko_pastur weight sits exactly on a support edge
    // (|a| = 1), where sin^2(theta) g(x(theta)) tends to mass/(2 pi) instead
    if (mp && comp.mp_parameter() == 1.0) {
        QuadNode edge{lo, up - lo, 0.0};
        acc.add(h * h * step * 0.5 * mp_scale * f(edge));
    } else if (mp && comp.mp_parameter() == -1.0) {
        QuadNode edge{up, 0.0, up - lo};
        acc.add(h * h * step * 0.5 * mp_scale * f(edge));
    }
    for (unsigned i = 1; i <= n; ++i) {
        const double theta = i * step;
        const double sh = std::sin(0.5 * theta), ch = std::cos(0.5 * theta);
        const double sin_half_sq = sh * sh, cos_half_sq = ch * ch;
        const double s = std::sin(theta);
        QuadNode node;
        node.from_upper = 2.0 * h * sin_half_sq;
        node.from_lower = 2.0 * h * cos_half_sq;
        node.x = c + h * (cos_half_sq - sin_half_sq);
        double g;
        if (mp) {
            g = mp_scale / mp_kernel_denominator(comp.mp_parameter(), sin_half_sq, cos_half_sq);
        } else {
            g = comp.smooth_factor(node.x);
        }
        acc.add(h * h * step * s * s * g * f(node));
    }
    return acc.s;
}

// node-doubling driver; converges spectrally for integrands smooth up to the
// sqrt edge factor
double gc2_adaptive(const DensityComponent& comp, const std::function<double(const QuadNode&)>& f,
                    const NumericConfig& cfg) {
    unsigned n = static_cast<unsigned>(cfg.quad_nodes);
    double prev = gc2_pass(comp, n, f);
    for (int d = 0; d < cfg.quad_max_doublings; ++d) {
        n *= 2;
        double cur = gc2_pass(comp, n, f);
        if (std::abs(cur - prev) <= cfg.quad_refine_tol * std::max(1.0, std::abs(cur)))
            return cur;
        prev = cur;
    }
    throw numeric_error("quadrature did not converge after node doubling cap");
}

double integrate_with_nodes(const Measure& nu, const std::function<double(double)>& atom_f,
                            const std::function<double(const DensityComponent&, const QuadNode&)>& density_f,
                            const NumericConfig& cfg) {
    KahanSum acc;
    for (const Atom& a : nu.atoms()) acc.add(a.weight * atom_f(a.location));
    for (const DensityComponent& comp : nu.densities()) {
        for (const Atom& a : comp.embedded_atoms()) acc.add(a.weight * atom_f(a.location));
        acc.add(gc2_adaptive(comp, [&](const QuadNode& node) { return density_f(comp, node); }, cfg));
    }
    return acc.s;
}

}  // namespace

DensityComponent DensityComponent::marchenko_pastur(double a, double mass) {
    if (!std::isfinite(a)) throw validation_error("marchenko_pastur parameter must be finite");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw validation_error("density component mass must be positive");
    DensityComponent comp;
    comp.kind_ = Kind::marchenko_pastur;
    comp.mass_ = mass;
    comp.mp_a_ = a;
    comp.lower_ = a - 2.0;
    comp.upper_ = a + 2.0;
    return comp;
}

DensityComponent DensityComponent::sqrt_weight(double lower, double upper, Polynomial p, Polynomial q,
                                               double mass, const NumericConfig& cfg) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
        throw validation_error("sqrt_weight requires finite lower < upper");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw validation_error("density component mass must be positive");
    if (q.degree() < 0) throw validation_error("sqrt_weight denominator is identically zero");
    DensityComponent comp;
    comp.kind_ = Kind::sqrt_weight;
    comp.mass_ = mass;
    comp.lower_ = lower;
    comp.upper_ = upper;
    comp.p_ = std::move(p);
    comp.q_ = std::move(q);
    comp.norm_ = 1.0;

    // sampled screening: q root-free and the shape nonnegative on [lower, upper]
    const int samples = 257;
    double q0 = comp.q_.eval_double(lower);
    for (int i = 0; i <= samples; ++i) {
        double x = lower + (upper - lower) * i / samples;
        double qv = comp.q_.eval_double(x);
        if (qv == 0.0 || (qv > 0.0) != (q0 > 0.0))
            throw validation_error("sqrt_weight denominator vanishes inside the support");
        if (comp.p_.eval_double(x) / qv < -1e-12)
            throw validation_error("sqrt_weight shape is negative inside the support");
    }

    double z = gc2_adaptive(comp, [](const QuadNode&) { return 1.0; }, cfg);
    if (!(z > 0.0) || !std::isfinite(z))
        throw validation_error("sqrt_weight shape has nonpositive total mass");
    comp.norm_ = mass / z;
    return comp;
}

double DensityComponent::support_upper() const {
    double b = upper_;
    for (const Atom& a : embedded_atoms()) b = std::max(b, a.location);
    return b;
}

double DensityComponent::continuous_mass() const {
    if (kind_ == Kind::marchenko_pastur && mp_a_ * mp_a_ > 1.0)
        return mass_ / (mp_a_ * mp_a_);
    return mass_;
}

std::vector<Atom> DensityComponent::embedded_atoms() const {
    if (kind_ == Kind::marchenko_pastur && mp_a_ * mp_a_ > 1.0)
        return {Atom{-1.0 / mp_a_, mass_ * (1.0 - 1.0 / (mp_a_ * mp_a_))}};
    return {};
}

double DensityComponent::smooth_factor(double x) const {
    if (kind_ == Kind::marchenko_pastur)
        return mass_ / (2.0 * std::numbers::pi * (1.0 + mp_a_ * x));
    return norm_ * p_.eval_double(x) / q_.eval_double(x);
}

Measure Measure::with_components(std::vector<Atom> atoms, std::vector<DensityComponent> densities) {
    if (atoms.empty() && densities.empty()) throw validation_error("measure has no atoms and no densities");
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.location)) throw validation_error("atom location must be finite");
        if (!(a.weight > 0.0)) throw validation_error("atom weights must be positive");
        total += a.weight;
    }
    for (const DensityComponent& comp : densities) total += comp.mass();
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "measure mass " << total << " differs from 1 beyond 1e-12";
        throw validation_error(os.str());
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    std::vector<Atom> merged;
    for (const Atom& a : atoms) {
        if (!merged.empty() && merged.back().location == a.location)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    Measure nu;
    nu.atoms_ = std::move(merged);
    nu.densities_ = std::move(densities);
    double b = -std::numeric_limits<double>::infinity();
    for (const Atom& a : nu.atoms_) b = std::max(b, a.location);
    for (const DensityComponent& comp : nu.densities_) b = std::max(b, comp.support_upper());
    nu.upper_bound_ = b;
    return nu;
}

Measure Measure::from_atoms(std::vector<Atom> atoms) { return with_components(std::move(atoms), {}); }

Measure Measure::point_mass(double c) { return from_atoms({Atom{c, 1.0}}); }

Measure Measure::bernoulli_symmetric() { return from_atoms({Atom{-1.0, 0.5}, Atom{1.0, 0.5}}); }

Measure Measure::marchenko_pastur(double a) {
    return with_components({}, {DensityComponent::marchenko_pastur(a, 1.0)});
}

Measure Measure::semicircle_standard() {
    return with_components(
        {}, {DensityComponent::sqrt_weight(-2.0, 2.0, Polynomial{Rational(1)}, Polynomial{Rational(1)})});
}

double Measure::integrate(const std::function<double(double)>& f, const NumericConfig& cfg) const {
    return integrate_with_nodes(
        *this, f, [&](const DensityComponent&, const QuadNode& node) { return f(node.x); }, cfg);
}

double Measure::mean(const NumericConfig& cfg) const {
    return integrate([](double x) { return x; }, cfg);
}

double cauchy_transform(const Measure& nu, double z, const NumericConfig& cfg) {
    if (!std::isfinite(z)) throw validation_error("cauchy_transform requires finite z");
    if (!(z > nu.upper_bound())) {
        std::ostringstream os;
        os << "cauchy_transform requires z > sup supp = " << nu.upper_bound() << ", got z = " << z;
        throw validation_error(os.str());
    }
    // z - x evaluated through the node's distance to the component's upper
    // edge, so points z just above the support keep full relative accuracy
    return integrate_with_nodes(
        nu, [&](double x) { return 1.0 / (z - x); },
        [&](const DensityComponent& comp, const QuadNode& node) {
            return 1.0 / ((z - comp.upper()) + node.from_upper);
        },
        cfg);
}

double k_transform(const Measure& nu, double z, const NumericConfig& cfg) {
    double g = cauchy_transform(nu, z, cfg);
    if (!(g > 0.0)) throw numeric_error("cauchy transform evaluated nonpositive above the support");
    return z - 1.0 / g;
}

TransformGrid transform_grid(const Measure& nu, std::vector<double> points, const NumericConfig& cfg) {
    if (points.empty()) throw validation_error("transform grid needs at least one point");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i - 1] < points[i]))
            throw validation_error("transform grid points must be strictly ascending");
    TransformGrid grid;
    grid.z = std::move(points);
    grid.g_values.reserve(grid.z.size());
    grid.k_values.reserve(grid.z.size());
    for (double z : grid.z) {
        double g = cauchy_transform(nu, z, cfg);
        grid.g_values.push_back(g);
        grid.k_values.push_back(z - 1.0 / g);
    }
    for (std::size_t i = 1; i < grid.k_values.size(); ++i)
        if (!(grid.k_values[i] < grid.k_values[i - 1]))
            throw numeric_error("self-energy failed to decrease strictly along the grid");
    return grid;
}

MeansDomain means_domain(const Measure& nu, const NumericConfig& cfg) {
    MeansDomain dom;
    dom.B = std::max(0.0, nu.upper_bound());
    if (nu.degenerate()) {
        dom.m0 = dom.m_plus = nu.atoms().front().location;
        dom.degenerate = true;
        return dom;
    }
    dom.m0 = nu.mean(cfg);

    // limit of B - 1/G(B + eps) as eps -> 0+, extrapolated by a Neville
    // tableau in t = sqrt(eps); sqrt-edge densities expand in powers of t,
    // atomic tops in powers of t^2, and both are plain polynomials in t
    std::vector<double> ts, diag_prev;
    double best_prev2 = 0.0, best_prev = 0.0;
    unsigned rows = 0;
    for (int j = 1; j <= cfg.extrap_max_levels; ++j) {
        double eps = std::ldexp(1.0, -j);
        double f;
        try {
            f = dom.B - 1.0 / cauchy_transform(nu, dom.B + eps, cfg);
        } catch (const numeric_error&) {
            break;  // quadrature exhausted this close to the edge
        }
        double t = std::sqrt(eps);
        std::vector<double> diag(rows + 1);
        diag[0] = f;
        for (unsigned k = 1; k <= rows; ++k) {
            double t_old = ts[rows - k];
            diag[k] = (t_old * diag[k - 1] - t * diag_prev[k - 1]) / (t_old - t);
        }
        ts.push_back(t);
        double best = diag[rows];
        diag_prev = std::move(diag);
        ++rows;
        if (rows >= 3 && std::abs(best - best_prev) <= cfg.extrap_tol &&
            std::abs(best_prev - best_prev2) <= cfg.extrap_tol) {
            dom.m_plus = best;
            if (!(dom.m0 < dom.m_plus))
                throw numeric_error("means domain came out empty: m0 >= m_plus");
            return dom;
        }
        best_prev2 = best_prev;
        best_prev = best;
    }
    throw numeric_error("m_plus extrapolation did not stabilize to tolerance");
}

namespace {

// solve K(z) = m for z above the support; strict monotonicity of K makes
// bracket failure equivalent to m falling outside the domain of means
double invert_k_transform(const Measure& nu, double m, const NumericConfig& cfg) {
    const double B = std::max(0.0, nu.upper_bound());
    double z_lo = 0.0, z_hi = 0.0;
    bool have_lo = false, have_hi = false;
    for (int j = 1; j <= cfg.extrap_max_levels && !have_lo; ++j) {
        double z = B + std::ldexp(1.0, -j);
        try {
            if (k_transform(nu, z, cfg) > m) {
                z_lo = z;
                have_lo = true;
            }
        } catch (const numeric_error&) {
            break;
        }
    }
    if (!have_lo)
        throw validation_error("mean parameter at or above the upper end of the domain of means");
    for (int j = 0; j <= cfg.extrap_max_levels && !have_hi; ++j) {
        double z = B + std::ldexp(1.0, j);
        if (k_transform(nu, z, cfg) < m) {
            z_hi = z;
            have_hi = true;
        }
    }
    if (!have_hi) throw validation_error("mean parameter at or below the mean of the measure");

    double best_z = z_lo, best_res = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
        double zm = 0.5 * (z_lo + z_hi);
        if (!(z_lo < zm && zm < z_hi)) break;
        double res = k_transform(nu, zm, cfg) - m;
        if (std::abs(res) < best_res) {
            best_res = std::abs(res);
            best_z = zm;
        }
        if (std::abs(res) <= cfg.bisect_tol) return zm;
        if (res > 0.0)
            z_lo = zm;
        else
            z_hi = zm;
    }
    if (best_res <= cfg.bisect_tol) return best_z;
    throw numeric_error("mean inversion bisection stalled above tolerance");
}

}  // namespace

double pseudo_variance_numeric(const Measure& nu, double m, const NumericConfig& cfg) {
    if (!std::isfinite(m)) throw validation_error("mean parameter must be finite");
    if (nu.degenerate()) throw validation_error("degenerate measure generates no family");
    if (m == 0.0) {
        double m0 = nu.mean(cfg);
        if (!(m0 < 0.0))
            throw validation_error("m = 0 needs a negative mean; at mean zero the pseudo-variance vanishes identically");
        double z0 = invert_k_transform(nu, 0.0, cfg);
        return z0 * (0.0 - m0);  // variance-function limit, pvar(0) itself is 0
    }
    double z = invert_k_transform(nu, m, cfg);
    return m * (z - m);
}

double csk_member_density(const Measure& nu, double m, double x, const NumericConfig& cfg) {
    if (!std::isfinite(m) || !std::isfinite(x))
        throw validation_error("member density needs finite m and x");
    if (nu.degenerate()) throw validation_error("degenerate measure generates no family");
    bool in_support = false;
    for (const Atom& a : nu.atoms()) in_support = in_support || x == a.location;
    for (const DensityComponent& comp : nu.densities()) {
        in_support = in_support || (comp.lower() <= x && x <= comp.upper());
        for (const Atom& a : comp.embedded_atoms()) in_support = in_support || x == a.location;
    }
    if (!in_support) throw validation_error("x lies outside the support of the generating measure");

    if (m == 0.0) {
        double m0 = nu.mean(cfg);
        if (std::abs(m0) <= 1e-9) return 1.0;  // the member at the mean is nu itself
        if (m0 > 0.0) throw validation_error("m = 0 lies below the domain of means");
        double z0 = invert_k_transform(nu, 0.0, cfg);
        return z0 / (z0 - x);
    }
    double z = invert_k_transform(nu, m, cfg);
    return (z - m) / (z - x);
}

Measure boolean_power_atomic(const Measure& nu, double alpha) {
    if (!nu.purely_atomic())
        throw validation_error("boolean power via pole analysis needs a purely atomic measure");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw validation_error("boolean convolution power requires alpha > 0");
    if (alpha == 1.0) return nu;

    const std::vector<Atom>& atoms = nu.atoms();
    const std::size_t k = atoms.size();
    std::vector<Rational> xs, ws;
    for (const Atom& a : atoms) {
        xs.push_back(rational_from_double(a.location));
        ws.push_back(rational_from_double(a.weight));
    }
    // G = A/B with B = prod (z - x_i); K scales by alpha, so the new Cauchy
    // transform is A / D with D = (1-alpha) z A + alpha B, monic of degree k
    Polynomial B{Rational(1)};
    for (const Rational& x : xs) B = B * Polynomial{-x, Rational(1)};
    Polynomial A;
    for (std::size_t i = 0; i < k; ++i) {
        Polynomial term{ws[i]};
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) term = term * Polynomial{-xs[j], Rational(1)};
        A = A + term;
    }
    Rational aq = rational_from_double(alpha);
    Polynomial z_poly{Rational(0), Rational(1)};
    Polynomial D = (Rational(1) - aq) * (z_poly * A) + aq * B;
    if (D.degree() != static_cast<int>(k))
        throw numeric_error("pole-shift polynomial degenerated; atom data inconsistent");

    Polynomial Dsf = squarefree_part(D);
    if (Dsf.degree() != static_cast<int>(k))
        throw numeric_error("boolean power produced a repeated pole; this signals an internal defect");
    double bound = to_double(cauchy_root_bound(Dsf));
    Rational width = rational_from_double(std::ldexp(std::max(1.0, bound), -56));
    std::vector<Rational> roots = isolate_real_roots(Dsf, width);
    if (roots.size() != k)
        throw numeric_error("boolean power lost a real pole; this signals an internal defect");

    Polynomial Dp = D.derivative();
    std::vector<Atom> result;
    result.reserve(k);
    for (const Rational& r : roots) {
        Rational weight = A(r) / Dp(r);
        result.push_back(Atom{to_double(r), to_double(weight)});
    }
    return Measure::from_atoms(std::move(result));
}

BooleanPowerVfReport verify_boolean_power_vf(const Measure& nu, double alpha,
                                             const std::vector<double>& m_grid,
                                             const NumericConfig& cfg) {
    if (m_grid.empty()) throw validation_error("verification grid is empty");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw validation_error("boolean convolution power requires alpha > 0");
    Measure mu = boolean_power_atomic(nu, alpha);
    BooleanPowerVfReport report;
    report.alpha = alpha;
    for (double m : m_grid) {
        BooleanPowerVfRow row;
        row.m = m;
        row.measured = pseudo_variance_numeric(mu, m, cfg);
        row.predicted =
            alpha * pseudo_variance_numeric(nu, m / alpha, cfg) + m * m * (1.0 / alpha - 1.0);
        row.deviation = std::abs(row.measured - row.predicted);
        report.max_deviation = std::max(report.max_deviation, row.deviation);
        report.rows.push_back(row);
    }
    return report;
}

std::vector<double> raw_moments(const Measure& nu, unsigned n, const NumericConfig& cfg) {
    if (n == 0) throw validation_error("raw_moments needs n >= 1");
    std::vector<double> out;
    out.reserve(n);
    for (unsigned j = 1; j <= n; ++j) {
        out.push_back(nu.integrate(
            [j](double x) {
                double p = 1.0;
                for (unsigned i = 0; i < j; ++i) p *= x;
                return p;
            },
            cfg));
    }
    return out;
}

}  // namespace csk
