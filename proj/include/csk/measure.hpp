#pragma once

#include <csk/config.hpp>
#include <csk/polynomial.hpp>

#include <functional>
#include <string>
#include <vector>

namespace csk {

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

// One absolutely-continuous piece of a measure. Two kinds:
//  - marchenko_pastur(a): density sqrt(4 - (x-a)^2) / (2 pi (1 + a x)) on
//    (a-2, a+2), plus an embedded atom of weight 1 - 1/a^2 at -1/a when
//    a^2 > 1; `mass` scales the whole law.
//  - sqrt_weight: shape p(x) sqrt((upper-x)(x-lower)) / q(x) on
//    [lower, upper], normalized at construction to carry `mass` in total.
class DensityComponent {
  public:
    enum class Kind { marchenko_pastur, sqrt_weight };

    static DensityComponent marchenko_pastur(double a, double mass = 1.0);
    static DensityComponent sqrt_weight(double lower, double upper, Polynomial p, Polynomial q,
                                        double mass = 1.0, const NumericConfig& cfg = {});

    Kind kind() const { return kind_; }
    double mass() const { return mass_; }
    double mp_parameter() const { return mp_a_; }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    const Polynomial& shape_num() const { return p_; }
    const Polynomial& shape_den() const { return q_; }

    double support_upper() const;
    // continuous density mass (excludes any embedded atom)
    double continuous_mass() const;
    std::vector<Atom> embedded_atoms() const;
    // g(x) with density(x) = g(x) sqrt((upper-x)(x-lower))
    double smooth_factor(double x) const;

  private:
    DensityComponent() = default;
    Kind kind_ = Kind::sqrt_weight;
    double mass_ = 1.0;
    double mp_a_ = 0.0;
    double lower_ = 0.0, upper_ = 0.0;
    Polynomial p_, q_;
    double norm_ = 1.0;  // sqrt_weight normalization so the density carries mass_
};

// A probability measure with support bounded from above: finitely many atoms
// plus named density components. Immutable after construction.
class Measure {
  public:
    static Measure from_atoms(std::vector<Atom> atoms);
    static Measure with_components(std::vector<Atom> atoms, std::vector<DensityComponent> densities);
    static Measure point_mass(double c);
    static Measure bernoulli_symmetric();  // (delta_{-1} + delta_{+1}) / 2
    static Measure marchenko_pastur(double a);
    static Measure semicircle_standard();

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensityComponent>& densities() const { return densities_; }
    double upper_bound() const { return upper_bound_; }
    bool purely_atomic() const { return densities_.empty(); }
    bool degenerate() const { return densities_.empty() && atoms_.size() == 1; }

    // integral of f against the measure; densities by adaptive
    // Gauss-Chebyshev (second kind) node doubling
    double integrate(const std::function<double(double)>& f, const NumericConfig& cfg = {}) const;

    double mean(const NumericConfig& cfg = {}) const;

  private:
    Measure() = default;
    std::vector<Atom> atoms_;
    std::vector<DensityComponent> densities_;
    double upper_bound_ = 0.0;
};

// G(z) = integral of 1/(z - x); requires z > sup supp.
double cauchy_transform(const Measure& nu, double z, const NumericConfig& cfg = {});

// K(z) = z - 1/G(z); strictly decreasing on (sup supp, infinity).
double k_transform(const Measure& nu, double z, const NumericConfig& cfg = {});

struct TransformGrid {
    std::vector<double> z;
    std::vector<double> g_values;
    std::vector<double> k_values;
};

// Evaluates G and K on an ascending grid of points above the support and
// checks the strict monotonicity of K.
TransformGrid transform_grid(const Measure& nu, std::vector<double> points,
                             const NumericConfig& cfg = {});

struct MeansDomain {
    double m0 = 0.0;      // mean (lower end of the domain of means)
    double m_plus = 0.0;  // B - lim_{z -> B+} 1/G(z)
    double B = 0.0;       // max(0, sup supp)
    bool degenerate = false;
    bool mean_finite = true;
};

MeansDomain means_domain(const Measure& nu, const NumericConfig& cfg = {});

// Pseudo-variance at mean parameter m: bisection solves K(z) = m for z above
// the support (K is strictly decreasing there), then pvar(m) = m (z - m).
// Bracket failure doubles as the domain-of-means check. For m = 0 (possible
// only when the mean is negative) pvar(0) = 0 identically, so the
// variance-function limit z0 (0 - m0) with K(z0) = 0 is returned instead.
double pseudo_variance_numeric(const Measure& nu, double m, const NumericConfig& cfg = {});

// Density of the family member with mean m relative to nu at x, equal to
// pvar(m) / (pvar(m) + m (m - x)). Evaluated as (z(m) - m)/(z(m) - x) with
// z(m) = m + pvar(m)/m, which also covers both m = 0 branches: for mean zero
// the member at m = 0 is nu itself (z -> infinity), otherwise z(0) solves
// K(z) = 0.
double csk_member_density(const Measure& nu, double m, double x, const NumericConfig& cfg = {});

// Boolean convolution power of a purely atomic measure: the K-transform is
// rational, the result's atoms are the real roots of a degree-k polynomial
// and the weights are residues of the resulting Cauchy transform. Exact
// root isolation on rational coefficients.
Measure boolean_power_atomic(const Measure& nu, double alpha);

struct BooleanPowerVfRow {
    double m = 0.0;
    double measured = 0.0;   // pseudo-variance of the convolved measure at m
    double predicted = 0.0;  // alpha pvar(m/alpha) + m^2 (1/alpha - 1)
    double deviation = 0.0;
};

struct BooleanPowerVfReport {
    double alpha = 0.0;
    std::vector<BooleanPowerVfRow> rows;
    double max_deviation = 0.0;
};

// Compares two independent numeric routes to the pseudo-variance of the
// boolean power: direct inversion on the convolved measure vs the transform
// formula applied to pseudo-variances measured on nu itself.
BooleanPowerVfReport verify_boolean_power_vf(const Measure& nu, double alpha,
                                             const std::vector<double>& m_grid,
                                             const NumericConfig& cfg = {});

// Raw moments m_1..m_n by exact atom sums plus quadrature.
std::vector<double> raw_moments(const Measure& nu, unsigned n, const NumericConfig& cfg = {});

}  // namespace csk
