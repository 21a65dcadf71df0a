#include <csk/polynomial.hpp>
#include <csk/rational.hpp>
#include <csk/root_isolation.hpp>
#include <csk/series.hpp>

#include <doctest.h>

#include <random>

using namespace csk;

TEST_CASE("rational parsing accepts integers, fractions and surrounding blanks") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-12") == Rational(-12));
    CHECK(parse_rational("  7/2\t") == Rational(7, 2));
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), validation_error);
    CHECK_THROWS_AS(parse_rational("two"), validation_error);
    CHECK_THROWS_AS(parse_rational(""), validation_error);
}

TEST_CASE("doubles convert to the exact dyadic rational they store") {
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK(rational_from_double(-3.0) == Rational(-3));
    // 0.1 is not a dyadic rational; the stored double is this fraction exactly
    CHECK(rational_from_double(0.1) ==
          Rational(Integer("3602879701896397"), Integer("36028797018963968")));
    CHECK(to_double(rational_from_double(1e300)) == 1e300);
    CHECK_THROWS_AS(rational_from_double(std::numeric_limits<double>::infinity()),
                    validation_error);
}

TEST_CASE("binomial coefficients satisfy the Pascal recurrence") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 7) == 0);
    CHECK(factorial(6) == 720);
    for (unsigned n = 1; n <= 12; ++n)
        for (unsigned k = 1; k <= n; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("polynomial arithmetic expands products correctly") {
    Polynomial p{1, 1};   // 1 + m
    Polynomial q{1, -1};  // 1 - m
    CHECK(p * q == Polynomial{1, 0, -1});
    CHECK(p.pow(2) * q == Polynomial{1, 1, -1, -1});
    CHECK(p + q == Polynomial{2});
    CHECK(p - p == Polynomial{});
    CHECK((p * q).degree() == 2);
    CHECK(Polynomial{}.degree() == -1);
    CHECK(Rational(3) * p == Polynomial{3, 3});
    CHECK((-p)(Rational(2)) == -3);
}

TEST_CASE("euclidean division reconstructs the dividend") {
    Polynomial a{2, -3, 0, 1, 5};
    Polynomial b{1, 0, 7};
    Polynomial q, r;
    Polynomial::divmod(a, b, q, r);
    CHECK(b * q + r == a);
    CHECK(r.degree() < b.degree());
    CHECK_THROWS_AS(Polynomial::divmod(a, Polynomial{}, q, r), validation_error);
}

TEST_CASE("gcd of polynomials with a shared factor recovers it up to scale") {
    Polynomial shared{-2, 1, 1};        // (m-1)(m+2)
    Polynomial a = shared * Polynomial{1, 1};
    Polynomial b = shared * Polynomial{5, 0, 3};
    Polynomial g = gcd(a, b);
    CHECK(g.degree() == 2);
    CHECK(g.monic() == shared.monic());
}

TEST_CASE("affine composition evaluates as substitution") {
    Polynomial p{1, -2, 0, 4};
    Rational s(3, 2), t(-1, 3);
    Polynomial c = p.compose_affine(s, t);
    for (int i = -3; i <= 3; ++i) {
        Rational m(i, 2);
        CHECK(c(m) == p(s * m + t));
    }
    Polynomial d = p.scale_argument_inverse(Rational(5));
    for (int i = -2; i <= 2; ++i) CHECK(d(Rational(5 * i)) == p(Rational(i)));
}

TEST_CASE("derivatives of powers match repeated symbolic differentiation") {
    std::mt19937 rng(611953);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Rational> cs;
        for (int i = 0; i <= 3; ++i) cs.emplace_back(num(rng), den(rng));
        Polynomial base(cs);
        for (unsigned n = 1; n <= 4; ++n) {
            Polynomial ref = base.pow(n);
            for (unsigned k = 0; k <= 5; ++k) {
                for (Rational at : {Rational(0), Rational(-1), Rational(1, 2)})
                    CHECK(derivative_of_power(base, n, k, at) == ref(at));
                ref = ref.derivative();
            }
        }
    }
}

TEST_CASE("series reciprocal of the geometric generating function") {
    // 1/(1 - m) has all coefficients 1
    TruncatedSeries one_minus(SeriesVar::mean, 8);
    one_minus.set_coeff(0, 1);
    one_minus.set_coeff(1, -1);
    TruncatedSeries inv = reciprocal(one_minus);
    for (unsigned i = 0; i <= 8; ++i) CHECK(inv.coeff(i) == 1);
    CHECK((inv * one_minus).coeff(0) == 1);
    for (unsigned i = 1; i <= 8; ++i) CHECK((inv * one_minus).coeff(i) == 0);
}

TEST_CASE("series reversion of m - m^2 generates the Catalan numbers") {
    TruncatedSeries f(SeriesVar::mean, 8);
    f.set_coeff(1, 1);
    f.set_coeff(2, -1);
    TruncatedSeries g = reversion(f);
    // g(t) = sum C_{n-1} t^n
    std::vector<Rational> catalan{0, 1, 1, 2, 5, 14, 42, 132, 429};
    for (unsigned i = 0; i <= 8; ++i) CHECK(g.coeff(i) == catalan[i]);
    TruncatedSeries id = compose(g, f);
    CHECK(id.coeff(1) == 1);
    for (unsigned i = 2; i <= 8; ++i) CHECK(id.coeff(i) == 0);
}

TEST_CASE("series composition refuses a nonzero inner constant term") {
    TruncatedSeries outer(SeriesVar::mean, {1, 1, 1});
    TruncatedSeries inner(SeriesVar::mean, {1, 1});
    CHECK_THROWS_AS(compose(outer, inner), validation_error);
}

TEST_CASE("square-free part strips repeated factors") {
    Polynomial p = Polynomial{-1, 1}.pow(2) * Polynomial{2, 1};  // (m-1)^2 (m+2)
    Polynomial sf = squarefree_part(p).monic();
    CHECK(sf == (Polynomial{-1, 1} * Polynomial{2, 1}).monic());
}

TEST_CASE("root isolation finds simple rational and irrational roots") {
    // (m + 2)(3m - 1)(m - 5), roots -2, 1/3, 5
    Polynomial p = Polynomial{2, 1} * Polynomial{-1, 3} * Polynomial{-5, 1};
    Rational width(1, 1000000);
    std::vector<Rational> roots = isolate_real_roots(p, width);
    REQUIRE(roots.size() == 3);
    CHECK(abs(roots[0] - Rational(-2)) <= width);
    CHECK(abs(roots[1] - Rational(1, 3)) <= width);
    CHECK(abs(roots[2] - Rational(5)) <= width);

    // m^2 - 2: irrational pair, isolated to the requested width
    std::vector<Rational> sqrt2 = isolate_real_roots(Polynomial{-2, 0, 1}, width);
    REQUIRE(sqrt2.size() == 2);
    CHECK(to_double(sqrt2[1]) == doctest::Approx(1.4142135623730951).epsilon(1e-6));
    CHECK(sqrt2[0] == -sqrt2[1]);
}

TEST_CASE("root isolation separates a tight cluster and ignores complex pairs") {
    // roots at 1/1000 and 2/1000, plus an irreducible quadratic factor
    Polynomial tight = Polynomial{Rational(-1, 1000), Rational(1)} *
                       Polynomial{Rational(-2, 1000), Rational(1)} * Polynomial{1, 0, 1};
    std::vector<Rational> roots = isolate_real_roots(tight, Rational(1, 100000));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] < roots[1]);
    CHECK(abs(roots[0] - Rational(1, 1000)) <= Rational(1, 100000));
    CHECK(abs(roots[1] - Rational(2, 1000)) <= Rational(1, 100000));
}

TEST_CASE("sturm variation count brackets each root exactly once") {
    Polynomial p = Polynomial{-2, 0, 1} * Polynomial{-3, 1};  // roots -sqrt2, sqrt2, 3
    SturmChain chain(p);
    CHECK(chain.variations(Rational(-10)) - chain.variations(Rational(0)) == 1);
    CHECK(chain.variations(Rational(0)) - chain.variations(Rational(2)) == 1);
    CHECK(chain.variations(Rational(2)) - chain.variations(Rational(10)) == 1);
}
