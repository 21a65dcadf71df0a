#include <csk/cumulants.hpp>
#include <csk/rational.hpp>

#include <doctest.h>

#include <random>
#include <vector>

using namespace csk;

namespace {

std::vector<Rational> random_sequence(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    std::vector<Rational> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(num(rng), den(rng));
    return out;
}

bool has_crossing(const std::vector<int>& block) {
    const int n = static_cast<int>(block.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    if (block[a] == block[c] && block[b] == block[d] && block[a] != block[b])
                        return true;
    return false;
}

// sum over non-crossing partitions of {1..n} of the product of kappa_{|B|},
// enumerated through restricted growth strings
Rational nc_moment(const std::vector<Rational>& kappa, int n) {
    std::vector<int> block(n, 0);
    Rational total = 0;
    while (true) {
        if (!has_crossing(block)) {
            int nblocks = 0;
            for (int b : block) nblocks = std::max(nblocks, b + 1);
            std::vector<int> sizes(nblocks, 0);
            for (int b : block) ++sizes[b];
            Rational term = 1;
            for (int s : sizes) term *= kappa[s - 1];
            total += term;
        }
        int i = n - 1;
        for (; i > 0; --i) {
            int cap = 0;
            for (int j = 0; j < i; ++j) cap = std::max(cap, block[j]);
            if (block[i] <= cap) break;
        }
        if (i == 0) return total;
        ++block[i];
        for (int j = i + 1; j < n; ++j) block[j] = 0;
    }
}

}  // namespace

TEST_CASE("boolean cumulants of the symmetric two-point law vanish past order two") {
    MomentSequence bern{{0, 1, 0, 1, 0, 1}};
    BooleanCumulants r = moments_to_boolean(bern);
    CHECK(r.values == std::vector<Rational>{0, 1, 0, 0, 0, 0});
    CHECK(boolean_to_moments(r).values == bern.values);
}

TEST_CASE("free cumulants of the catalan moment sequence vanish past order two") {
    MomentSequence semi{{0, 1, 0, 2, 0, 5, 0, 14}};
    FreeCumulants k = moments_to_free(semi);
    CHECK(k.values == std::vector<Rational>{0, 1, 0, 0, 0, 0, 0, 0});
    CHECK(free_to_moments(k).values == semi.values);
}

TEST_CASE("catalan boolean cumulants transport to geometric free cumulants") {
    // the law with boolean cumulants (0, C_1, C_2, ...) has free cumulants
    // (0, 1, 2, 4, 8, ...)
    BooleanCumulants r{{0, 1, 2, 5, 14, 42}};
    MomentSequence m = boolean_to_moments(r);
    CHECK(m.values == std::vector<Rational>{0, 1, 2, 6, 18, 57});
    FreeCumulants k = moments_to_free(m);
    CHECK(k.values == std::vector<Rational>{0, 1, 2, 4, 8, 16});
}

TEST_CASE("moments match the non-crossing partition expansion of free cumulants") {
    std::mt19937 rng(405060);
    for (int trial = 0; trial < 6; ++trial) {
        MomentSequence m{random_sequence(rng, 6)};
        FreeCumulants k = moments_to_free(m);
        for (int n = 1; n <= 6; ++n) CHECK(nc_moment(k.values, n) == m.values[n - 1]);
    }
}

TEST_CASE("conversions are inverse bijections on random rational sequences") {
    std::mt19937 rng(918273);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> vals = random_sequence(rng, 10);
        MomentSequence m{vals};
        CHECK(boolean_to_moments(moments_to_boolean(m)).values == vals);
        CHECK(free_to_moments(moments_to_free(m)).values == vals);
    }
}

TEST_CASE("boolean power scales cumulants and matches the two-point square") {
    BooleanCumulants r{{0, 1, 0, 0, 0, 0}};
    BooleanCumulants r2 = boolean_power(r, Rational(2));
    CHECK(r2.values == std::vector<Rational>{0, 2, 0, 0, 0, 0});
    // atoms at +-sqrt(2) with weight 1/2: moments 0, 2, 0, 4, 0, 8
    CHECK(boolean_to_moments(r2).values == std::vector<Rational>{0, 2, 0, 4, 0, 8});
    CHECK_THROWS_AS(boolean_power(r, Rational(0)), validation_error);
}

TEST_CASE("free power scales cumulants and matches the dilated catalan law") {
    FreeCumulants k{{0, 1, 0, 0, 0, 0}};
    FreeCumulants k2 = free_power(k, Rational(2));
    // dilation by sqrt(2) of the catalan moment law: even moments scale by 2^{n/2}
    CHECK(free_to_moments(k2).values == std::vector<Rational>{0, 2, 0, 8, 0, 40});
}

TEST_CASE("the t-parameter bijection is a semigroup with inverse") {
    std::mt19937 rng(112358);
    for (int trial = 0; trial < 5; ++trial) {
        MomentSequence m{random_sequence(rng, 9)};
        Rational s(1, 2), t(3, 2);
        CHECK(bp_map(m, Rational(0)).values == m.values);
        CHECK(bp_map(bp_map(m, s), t).values == bp_map(m, s + t).values);
        CHECK(bp_inverse(bp_map(m, t), t).values == m.values);
    }
}

TEST_CASE("the unit-time bijection turns boolean cumulants into free ones") {
    std::mt19937 rng(654321);
    for (int trial = 0; trial < 5; ++trial) {
        MomentSequence m{random_sequence(rng, 8)};
        CHECK(moments_to_free(bp_map(m, Rational(1))).values == moments_to_boolean(m).values);
    }
}

TEST_CASE("hankel positivity accepts a moment sequence and rejects a fake") {
    std::vector<Rational> cat{1, 2, 5, 14, 42, 132, 429};
    HankelReport good = hankel_psd_check(cat, 4);
    CHECK(good.is_psd);
    REQUIRE(good.determinants.size() == 4);
    for (const Rational& d : good.determinants) CHECK(d >= 0);

    HankelReport bad = hankel_psd_check({1, 0, -1}, 2);
    CHECK_FALSE(bad.is_psd);
    CHECK(bad.determinants == std::vector<Rational>{1, -1});

    CHECK_THROWS_AS(hankel_psd_check({1, 2}, 3), validation_error);
}
