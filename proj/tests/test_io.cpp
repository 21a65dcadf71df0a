#include <csk/io.hpp>
#include <csk/measure.hpp>
#include <csk/variance.hpp>

#include <doctest.h>

using namespace csk;

TEST_CASE("real formatting is deterministic and round-trips through seventeen digits") {
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(-3.0) == "-3");
    double v = 2.0 / 3.0;
    CHECK(std::stod(format_real(v)) == v);
    CHECK(format_real(v) == format_real(v));
}

TEST_CASE("flexible rational parsing accepts fractions and decimal spellings") {
    CHECK(parse_rational_flexible("3/4") == Rational(3, 4));
    CHECK(parse_rational_flexible("-2") == Rational(-2));
    CHECK(parse_rational_flexible("0.5") == Rational(1, 2));
    CHECK(parse_rational_flexible("1e3") == Rational(1000));
    CHECK_THROWS_AS(parse_rational_flexible("0.5x"), validation_error);
    CHECK_THROWS_AS(parse_rational_flexible(""), validation_error);
}

TEST_CASE("tagged sequences round-trip through json") {
    TaggedSequence seq{SequenceKind::boolean_cumulants, {Rational(0), Rational(1, 3)}};
    Json j = sequence_to_json(seq);
    CHECK(j.at("kind") == "boolean");
    CHECK(j.at("values")[1] == "1/3");
    TaggedSequence back = sequence_from_json(j);
    CHECK(back.kind == seq.kind);
    CHECK(back.values == seq.values);

    CHECK_THROWS_AS(sequence_from_json(Json{{"kind", "weird"}, {"values", Json::array()}}),
                    validation_error);
    CHECK(sequence_kind_from_string("free") == SequenceKind::free_cumulants);
    CHECK(to_string(SequenceKind::moments) == "moments");
}

TEST_CASE("json sequences accept numbers as well as rational strings") {
    Json j{{"kind", "moments"}, {"values", Json::array({0, "1/2", 0.25})}};
    TaggedSequence seq = sequence_from_json(j);
    CHECK(seq.values == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1, 4)});
}

TEST_CASE("variance functions round-trip through json") {
    VarianceFunction v(Polynomial{1, Rational(2, 3), 1}, Rational(-1, 2));
    Json j = variance_to_json(v);
    VarianceFunction back = variance_from_json(j);
    CHECK(back == v);
    CHECK_THROWS_AS(variance_from_json(Json{{"poly", Json::array()}, {"m0", "0"}}),
                    validation_error);
}

TEST_CASE("measures round-trip through json") {
    Measure bern = Measure::bernoulli_symmetric();
    Measure back = measure_from_json(measure_to_json(bern), NumericConfig{});
    REQUIRE(back.atoms().size() == 2);
    CHECK(back.atoms()[0].location == -1.0);
    CHECK(back.atoms()[1].weight == 0.5);

    Measure mp = Measure::marchenko_pastur(2.0);
    Measure mp_back = measure_from_json(measure_to_json(mp), NumericConfig{});
    REQUIRE(mp_back.densities().size() == 1);
    CHECK(mp_back.densities()[0].kind() == DensityComponent::Kind::marchenko_pastur);
    CHECK(mp_back.densities()[0].mp_parameter() == 2.0);
    CHECK(mp_back.upper_bound() == mp.upper_bound());
}

TEST_CASE("measure parsing rejects weights that do not sum to one") {
    Json j{{"atoms", Json::array({Json{{"x", 0.0}, {"p", 0.4}}})}};
    CHECK_THROWS_AS(measure_from_json(j, NumericConfig{}), validation_error);
}
