#pragma once

#include <csk/cumulants.hpp>
#include <csk/measure.hpp>
#include <csk/variance.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace csk {

using Json = nlohmann::json;

// 17 significant digits, the CSV/text convention for reals. JSON carries
// reals as plain numbers (shortest exact round-trip).
std::string format_real(double x);

// "p/q" and integer literals take the exact path; decimal or exponent
// literals go through the (exact) binary value of the double.
Rational parse_rational_flexible(const std::string& text);

enum class SequenceKind { moments, boolean_cumulants, free_cumulants };

std::string to_string(SequenceKind kind);
SequenceKind sequence_kind_from_string(const std::string& text);

struct TaggedSequence {
    SequenceKind kind = SequenceKind::moments;
    std::vector<Rational> values;
};

Json sequence_to_json(const TaggedSequence& seq);
TaggedSequence sequence_from_json(const Json& j);

Rational rational_from_json(const Json& j);
std::vector<Rational> rationals_from_json(const Json& j);
Json rationals_to_json(const std::vector<Rational>& values);

// {"atoms": [{"x": ..., "p": ...}], "densities": [{"kind": ...}, ...]}
Json measure_to_json(const Measure& nu);
Measure measure_from_json(const Json& j, const NumericConfig& cfg = {});

// {"poly": ["p/q", ...], "m0": "p/q"}
Json variance_to_json(const VarianceFunction& v);
VarianceFunction variance_from_json(const Json& j);

}  // namespace csk
