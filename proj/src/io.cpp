#include <csk/io.hpp>

#include <cstdio>
#include <stdexcept>

namespace csk {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Rational parse_rational_flexible(const std::string& text) {
    if (text.find_first_of(".eE") == std::string::npos) return parse_rational(text);
    // allow exponents inside an integer-looking token like "1e3"? No: any
    // decimal form is read as its exact double value
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw validation_error("cannot parse '" + text + "' as a number");
    }
    if (pos != text.size()) throw validation_error("cannot parse '" + text + "' as a number");
    return rational_from_double(v);
}

std::string to_string(SequenceKind kind) {
    switch (kind) {
        case SequenceKind::moments: return "moments";
        case SequenceKind::boolean_cumulants: return "boolean";
        case SequenceKind::free_cumulants: return "free";
    }
    throw validation_error("unknown sequence kind");
}

SequenceKind sequence_kind_from_string(const std::string& text) {
    if (text == "moments") return SequenceKind::moments;
    if (text == "boolean") return SequenceKind::boolean_cumulants;
    if (text == "free") return SequenceKind::free_cumulants;
    throw validation_error("sequence kind must be moments, boolean or free; got '" + text + "'");
}

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational_flexible(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
    if (j.is_number_float()) return rational_from_double(j.get<double>());
    throw validation_error("expected a rational as \"p/q\" string or a number");
}

std::vector<Rational> rationals_from_json(const Json& j) {
    if (!j.is_array()) throw validation_error("expected an array of rationals");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const Json& e : j) out.push_back(rational_from_json(e));
    return out;
}

Json rationals_to_json(const std::vector<Rational>& values) {
    Json arr = Json::array();
    for (const Rational& v : values) arr.push_back(to_string(v));
    return arr;
}

Json sequence_to_json(const TaggedSequence& seq) {
    return Json{{"kind", to_string(seq.kind)}, {"values", rationals_to_json(seq.values)}};
}

TaggedSequence sequence_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("values"))
        throw validation_error("sequence JSON needs \"kind\" and \"values\"");
    TaggedSequence seq;
    seq.kind = sequence_kind_from_string(j.at("kind").get<std::string>());
    seq.values = rationals_from_json(j.at("values"));
    return seq;
}

namespace {

double real_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(parse_rational_flexible(j.get<std::string>()));
    throw validation_error("expected a real number");
}

Polynomial polynomial_from_json(const Json& j) { return Polynomial(rationals_from_json(j)); }

Json polynomial_to_json(const Polynomial& p) { return rationals_to_json(p.coeffs()); }

}  // namespace

Json measure_to_json(const Measure& nu) {
    Json atoms = Json::array();
    for (const Atom& a : nu.atoms()) atoms.push_back(Json{{"x", a.location}, {"p", a.weight}});
    Json densities = Json::array();
    for (const DensityComponent& comp : nu.densities()) {
        if (comp.kind() == DensityComponent::Kind::marchenko_pastur) {
            densities.push_back(
                Json{{"kind", "marchenko_pastur"}, {"a", comp.mp_parameter()}, {"mass", comp.mass()}});
        } else {
            densities.push_back(Json{{"kind", "sqrt_weight"},
                                     {"lower", comp.lower()},
                                     {"upper", comp.upper()},
                                     {"p", polynomial_to_json(comp.shape_num())},
                                     {"q", polynomial_to_json(comp.shape_den())},
                                     {"mass", comp.mass()}});
        }
    }
    return Json{{"atoms", atoms}, {"densities", densities}};
}

Measure measure_from_json(const Json& j, const NumericConfig& cfg) {
    if (!j.is_object()) throw validation_error("measure JSON must be an object");
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) throw validation_error("\"atoms\" must be an array");
        for (const Json& a : j.at("atoms")) {
            if (!a.is_object() || !a.contains("x") || !a.contains("p"))
                throw validation_error("each atom needs \"x\" and \"p\"");
            atoms.push_back(Atom{real_from_json(a.at("x")), real_from_json(a.at("p"))});
        }
    }
    std::vector<DensityComponent> densities;
    if (j.contains("densities")) {
        if (!j.at("densities").is_array()) throw validation_error("\"densities\" must be an array");
        for (const Json& d : j.at("densities")) {
            if (!d.is_object() || !d.contains("kind"))
                throw validation_error("each density needs a \"kind\"");
            std::string kind = d.at("kind").get<std::string>();
            double mass = d.contains("mass") ? real_from_json(d.at("mass")) : 1.0;
            if (kind == "marchenko_pastur") {
                if (!d.contains("a")) throw validation_error("marchenko_pastur needs \"a\"");
                densities.push_back(DensityComponent::marchenko_pastur(real_from_json(d.at("a")), mass));
            } else if (kind == "sqrt_weight") {
                for (const char* key : {"lower", "upper", "p", "q"})
                    if (!d.contains(key))
                        throw validation_error(std::string("sqrt_weight needs \"") + key + "\"");
                densities.push_back(DensityComponent::sqrt_weight(
                    real_from_json(d.at("lower")), real_from_json(d.at("upper")),
                    polynomial_from_json(d.at("p")), polynomial_from_json(d.at("q")), mass, cfg));
            } else {
                throw validation_error("density kind must be marchenko_pastur or sqrt_weight");
            }
        }
    }
    return Measure::with_components(std::move(atoms), std::move(densities));
}

Json variance_to_json(const VarianceFunction& v) {
    return Json{{"poly", polynomial_to_json(v.poly)}, {"m0", to_string(v.m0)}};
}

VarianceFunction variance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("poly") || !j.contains("m0"))
        throw validation_error("variance JSON needs \"poly\" and \"m0\"");
    return VarianceFunction(polynomial_from_json(j.at("poly")), rational_from_json(j.at("m0")));
}

}  // namespace csk
