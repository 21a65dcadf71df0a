#include <csk/config.hpp>
#include <csk/cumulants.hpp>
#include <csk/io.hpp>
#include <csk/measure.hpp>
#include <csk/variance.hpp>
#include <csk/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace csk;

struct GlobalOpts {
    std::string in_path, out_path, config_path;
    std::string format = "json";
    NumericConfig numeric;
};

std::string slurp(std::istream& is) {
    return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

Json read_input_json(const GlobalOpts& g) {
    std::string text;
    if (!g.in_path.empty()) {
        std::ifstream f(g.in_path);
        if (!f) throw validation_error("cannot open input file '" + g.in_path + "'");
        text = slurp(f);
    } else {
        text = slurp(std::cin);
    }
    if (text.empty()) throw validation_error("no input provided (use --in or pipe JSON to stdin)");
    return Json::parse(text);
}

void write_output(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out_path);
    if (!f) throw validation_error("cannot open output file '" + g.out_path + "'");
    f << text;
}

void emit_json(const GlobalOpts& g, const Json& j) { write_output(g, j.dump(2) + "\n"); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void apply_config_file(GlobalOpts& g) {
    if (g.config_path.empty()) return;
    std::ifstream f(g.config_path);
    if (!f) throw validation_error("cannot open config file '" + g.config_path + "'");
    Json j = Json::parse(slurp(f));
    if (!j.is_object()) throw validation_error("config file must hold a JSON object");
    NumericConfig& c = g.numeric;
    auto want_int = [&](const char* key, int& field) {
        if (j.contains(key)) field = j.at(key).get<int>();
    };
    auto want_double = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    want_int("quad_nodes", c.quad_nodes);
    want_double("quad_refine_tol", c.quad_refine_tol);
    want_int("quad_max_doublings", c.quad_max_doublings);
    want_double("transform_tol", c.transform_tol);
    want_double("bisect_tol", c.bisect_tol);
    want_double("extrap_tol", c.extrap_tol);
    want_int("extrap_max_levels", c.extrap_max_levels);
    if (j.contains("series_order")) c.series_order = j.at("series_order").get<unsigned>();
    if (c.quad_nodes <= 0 || c.quad_refine_tol <= 0 || c.quad_max_doublings < 0 ||
        c.transform_tol <= 0 || c.bisect_tol <= 0 || c.extrap_tol <= 0 || c.extrap_max_levels <= 0)
        throw validation_error("config tolerances and limits must be positive");
}

std::vector<Rational> parse_rational_list(const std::vector<std::string>& parts) {
    std::vector<Rational> out;
    out.reserve(parts.size());
    for (const std::string& s : parts) out.push_back(parse_rational_flexible(s));
    return out;
}

std::vector<Rational> convert_sequence(SequenceKind from, SequenceKind to,
                                       std::vector<Rational> values) {
    MomentSequence m;
    switch (from) {
        case SequenceKind::moments: m.values = std::move(values); break;
        case SequenceKind::boolean_cumulants:
            m = boolean_to_moments(BooleanCumulants{std::move(values)});
            break;
        case SequenceKind::free_cumulants:
            m = free_to_moments(FreeCumulants{std::move(values)});
            break;
    }
    switch (to) {
        case SequenceKind::moments: return m.values;
        case SequenceKind::boolean_cumulants: return moments_to_boolean(m).values;
        case SequenceKind::free_cumulants: return moments_to_free(m).values;
    }
    throw validation_error("unknown sequence kind");
}

void emit_sequence(const GlobalOpts& g, SequenceKind kind, const std::vector<Rational>& values) {
    if (g.format == "csv") {
        std::ostringstream os;
        os << "n,value\n";
        for (std::size_t i = 0; i < values.size(); ++i)
            os << (i + 1) << "," << csv_field(to_string(values[i])) << "\n";
        write_output(g, os.str());
        return;
    }
    emit_json(g, sequence_to_json(TaggedSequence{kind, values}));
}

void emit_rows(const GlobalOpts& g, const std::string& xname, const std::string& yname,
               const std::vector<std::pair<double, double>>& rows) {
    if (g.format == "csv") {
        std::ostringstream os;
        os << xname << "," << yname << "\n";
        for (const auto& [x, y] : rows)
            os << format_real(x) << "," << format_real(y) << "\n";
        write_output(g, os.str());
        return;
    }
    Json arr = Json::array();
    for (const auto& [x, y] : rows) arr.push_back(Json{{xname, x}, {yname, y}});
    emit_json(g, Json{{"rows", arr}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cskit: exact cumulant calculus, variance-function transport and numeric\n"
        "transform evaluation for kernel families of measures with upper-bounded\n"
        "support"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--in", g.in_path, "input file (default: stdin when input is needed)");
    app.add_option("--out", g.out_path, "output file (default: stdout)");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--config", g.config_path,
                   "JSON file overriding numeric defaults (quad_nodes, bisect_tol, ...)");

    // cumulants
    auto* cumulants = app.add_subcommand("cumulants", "convert between moments and cumulants");
    cumulants->fallthrough();
    std::string from_kind, to_kind;
    std::vector<std::string> inline_values;
    int seq_n = 0, hankel_size = 0;
    cumulants->add_option("--from", from_kind, "input kind")
        ->check(CLI::IsMember({"moments", "boolean", "free"}));
    cumulants->add_option("--to", to_kind, "output kind")
        ->check(CLI::IsMember({"moments", "boolean", "free"}));
    cumulants->add_option("--values", inline_values, "inline sequence, comma separated rationals")
        ->delimiter(',');
    cumulants->add_option("--N", seq_n, "truncate the input to its first N entries");
    cumulants->add_option("--hankel", hankel_size,
                          "run the Hankel positivity check of this size on the raw input values")
        ->check(CLI::PositiveNumber);

    // bp
    auto* bp = app.add_subcommand("bp", "apply the t-parameter bijection to a moment sequence");
    bp->fallthrough();
    std::string bp_t;
    bool bp_inv = false;
    bp->add_option("--t", bp_t, "bijection parameter, rational >= 0")->required();
    bp->add_flag("--inverse", bp_inv, "apply the inverse map");

    // vfun
    auto* vfun = app.add_subcommand("vfun", "variance-function operations (exact)");
    vfun->fallthrough();
    vfun->require_subcommand(1);
    std::vector<std::string> v_coeffs, abc_parts;
    std::string m0_text = "0", alpha_text, t_text, gamma_text, delta_text, mixed_order;
    int lagrange_n = 0;
    auto add_v_options = [&](CLI::App* sub, bool need_v) {
        CLI::Option* v = sub->add_option("--V", v_coeffs,
                                         "variance polynomial coefficients, constant term first")
                             ->delimiter(',');
        if (need_v) v->required();
        sub->add_option("--m0", m0_text, "mean of the generating measure")->capture_default_str();
        sub->fallthrough();
    };
    auto* vf_free = vfun->add_subcommand("free-power", "variance function of the free power");
    add_v_options(vf_free, true);
    vf_free->add_option("--alpha", alpha_text, "power, rational > 0")->required();
    auto* vf_bool = vfun->add_subcommand("boolean-power", "variance function of the boolean power");
    add_v_options(vf_bool, true);
    vf_bool->add_option("--alpha", alpha_text, "power, rational > 0")->required();
    auto* vf_bt_cmd = vfun->add_subcommand("bt", "variance function of the t-parameter bijection image");
    add_v_options(vf_bt_cmd, true);
    vf_bt_cmd->add_option("--t", t_text, "bijection parameter, rational >= 0")->required();
    auto* vf_mixed = vfun->add_subcommand("mixed", "reciprocal-power composition of both convolutions");
    add_v_options(vf_mixed, true);
    vf_mixed->add_option("--alpha", alpha_text, "power, rational > 0")->required();
    vf_mixed->add_option("--order", mixed_order, "which convolution acts first")
        ->check(CLI::IsMember({"free-boolean", "boolean-free"}))
        ->required();
    auto* vf_lagrange =
        vfun->add_subcommand("lagrange", "boolean cumulants extracted from the variance function");
    add_v_options(vf_lagrange, true);
    vf_lagrange->add_option("--N", lagrange_n, "number of cumulants")
        ->required()
        ->check(CLI::PositiveNumber);
    auto* vf_cubic = vfun->add_subcommand("cubic-check",
                                          "class membership of V = 1 + a m + b m^2 + c m^3");
    vf_cubic->fallthrough();
    vf_cubic->add_option("--abc", abc_parts, "the three coefficients a,b,c")
        ->delimiter(',')
        ->expected(3)
        ->required();
    auto* vf_affine = vfun->add_subcommand(
        "affine", "pseudo-variance of the image under x -> (x - gamma)/delta");
    add_v_options(vf_affine, true);
    vf_affine->add_option("--gamma", gamma_text, "shift")->required();
    vf_affine->add_option("--delta", delta_text, "scale, rational != 0")->required();

    // measure commands
    auto* transform = app.add_subcommand("transform", "evaluate G and K on a grid above the support");
    transform->fallthrough();
    std::vector<double> z_points, m_grid, x_grid;
    transform->add_option("--points", z_points, "grid points, comma separated, strictly ascending")
        ->delimiter(',')
        ->required();
    auto* domain = app.add_subcommand("domain", "domain of means of the input measure");
    domain->fallthrough();
    auto* pseudovar = app.add_subcommand("pseudovar", "pseudo-variance on a grid of means");
    pseudovar->fallthrough();
    pseudovar->add_option("--m-grid", m_grid, "mean parameters, comma separated")
        ->delimiter(',')
        ->required();
    auto* convolve = app.add_subcommand("convolve", "boolean convolution power of an atomic measure");
    convolve->fallthrough();
    bool boolean_flag = false;
    double conv_alpha = 0.0;
    convolve->add_flag("--boolean", boolean_flag, "boolean convolution (the only supported kind)");
    convolve->add_option("--alpha", conv_alpha, "power, real > 0")->required();
    auto* member = app.add_subcommand("member", "family member density on a grid of support points");
    member->fallthrough();
    double member_m = 0.0;
    member->add_option("--m", member_m, "mean of the family member")->required();
    member->add_option("--x-grid", x_grid, "evaluation points, comma separated")
        ->delimiter(',')
        ->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run the exact and numeric verification suites");
    verify->fallthrough();
    int verify_n = 12;
    double verify_tol = 0.0;
    std::string verify_suite = "all";
    verify->add_option("--N", verify_n, "truncation order for the exact suites")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--tol", verify_tol, "replace every numeric suite tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_option("--suite", verify_suite, "which suites to run")
        ->check(CLI::IsMember({"exact", "numeric", "all"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        apply_config_file(g);

        if (*cumulants) {
            TaggedSequence seq;
            if (!inline_values.empty()) {
                if (from_kind.empty() && hankel_size == 0)
                    throw validation_error("--values needs --from to name the kind");
                seq.kind = from_kind.empty() ? SequenceKind::moments
                                             : sequence_kind_from_string(from_kind);
                seq.values = parse_rational_list(inline_values);
            } else {
                seq = sequence_from_json(read_input_json(g));
                if (!from_kind.empty() && sequence_kind_from_string(from_kind) != seq.kind)
                    throw validation_error("--from disagrees with the input's kind tag");
            }
            if (seq_n > 0) {
                if (static_cast<std::size_t>(seq_n) > seq.values.size())
                    throw validation_error("--N exceeds the input length");
                seq.values.resize(seq_n);
            }
            if (hankel_size > 0) {
                if (g.format == "csv")
                    throw validation_error("the Hankel report is json-only");
                HankelReport rep = hankel_psd_check(seq.values, hankel_size);
                emit_json(g, Json{{"is_psd", rep.is_psd},
                                  {"determinants", rationals_to_json(rep.determinants)}});
                return 0;
            }
            if (to_kind.empty()) throw validation_error("--to is required for conversions");
            SequenceKind to = sequence_kind_from_string(to_kind);
            emit_sequence(g, to, convert_sequence(seq.kind, to, std::move(seq.values)));
            return 0;
        }

        if (*bp) {
            Rational t = parse_rational_flexible(bp_t);
            TaggedSequence seq = sequence_from_json(read_input_json(g));
            if (seq.kind != SequenceKind::moments)
                throw validation_error("the bijection acts on moment sequences");
            MomentSequence m{std::move(seq.values)};
            MomentSequence out = bp_inv ? bp_inverse(m, t) : bp_map(m, t);
            emit_sequence(g, SequenceKind::moments, out.values);
            return 0;
        }

        if (*vfun) {
            auto parse_vf = [&] {
                return VarianceFunction(Polynomial(parse_rational_list(v_coeffs)),
                                        parse_rational_flexible(m0_text));
            };
            auto emit_vf = [&](const VarianceFunction& v) {
                if (g.format == "csv") throw validation_error("variance output is json-only");
                emit_json(g, variance_to_json(v));
            };
            if (*vf_free) {
                emit_vf(vf_free_power(parse_vf(), parse_rational_flexible(alpha_text)));
            } else if (*vf_bool) {
                emit_vf(vf_boolean_power(parse_vf(), parse_rational_flexible(alpha_text)));
            } else if (*vf_bt_cmd) {
                emit_vf(vf_bt(parse_vf(), parse_rational_flexible(t_text)));
            } else if (*vf_mixed) {
                MixedPowerOrder order = mixed_order == "free-boolean"
                                            ? MixedPowerOrder::free_then_boolean
                                            : MixedPowerOrder::boolean_then_free;
                emit_vf(vf_mixed_power(parse_vf(), parse_rational_flexible(alpha_text), order));
            } else if (*vf_lagrange) {
                BooleanCumulants r = lagrange_boolean_cumulants(parse_vf(), lagrange_n);
                emit_sequence(g, SequenceKind::boolean_cumulants, r.values);
            } else if (*vf_cubic) {
                std::vector<Rational> abc = parse_rational_list(abc_parts);
                CubicClassResult r = cubic_class_check(abc[0], abc[1], abc[2]);
                emit_json(g, Json{{"in_V", r.in_v}, {"in_V_inf", r.in_v_inf}});
            } else if (*vf_affine) {
                AffinePseudoVariance a =
                    pvf_affine(vf_to_pseudo(parse_vf()), parse_rational_flexible(gamma_text),
                               parse_rational_flexible(delta_text));
                emit_json(g, Json{{"num", rationals_to_json(a.expr.num.coeffs())},
                                  {"den", rationals_to_json(a.expr.den.coeffs())},
                                  {"left_sided", a.left_sided}});
            }
            return 0;
        }

        if (*transform) {
            Measure nu = measure_from_json(read_input_json(g), g.numeric);
            TransformGrid grid = transform_grid(nu, z_points, g.numeric);
            if (g.format == "csv") {
                std::ostringstream os;
                os << "z,G,K\n";
                for (std::size_t i = 0; i < grid.z.size(); ++i)
                    os << format_real(grid.z[i]) << "," << format_real(grid.g_values[i]) << ","
                       << format_real(grid.k_values[i]) << "\n";
                write_output(g, os.str());
            } else {
                emit_json(g, Json{{"z", grid.z}, {"G", grid.g_values}, {"K", grid.k_values}});
            }
            return 0;
        }

        if (*domain) {
            Measure nu = measure_from_json(read_input_json(g), g.numeric);
            MeansDomain dom = means_domain(nu, g.numeric);
            if (g.format == "csv") {
                std::ostringstream os;
                os << "m0,m_plus,B,degenerate\n"
                   << format_real(dom.m0) << "," << format_real(dom.m_plus) << ","
                   << format_real(dom.B) << "," << (dom.degenerate ? 1 : 0) << "\n";
                write_output(g, os.str());
            } else {
                emit_json(g, Json{{"m0", dom.m0},
                                  {"m_plus", dom.m_plus},
                                  {"B", dom.B},
                                  {"degenerate", dom.degenerate}});
            }
            return 0;
        }

        if (*pseudovar) {
            Measure nu = measure_from_json(read_input_json(g), g.numeric);
            std::vector<std::pair<double, double>> rows;
            for (double m : m_grid) rows.emplace_back(m, pseudo_variance_numeric(nu, m, g.numeric));
            emit_rows(g, "m", "pvar", rows);
            return 0;
        }

        if (*convolve) {
            if (!boolean_flag)
                throw validation_error("only the boolean convolution power is supported; pass --boolean");
            Measure nu = measure_from_json(read_input_json(g), g.numeric);
            if (g.format == "csv") throw validation_error("measure output is json-only");
            emit_json(g, measure_to_json(boolean_power_atomic(nu, conv_alpha)));
            return 0;
        }

        if (*member) {
            Measure nu = measure_from_json(read_input_json(g), g.numeric);
            std::vector<std::pair<double, double>> rows;
            for (double x : x_grid)
                rows.emplace_back(x, csk_member_density(nu, member_m, x, g.numeric));
            emit_rows(g, "x", "f", rows);
            return 0;
        }

        if (*verify) {
            VerifyOptions opts;
            opts.numeric = g.numeric;
            opts.order = static_cast<unsigned>(verify_n);
            opts.numeric_tol = verify_tol;
            VerifyReport rep = verify_all(opts);
            if (verify_suite != "all") {
                std::erase_if(rep.checks,
                              [&](const VerifyCheck& c) { return c.suite != verify_suite; });
            }
            if (g.format == "csv") {
                std::ostringstream os;
                os << "suite,name,identity,pass,deviation,tolerance\n";
                for (const VerifyCheck& c : rep.checks)
                    os << c.suite << "," << csv_field(c.name) << "," << csv_field(c.identity)
                       << "," << (c.pass ? 1 : 0) << "," << format_real(c.deviation) << ","
                       << format_real(c.tolerance) << "\n";
                write_output(g, os.str());
            } else {
                Json checks = Json::array();
                for (const VerifyCheck& c : rep.checks)
                    checks.push_back(Json{{"suite", c.suite},
                                          {"name", c.name},
                                          {"identity", c.identity},
                                          {"pass", c.pass},
                                          {"deviation", c.deviation},
                                          {"tolerance", c.tolerance}});
                emit_json(g, Json{{"checks", checks}, {"all_pass", rep.all_pass()}});
            }
            return rep.all_pass() ? 0 : 4;
        }

        throw validation_error("no command dispatched");
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: bad JSON input: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
