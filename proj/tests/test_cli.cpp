#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef CSKIT_PATH
#error "CSKIT_PATH must point at the built command-line binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CSKIT_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream f(p);
    f << text;
    return p;
}

const char* bernoulli_measure = R"({"atoms": [{"x": -1, "p": 0.5}, {"x": 1, "p": 0.5}]})";

}  // namespace

TEST_CASE("cli extracts boolean cumulants from a variance function") {
    RunResult r = run("vfun lagrange --V 1,2 --N 6");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("kind") == "boolean");
    CHECK(j.at("values") == json::array({"0", "1", "2", "5", "14", "42"}));
}

TEST_CASE("cli output is byte-identical across repeated invocations") {
    std::string args = "vfun boolean-power --V 1,1,1 --alpha 2/3 --m0 1/2";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("cli converts inline moment values to free cumulants") {
    RunResult r = run("cumulants --values 0,1,0,2,0,5 --from moments --to free");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("values") == json::array({"0", "1", "0", "0", "0", "0"}));
}

TEST_CASE("cli runs the hankel check on the raw input values") {
    RunResult good = run("cumulants --values 1,2,5,14,42,132,429 --from moments --hankel 4");
    CHECK(good.exit_code == 0);
    CHECK(json::parse(good.out).at("is_psd") == true);
    RunResult bad = run("cumulants --values 1,0,-1 --from moments --hankel 2");
    CHECK(bad.exit_code == 0);
    CHECK(json::parse(bad.out).at("is_psd") == false);
}

TEST_CASE("cli applies the bijection and reads tagged json from a file") {
    fs::path in = write_temp("cskit_bp_in.json",
                             R"({"kind": "moments", "values": ["0", "1", "0", "2", "0", "5"]})");
    RunResult r = run("--in " + in.string() + " bp --t 1");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("kind") == "moments");
    // round trip back down
    fs::path fwd = write_temp("cskit_bp_fwd.json", r.out);
    RunResult back = run("--in " + fwd.string() + " bp --t 1 --inverse");
    CHECK(back.exit_code == 0);
    CHECK(json::parse(back.out).at("values") == json::array({"0", "1", "0", "2", "0", "5"}));
}

TEST_CASE("cli evaluates transforms as csv with deterministic formatting") {
    fs::path in = write_temp("cskit_bern.json", bernoulli_measure);
    RunResult r = run("--in " + in.string() + " --format csv transform --points 1.5,2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 6) == "z,G,K\n");
    // two data rows, each with three fields
    int commas = 0, lines = 0;
    for (char c : r.out) {
        if (c == ',') ++commas;
        if (c == '\n') ++lines;
    }
    CHECK(lines == 3);
    CHECK(commas == 6);
    RunResult again = run("--in " + in.string() + " --format csv transform --points 1.5,2");
    CHECK(again.out == r.out);
}

TEST_CASE("cli reports the domain of means") {
    fs::path in = write_temp("cskit_point.json", R"({"atoms": [{"x": 2.5, "p": 1}]})");
    RunResult r = run("--in " + in.string() + " domain");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("degenerate") == true);
    CHECK(j.at("m0") == 2.5);
}

TEST_CASE("cli convolves atomic measures and round-trips the result") {
    fs::path in = write_temp("cskit_bern2.json", bernoulli_measure);
    RunResult r = run("--in " + in.string() + " convolve --boolean --alpha 2");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.at("atoms").size() == 2);
    double hi = j.at("atoms")[1].at("x").get<double>();
    CHECK(hi == doctest::Approx(1.4142135623730951).epsilon(1e-12));
    CHECK(run("--in " + in.string() + " convolve --alpha 2").exit_code == 2);
}

TEST_CASE("cli rejects malformed requests with the validation exit code") {
    CHECK(run("cumulants --values 1,2 --to free").exit_code == 2);  // missing --from
    CHECK(run("vfun cubic-check --abc 1,2").exit_code == 2);        // needs three coefficients
    CHECK(run("vfun lagrange --V 0,1 --N 3").exit_code == 2);       // V(0) = 0 inadmissible
    fs::path broken = write_temp("cskit_broken.json", "{not json");
    CHECK(run("--in " + broken.string() + " domain").exit_code == 2);
    fs::path bern = write_temp("cskit_bern3.json", bernoulli_measure);
    CHECK(run("--in " + bern.string() + " transform --points 0.5").exit_code == 2);
}

TEST_CASE("cli signals numeric breakdown with its own exit code") {
    // two coarse passes can never meet the refinement tolerance on a density
    fs::path cfg = write_temp("cskit_cfg.json", R"({"quad_nodes": 2, "quad_max_doublings": 1})");
    fs::path in = write_temp("cskit_mp.json", R"({"densities": [{"kind": "marchenko_pastur", "a": 1}]})");
    RunResult r = run("--config " + cfg.string() + " --in " + in.string() +
                      " transform --points 3.5");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli verify reports suites and honors a tolerance override") {
    RunResult r = run("verify --suite exact --N 8");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("all_pass") == true);
    for (const auto& c : j.at("checks")) CHECK(c.at("suite") == "exact");

    // an absurd tolerance makes honest numerics fail and flips the exit code
    RunResult strict = run("verify --suite numeric --tol 1e-18");
    CHECK(strict.exit_code == 4);
    CHECK(json::parse(strict.out).at("all_pass") == false);
}
