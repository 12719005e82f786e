#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() /
                         ("pwlinf_cli_out_" + std::to_string(counter++) + ".txt");
    const std::string cmd =
        std::string(PWLINF_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    result.stdout_text = slurp(out);
    fs::remove(out);
    return result;
}

fs::path write_temp(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

json output_of(const RunResult& r) { return json::parse(r.stdout_text).at("output"); }

}  // namespace

TEST_CASE("classify subcommand") {
    const fs::path crit = write_temp(
        "pwlinf_crit.json",
        R"({"form":"equilibrium","gamma_L":"-1/8","gamma_R":"1/8",)"
        R"("x_L":1,"x_R":1,"y_L":0,"y_R":0,"b":"-1/4"})");
    const RunResult r = run_cli("classify --input " + crit.string());
    REQUIRE(r.exit_code == 0);
    const json verdict = output_of(r);
    CHECK(verdict.at("kind") == "WeakFocus");
    CHECK(verdict.at("order") == 3);
    CHECK(verdict.at("stability") == "stable");
    fs::remove(crit);

    const fs::path center_b = write_temp(
        "pwlinf_center_b.json",
        R"({"form":"canonical","gamma_L":0.5,"gamma_R":-0.5,)"
        R"("alpha_L":0,"alpha_R":0,"b":0})");
    const RunResult rb = run_cli("classify --input " + center_b.string());
    REQUIRE(rb.exit_code == 0);
    CHECK(output_of(rb).at("kind") == "Center");
    CHECK(output_of(rb).at("center_type") == "b");
    fs::remove(center_b);
}

TEST_CASE("numeric failures exit with code 3") {
    const fs::path crit = write_temp(
        "pwlinf_numfail.json",
        R"({"form":"equilibrium","gamma_L":"-1/8","gamma_R":"1/8",)"
        R"("x_L":1,"x_R":1,"y_L":0,"y_R":0,"b":"-1/4"})");
    // u0_max so large that no grid point is a crossing orbit.
    const RunResult r =
        run_cli("cycles --input " + crit.string() + " --u0-max 1e9 --grid 16");
    CHECK(r.exit_code == 3);
    fs::remove(crit);
}

TEST_CASE("reproduce-example --emit-trace writes one polyline per cycle") {
    const fs::path dir = fs::temp_directory_path() / "pwlinf_traces";
    fs::create_directories(dir);
    const std::string cmd = "cd " + dir.string() + " && " + PWLINF_CLI_PATH +
                            " reproduce-example --emit-trace > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    for (int i = 1; i <= 3; ++i) {
        const fs::path csv = dir / ("pwlinf_reference_cycle_" + std::to_string(i) + ".csv");
        REQUIRE(fs::exists(csv));
        const std::string text = slurp(csv);
        CHECK(text.starts_with("t,x,y,event"));
        CHECK(text.find("crossing_") != std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("input errors exit with code 2") {
    const fs::path bad = write_temp(
        "pwlinf_bad.json",
        R"({"form":"lienard","T_L":2,"T_R":0,"D_L":1,"D_R":1,"a_L":0,"a_R":0,"b":0})");
    const RunResult r = run_cli("classify --input " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.stdout_text.find("not of focus type") != std::string::npos);
    fs::remove(bad);

    const RunResult missing = run_cli("classify --input /nonexistent.json");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("coeffs subcommand zeroes out a center") {
    const fs::path center = write_temp(
        "pwlinf_center.json",
        R"({"form":"canonical","gamma_L":0,"gamma_R":0,"alpha_L":-1,"alpha_R":2,"b":0})");
    const RunResult r = run_cli("coeffs --input " + center.string() + " --order 8");
    REQUIRE(r.exit_code == 0);
    const json out = output_of(r);
    REQUIRE(out.at("deltas").size() == 8);
    for (const auto& d : out.at("deltas")) CHECK(std::abs(d.get<double>()) <= 1e-11);
    CHECK(out.at("order") == 8);
    CHECK(out.at("L").size() == 8);
    CHECK(out.at("R").size() == 8);
    CHECK(out.at("beta").size() == 8);
    fs::remove(center);
}

TEST_CASE("cycles subcommand finds the reference cycles") {
    const fs::path pert = write_temp(
        "pwlinf_pert.json",
        R"({"form":"equilibrium","gamma_L":"-1/8","gamma_R":"1638355/13106841",)"
        R"("x_L":1,"x_R":"552751/556327","y_L":"-3383/4182076",)"
        R"("y_R":"-6084083513535748/7623599948859945633","b":"-260534/1045519"})");
    const RunResult r =
        run_cli("cycles --input " + pert.string() + " --u0-max 0.01 --grid 400");
    REQUIRE(r.exit_code == 0);
    const json out = output_of(r);
    CHECK(out.at("count") == 3);
    CHECK_FALSE(out.at("period_annulus").get<bool>());
    fs::remove(pert);
}

TEST_CASE("reports are reproducible up to timing") {
    const fs::path spec = write_temp(
        "pwlinf_repro.json",
        R"({"form":"canonical","gamma_L":0.2,"gamma_R":-0.1,)"
        R"("alpha_L":1.5,"alpha_R":-0.5,"b":0.3})");
    const RunResult a = run_cli("coeffs --input " + spec.string() + " --order 12");
    const RunResult b = run_cli("coeffs --input " + spec.string() + " --order 12");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    json ja = json::parse(a.stdout_text);
    json jb = json::parse(b.stdout_text);
    ja.erase("timing_ms");
    jb.erase("timing_ms");
    CHECK(ja.dump() == jb.dump());
    fs::remove(spec);
}

TEST_CASE("reproduce-example passes and honors the tolerance override") {
    const RunResult ok = run_cli("reproduce-example");
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.stdout_text.find("[PASS]") != std::string::npos);
    CHECK(ok.stdout_text.find("[FAIL]") == std::string::npos);
    CHECK(ok.stdout_text.find("reproduction OK") != std::string::npos);

    const RunResult strict = run_cli("reproduce-example --tolerance 1e-20");
    CHECK(strict.exit_code == 4);
    CHECK(strict.stdout_text.find("[FAIL]") != std::string::npos);
}

TEST_CASE("unfold and region subcommands") {
    const RunResult u = run_cli(
        "unfold --gamma-L -0.125 --x-L 1 "
        "--targets -4.43719886e-8,3.993655760e-5,-1.15001344e-2");
    REQUIRE(u.exit_code == 0);
    const json uo = output_of(u);
    CHECK(std::abs(uo.at("gamma_R").get<double>() - 1638355.0 / 13106841.0) <= 1e-7);
    CHECK(uo.at("residual").get<double>() <= 1e-12);

    const fs::path csv = fs::temp_directory_path() / "pwlinf_region.csv";
    const RunResult g = run_cli("region --delta3 -1 --window -0.045,0,0.25,0.4 "
                                "--resolution 32 --output " + csv.string());
    REQUIRE(g.exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(text.starts_with("kind,delta1,delta2,count"));
    CHECK(text.find("label,") != std::string::npos);
    CHECK(text.find("discriminant,") != std::string::npos);
    fs::remove(csv);
}

TEST_CASE("trace subcommand emits a closed polyline") {
    const fs::path center = write_temp(
        "pwlinf_trace.json",
        R"({"form":"canonical","gamma_L":0,"gamma_R":0,"alpha_L":-1,"alpha_R":0.5,"b":0})");
    const fs::path csv = fs::temp_directory_path() / "pwlinf_orbit.csv";
    const RunResult r = run_cli("trace --input " + center.string() +
                                " --start-y 5 --turns 1 --samples 32 --output " +
                                csv.string());
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(text.starts_with("t,x,y,event"));
    CHECK(text.find("crossing_") != std::string::npos);
    fs::remove(center);
    fs::remove(csv);
}
