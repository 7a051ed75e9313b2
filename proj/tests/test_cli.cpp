// CLI layer: config parsing, CSV emission, determinism across thread counts,
// subcommand semantics and process-level exit codes.

#include "doctest.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "optomech/dynamics.hpp"
#include "optomech/polariton.hpp"

#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"

using namespace optomech;
using namespace optomech::cli;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_doc() {
    return nlohmann::json{
        {"mode", "scaled"},
        {"params",
         {{"omega_0", 10.0}, {"omega_c", 10.0}, {"omega_m", 1.0}, {"mass", 1.0},
          {"eta", 0.1}, {"g_total", 5.0}}},
        {"branches", nlohmann::json::array({{{"n_a", 0}, {"n_b", 1}}, {{"n_a", 1}, {"n_b", 0}}})},
        {"time_grid", {{"start", 0.0}, {"stop", 10.0}, {"steps", 11}}},
        {"sweep",
         {{"parameter", "x"}, {"start", -1.0}, {"stop", 1.0}, {"points", 21},
          {"scale", "linear"}}},
    };
}

int run_binary(const std::string& args) {
#ifdef OPTOMECH_CLI_BINARY
    const std::string command = std::string(OPTOMECH_CLI_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
#else
    (void)args;
    return -1;
#endif
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path()
               / ("optomech_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string write_doc(const TempDir& dir, const std::string& name, const nlohmann::json& doc) {
    const fs::path file = dir.path / name;
    std::ofstream out(file);
    out << doc.dump(2);
    return file.string();
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("defaults and hash stability") {
        const auto config = parse_config(base_doc());
        CHECK(config.mode == UnitMode::Scaled);
        CHECK(config.params.omega_0 == 10.0);
        CHECK(config.branches.size() == 2);
        CHECK(config.tolerances.spectrum == 1e-10);
        CHECK(config.config_hash == parse_config(base_doc()).config_hash);
        auto other = base_doc();
        other["params"]["eta"] = 0.2;
        CHECK(config.config_hash != parse_config(other).config_hash);
    }
    SUBCASE("SI mode multiplies frequencies by 2 pi") {
        auto doc = base_doc();
        doc["mode"] = "si";
        const auto config = parse_config(doc);
        CHECK(config.params.omega_0 == doctest::Approx(2.0 * 3.14159265358979323846 * 10.0));
        CHECK(config.frequency_scale == doctest::Approx(6.283185307179586));
    }
    SUBCASE("override coefficients are scaled too") {
        auto doc = base_doc();
        doc["mode"] = "si";
        doc["branches"][0]["override"] = {{"alpha", 1.0}, {"beta", 2.0}};
        const auto config = parse_config(doc);
        REQUIRE(config.branches[0].override_coeffs.has_value());
        CHECK(config.branches[0].override_coeffs->alpha
              == doctest::Approx(6.283185307179586));
    }
    SUBCASE("unknown keys are rejected") {
        auto doc = base_doc();
        doc["params"]["omega_typo"] = 1.0;
        CHECK_THROWS_AS((void)parse_config(doc), ConfigError);
        auto doc2 = base_doc();
        doc2["unexpected"] = 1;
        CHECK_THROWS_AS((void)parse_config(doc2), ConfigError);
    }
    SUBCASE("grid and sweep validation") {
        auto doc = base_doc();
        doc["time_grid"]["steps"] = 1;
        CHECK_THROWS_AS((void)parse_config(doc), ConfigError);
        auto doc2 = base_doc();
        doc2["sweep"] = {{"parameter", "omega_m"}, {"start", -1.0}, {"stop", 1.0},
                         {"points", 5}, {"scale", "linear"}};
        CHECK_THROWS_AS((void)parse_config(doc2), ConfigError);
        auto doc3 = base_doc();
        doc3["sweep"]["scale"] = "log";
        CHECK_THROWS_AS((void)parse_config(doc3), ConfigError);   // negative start
    }
    SUBCASE("invalid physics rejected as config errors") {
        auto doc = base_doc();
        doc["params"]["omega_m"] = -1.0;
        CHECK_THROWS_AS((void)parse_config(doc), ConfigError);
    }
}

TEST_CASE("csv formatting round-trips doubles exactly") {
    for (double value : {0.1, 1.0 / 3.0, 6.283185307179586, 1e-300, -0.0, 12345.678901234567}) {
        const std::string text = format_double(value);
        CHECK(std::strtod(text.c_str(), nullptr) == value);
    }
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("spectrum command") {
    auto config = parse_config(base_doc());

    SUBCASE("columns and round-trip against the library") {
        const auto series = run_spectrum(config);
        REQUIRE(series.columns
                == std::vector<std::string>{"x", "omega_a", "omega_b", "theta"});
        REQUIRE(series.rows.size() == 21);
        for (std::size_t i = 0; i < series.rows.size(); ++i) {
            const double x = std::strtod(series.rows[i][0].c_str(), nullptr);
            const auto basis = polariton_frequencies(config.params, x);
            CHECK(std::strtod(series.rows[i][1].c_str(), nullptr) == basis.omega_a);
            CHECK(std::strtod(series.rows[i][2].c_str(), nullptr) == basis.omega_b);
            CHECK(std::strtod(series.rows[i][3].c_str(), nullptr) == basis.theta);
        }
    }
    SUBCASE("parallel rows equal serial rows byte for byte") {
        auto serial = config;
        serial.threads = 1;
        auto parallel = config;
        parallel.threads = 8;
        CHECK(to_text(run_spectrum(serial)) == to_text(run_spectrum(parallel)));
    }
    SUBCASE("decoupled sweep pins one column to each bare frequency") {
        auto doc = base_doc();
        doc["params"]["g_total"] = 0.0;
        doc["params"]["omega_0"] = 15.0;
        const auto decoupled = parse_config(doc);
        const auto series = run_spectrum(decoupled);
        for (const auto& row : series.rows) {
            const double x = std::strtod(row[0].c_str(), nullptr);
            CHECK(std::strtod(row[1].c_str(), nullptr)
                  == doctest::Approx(10.0 + 0.1 * x).epsilon(1e-14));
            CHECK(std::strtod(row[2].c_str(), nullptr) == doctest::Approx(15.0).epsilon(1e-14));
        }
    }
    SUBCASE("theta crosses pi/2 at the resonance point") {
        auto doc = base_doc();
        doc["params"]["omega_0"] = 10.05;   // resonance at x = detuning/eta = 0.5
        const auto detuned = parse_config(doc);
        const auto series = run_spectrum(detuned);
        bool crossed = false;
        for (std::size_t i = 1; i < series.rows.size(); ++i) {
            const double prev = std::strtod(series.rows[i - 1][3].c_str(), nullptr);
            const double curr = std::strtod(series.rows[i][3].c_str(), nullptr);
            if (prev < 1.5707963267948966 && curr >= 1.5707963267948966) {
                crossed = true;
                const double x = std::strtod(series.rows[i][0].c_str(), nullptr);
                CHECK(x == doctest::Approx(0.5).epsilon(0.11));
            }
        }
        CHECK(crossed);
    }
    SUBCASE("missing sweep is a config error") {
        auto doc = base_doc();
        doc.erase("sweep");
        CHECK_THROWS_AS((void)run_spectrum(parse_config(doc)), ConfigError);
    }
}

TEST_CASE("echo command") {
    const auto config = parse_config(base_doc());
    const auto series = run_echo(config);
    REQUIRE(series.columns
            == std::vector<std::string>{"t", "L_nm", "L_nm_printed", "regime_n", "regime_m"});
    CHECK(series.rows.front()[0] == "0");
    CHECK(series.rows.front()[1] == "1");
    for (std::size_t i = 0; i < series.rows.size(); ++i) {
        const double t = std::strtod(series.rows[i][0].c_str(), nullptr);
        const double echo = loschmidt_echo(config.params, ModeIndex{0, 1}, ModeIndex{1, 0}, t);
        CHECK(series.rows[i][1] == format_double(echo));   // same code path, same bytes
        CHECK(series.rows[i][3] == "oscillatory");
    }

    SUBCASE("branch count enforced") {
        auto doc = base_doc();
        doc["branches"].erase(1);
        CHECK_THROWS_AS((void)run_echo(parse_config(doc)), ConfigError);
    }
}

TEST_CASE("fidelity command") {
    SUBCASE("identical branches give a constant column of 1") {
        auto doc = base_doc();
        doc["branches"] = nlohmann::json::array(
            {{{"n_a", 0}, {"n_b", 1}}, {{"n_a", 0}, {"n_b", 1}}});
        doc["sweep"] = {{"parameter", "omega_m"}, {"start", 0.5}, {"stop", 2.0},
                        {"points", 7}, {"scale", "log"}};
        const auto series = run_fidelity(parse_config(doc));
        for (const auto& row : series.rows)
            CHECK(row[1] == "1");
    }
    SUBCASE("hyperbolic rows come out as nan, oscillatory rows as numbers") {
        auto doc = base_doc();
        doc["branches"] = nlohmann::json::array(
            {{{"n_a", 0}, {"n_b", 1}, {"override", {{"alpha", -0.25}, {"beta", 0.1}}}},
             {{"n_a", 0}, {"n_b", 0}}});
        doc["sweep"] = {{"parameter", "omega_m"}, {"start", 0.5}, {"stop", 2.0},
                        {"points", 4}, {"scale", "linear"}};
        const auto series = run_fidelity(parse_config(doc));
        CHECK(series.rows[0][1] == "nan");        // omega_m = 0.5 < 4|alpha| = 1
        CHECK(series.rows[3][1] != "nan");        // omega_m = 2 is oscillatory
    }
}

TEST_CASE("variance command emits the vacuum value first") {
    auto doc = base_doc();
    doc["branches"] = nlohmann::json::array({{{"n_a", 0}, {"n_b", 1}}});
    const auto series = run_variance(parse_config(doc));
    REQUIRE(series.columns == std::vector<std::string>{"t", "var_x", "var_x_printed"});
    CHECK(std::strtod(series.rows.front()[1].c_str(), nullptr) == 0.5);
    CHECK(std::strtod(series.rows.front()[2].c_str(), nullptr) == 2.0);
}

TEST_CASE("regime map command") {
    SUBCASE("G -> 0 rows have infinite threshold, all oscillatory") {
        auto doc = base_doc();
        doc["params"]["g_total"] = 0.0;
        doc["params"]["omega_0"] = 12.0;
        doc["branches"] = nlohmann::json::array({{{"n_a", 3}, {"n_b", 0}}});
        doc["sweep"] = {{"parameter", "eta"}, {"start", 1.0}, {"stop", 4.0},
                        {"points", 4}, {"scale", "linear"}};
        const auto series = run_regime_map(parse_config(doc));
        for (const auto& row : series.rows) {
            CHECK(row[1] == "inf");
            CHECK(row[2] == "oscillatory");
        }
    }
    SUBCASE("doubling eta divides the threshold by 4") {
        auto doc = base_doc();
        doc["sweep"] = {{"parameter", "eta"}, {"start", 1.0}, {"stop", 2.0},
                        {"points", 2}, {"scale", "linear"}};
        const auto series = run_regime_map(parse_config(doc));
        const double t1 = std::strtod(series.rows[0][1].c_str(), nullptr);
        const double t2 = std::strtod(series.rows[1][1].c_str(), nullptr);
        CHECK(t1 / t2 == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("validate command") {
    SUBCASE("default tolerances pass with every finding recorded") {
        const auto report = run_validate(parse_config(base_doc()));
        CHECK(report.passed);
        const std::string text = report.to_text();
        CHECK(text.find("finding.loschmidt_cross_term.printed_violates_identity=true")
              != std::string::npos);
        CHECK(text.find("finding.gamma_exponent.three_halves_consistent=true")
              != std::string::npos);
        CHECK(text.find("finding.variance_prefactor.printed_inconsistent=true")
              != std::string::npos);
        CHECK(text.find("finding.critical_condition.omega_m_consistent=true")
              != std::string::npos);
        CHECK(text.find("result=pass") != std::string::npos);
    }
    SUBCASE("corrupted tolerance fails and names the check") {
        auto doc = base_doc();
        doc["tolerances"] = {{"spectrum", 1e-20}};
        const auto report = run_validate(parse_config(doc));
        CHECK_FALSE(report.passed);
        CHECK(report.failed_check == "check.spectrum");
        CHECK(report.to_text().find("failed=check.spectrum") != std::string::npos);
    }
}

TEST_CASE("process-level behavior") {
    TempDir dir;

    SUBCASE("spectrum writes the requested file and exits 0") {
        const auto config = write_doc(dir, "ok.json", base_doc());
        const auto out = (dir.path / "spectrum.csv").string();
        CHECK(run_binary("spectrum --config " + config + " --out " + out) == 0);
        CHECK(fs::exists(out));
        std::ifstream in(out);
        std::string first_line;
        std::getline(in, first_line);
        CHECK(first_line.rfind("# tool=optomech", 0) == 0);
    }
    SUBCASE("config errors exit 2 and leave no output") {
        auto doc = base_doc();
        doc["params"]["omega_m"] = -1.0;
        const auto config = write_doc(dir, "bad.json", doc);
        const auto out = (dir.path / "never.csv").string();
        CHECK(run_binary("spectrum --config " + config + " --out " + out) == 2);
        CHECK_FALSE(fs::exists(out));
    }
    SUBCASE("validate exits 1 on a corrupted tolerance") {
        auto doc = base_doc();
        doc["tolerances"] = {{"identity", 1e-30}};
        const auto config = write_doc(dir, "corrupt.json", doc);
        CHECK(run_binary("validate --config " + config) == 1);
    }
    SUBCASE("non-convergence exits 3") {
        auto doc = base_doc();
        doc["branches"] = nlohmann::json::array(
            {{{"n_a", 0}, {"n_b", 1}, {"override", {{"alpha", -0.5}, {"beta", 0.1}}}}});
        doc["time_grid"] = {{"start", 0.0}, {"stop", 6.0}, {"steps", 5}};
        doc["oracle"] = {{"enabled", true}, {"start_cutoff", 8}, {"tol", 1e-10},
                         {"max_cutoff", 32}};
        const auto config = write_doc(dir, "hard.json", doc);
        CHECK(run_binary("variance --config " + config) == 3);
    }
    SUBCASE("--si overrides the config's unit mode") {
        const auto config = write_doc(dir, "ok.json", base_doc());
        const auto out_scaled = (dir.path / "scaled.csv").string();
        const auto out_si = (dir.path / "si.csv").string();
        CHECK(run_binary("spectrum --config " + config + " --out " + out_scaled) == 0);
        CHECK(run_binary("spectrum --config " + config + " --si --out " + out_si) == 0);
        std::ifstream a(out_scaled), b(out_si);
        const std::string text_a((std::istreambuf_iterator<char>(a)), {});
        const std::string text_b((std::istreambuf_iterator<char>(b)), {});
        CHECK(text_a != text_b);
        CHECK(text_b.find("frequency_unit=Hz") != std::string::npos);
    }
    SUBCASE("thread count does not change the written bytes") {
        const auto config = write_doc(dir, "ok.json", base_doc());
        const auto out1 = (dir.path / "a.csv").string();
        const auto out8 = (dir.path / "b.csv").string();
        CHECK(run_binary("spectrum --config " + config + " --threads 1 --out " + out1) == 0);
        CHECK(run_binary("spectrum --config " + config + " --threads 8 --out " + out8) == 0);
        std::ifstream a(out1), b(out8);
        const std::string text_a((std::istreambuf_iterator<char>(a)), {});
        const std::string text_b((std::istreambuf_iterator<char>(b)), {});
        CHECK(text_a == text_b);
        CHECK_FALSE(text_a.empty());
    }
}
