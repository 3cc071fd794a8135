#include "cdgsk/report.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using cdgsk::Json;
using doctest::Approx;

namespace {

const std::string cli = CDGSK_CLI_PATH;

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("cdgsk_cli_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run(const std::string& args, const fs::path& out, const std::string& env = "")
{
    const std::string cmd = env + " '" + cli + "' --out '" + out.string() + "' " + args + " > '" +
                            (out / "stdout.txt").string() + "' 2> '" + (out / "stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Json json_file(const fs::path& p) { return Json::parse(slurp(p)); }

} // namespace

TEST_CASE("profile: single amplitude, flat case and speed fit")
{
    const auto d = scratch("profile");
    REQUIRE(run("profile --k 1 --a 0.01", d) == 0);
    const Json j = json_file(d / "profile.json");
    CHECK(j["c"].get<double>() == Approx(1.0105).epsilon(1e-4));
    CHECK(j["series"]["N"] == 32);
    CHECK(j["residual_norm"].get<double>() <= 1e-12);

    REQUIRE(run("profile --k 1 --a 0", d) == 0);
    CHECK(json_file(d / "profile.json")["c"].get<double>() == 1.0);

    REQUIRE(run("profile --sweep 0.001:0.02:8 --fit", d) == 0);
    const Json fit = json_file(d / "profile_fit.json");
    CHECK(fit["fit"]["c2"].get<double>() == Approx(105.0).epsilon(0.005));
    const std::string csv = slurp(d / "profile_errors.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 8);
}

TEST_CASE("spectrum: verdict, flat case and single slice")
{
    const auto d = scratch("spectrum");
    REQUIRE(run("spectrum --k 1 --a 0.02 --grid 401", d) == 0);
    const Json j = json_file(d / "stability.json");
    CHECK(j["verdict"] == "stable");
    CHECK(j["grid"]["points"] == 401);
    CHECK(j["quadfold_mismatch"].get<double>() <= 1e-8);

    REQUIRE(run("spectrum --a 0 --grid 21", d) == 0);
    CHECK(json_file(d / "stability.json")["max_re"].get<double>() <= 1e-12);

    REQUIRE(run("spectrum --xi 0", d) == 0);
    std::istringstream csv(slurp(d / "spectrum.csv"));
    std::string line;
    std::getline(csv, line);
    std::getline(csv, line);
    CHECK(line == "xi,re,im");
    int rows = 0;
    while (std::getline(csv, line)) {
        CHECK(line.rfind("0,", 0) == 0);
        ++rows;
    }
    CHECK(rows == 129);
}

TEST_CASE("reduced: slope, origin and appendix")
{
    const auto d = scratch("reduced");
    REQUIRE(run("reduced --k 1 --a 0.02 --xi 0.05", d) == 0);
    const Json j = json_file(d / "reduced.json");
    CHECK(j["slopes"]["error_B"].get<double>() == Approx(3.0).epsilon(0.13));
    CHECK(j["model"].contains("B_num"));
    CHECK(j["discriminant"]["delta"].get<double>() > 0);

    REQUIRE(run("reduced --a 0 --xi 0", d) == 0);
    const Json z = json_file(d / "reduced.json")["model"]["B_num"];
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            CHECK(std::abs(z["re"][r][c].get<double>()) <= 1e-14);
            CHECK(std::abs(z["im"][r][c].get<double>()) <= 1e-14);
        }

    REQUIRE(run("reduced --check-appendix", d) == 0);
    CHECK(json_file(d / "reduced.json")["appendix"]["pass"] == true);
}

TEST_CASE("evolve: unperturbed trace, short growth run, dt study")
{
    const auto d = scratch("evolve");
    REQUIRE(run("evolve --epsilon 0 --T 1 --N 32 --dt 1e-3", d) == 0);
    std::istringstream csv(slurp(d / "growth.csv"));
    std::string line;
    std::getline(csv, line);
    std::getline(csv, line);
    CHECK(line == "t,d,sup");
    while (std::getline(csv, line)) {
        const double dist = std::strtod(line.substr(line.find(',') + 1).c_str(), nullptr);
        CHECK(dist <= 1e-9);
    }

    REQUIRE(run("evolve --k 1 --a 0.02 --T 2 --seed 7", d) == 0);
    const Json g = json_file(d / "evolve.json");
    CHECK(g["seed"] == 7);
    CHECK(g["growth_factor"].get<double>() < 10.0);

    REQUIRE(run("evolve --dt-study --N 32", d) == 0);
    const Json s = json_file(d / "dt_study.json");
    for (int i = 1; i < 3; ++i) CHECK(s["rows"][i]["ratio"].get<double>() == Approx(16.0).epsilon(0.25));
}

TEST_CASE("outputs are deterministic and carry the manifest hash")
{
    const auto d1 = scratch("det1");
    const auto d2 = scratch("det2");
    REQUIRE(run("spectrum --a 0.03 --grid 21 --N 32 --json --csv --svg", d1, "CDGSK_WORKERS=1") == 0);
    REQUIRE(run("spectrum --a 0.03 --grid 21 --N 32 --json --csv --svg", d2, "CDGSK_WORKERS=3") == 0);
    const Json m = json_file(d1 / "manifest.json");
    const std::string hash = m["manifest_hash"];
    CHECK(m["version"] == cdgsk::artifact_version());
    CHECK(m["config"]["a"].get<double>() == 0.03);
    for (const char* f : {"manifest.json", "stability.json", "spectrum.csv", "spectrum.svg"}) {
        CAPTURE(f);
        CHECK(slurp(d1 / f) == slurp(d2 / f));
        CHECK(slurp(d1 / f).find(hash) != std::string::npos);
    }
}

TEST_CASE("output selectors")
{
    const auto d = scratch("selectors");
    REQUIRE(run("spectrum --grid 3 --N 16 --csv", d) == 0);
    CHECK(fs::exists(d / "spectrum.csv"));
    CHECK_FALSE(fs::exists(d / "stability.json"));
    CHECK_FALSE(fs::exists(d / "spectrum.svg"));
    CHECK(fs::exists(d / "manifest.json"));
}

TEST_CASE("config file merges under command-line flags")
{
    const auto d = scratch("config");
    {
        std::ofstream f(d / "run.toml");
        f << "[profile]\na = 0.02\nk = 2.0\n";
    }
    const std::string cfg = "--config '" + (d / "run.toml").string() + "' ";
    REQUIRE(run(cfg + "profile", d) == 0);
    Json j = json_file(d / "profile.json");
    CHECK(j["a"].get<double>() == 0.02);
    CHECK(j["k"].get<double>() == 2.0);
    REQUIRE(run(cfg + "profile --a 0.01", d) == 0);
    j = json_file(d / "profile.json");
    CHECK(j["a"].get<double>() == 0.01);
    CHECK(j["k"].get<double>() == 2.0);
}

TEST_CASE("exit codes and machine-readable errors")
{
    const auto d = scratch("errors");
    CHECK(run("profile --a 0.5", d) == 2);
    const Json e = Json::parse(slurp(d / "stderr.txt"));
    CHECK(e["error"] == "ValidationError");
    CHECK(e["exit_code"] == 2);

    CHECK(run("spectrum --grid 10", d) == 2);
    CHECK(run("profile --a notanumber", d) == 2);
    CHECK(run("", d) == 2);
    CHECK(run("spectrum --grid 3", d, "CDGSK_WORKERS=zero") == 2);

    // two eigenvalues inside the projector circle
    CHECK(run("reduced --a 0 --xi 0.5", d) == 3);
    CHECK(Json::parse(slurp(d / "stderr.txt"))["error"] == "WrongRank");

    CHECK(run("--help", d) == 0);
}
