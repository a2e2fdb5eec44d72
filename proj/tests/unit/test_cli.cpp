#include <doctest.h>

#include "cli_app.hpp"
#include "tfim/ring.hpp"
#include "tfim/table_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <regex>
#include <sstream>

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tfim-cli");
    std::ostringstream out;
    std::ostringstream err;
    const int code = tfim::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

double energy_of(const std::string& text) {
    std::smatch m;
    REQUIRE(std::regex_search(text, m, std::regex("energy: (\\S+)")));
    return std::stod(m[1]);
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "tfim_cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("ground-state energies") {
    Outcome r = cli({"ground-state", "--n", "4", "--j", "1", "--b", "0"});
    CHECK(r.code == 0);
    CHECK(std::abs(energy_of(r.out) + 4.0) < 1e-11);
    r = cli({"ground-state", "--n", "4", "--j", "0", "--b", "1"});
    CHECK(std::abs(energy_of(r.out) + 4.0) < 1e-11);
    r = cli({"ground-state", "--n", "6", "--j", "1", "--b", "1"});
    CHECK(std::abs(energy_of(r.out) - tfim::ground_state({6, 1.0, 1.0}).energy) < 1e-12);
}

TEST_CASE("measures records") {
    Outcome r = cli({"measures", "--n", "6", "--b", "0", "--pair", "1,2"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc["discord"].get<double>()) < 1e-8);
    CHECK(std::abs(doc["mid"].get<double>() - 1.0) < 1e-8);
    CHECK(std::abs(doc["amid"].get<double>()) < 1e-6);
    CHECK(doc.contains("converged"));

    r = cli({"measures", "--n", "4", "--global", "--input", "ghz", "--threads", "1"});
    CHECK(r.code == 0);
    doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc["gd"].get<double>() - 1.0) < 1e-6);
    CHECK(doc["converged"].get<bool>());

    r = cli({"measures", "--n", "5", "--estats", "--input", "product"});
    doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc["mean"].get<double>()) < 1e-12);
    CHECK(std::abs(doc["variance"].get<double>()) < 1e-12);
    CHECK(doc["manifest"]["command"] == "measures");
}

TEST_CASE("sweep writes a one-row table with its manifest") {
    const auto path = scratch("one.csv");
    std::filesystem::remove(path);
    Outcome r = cli({"sweep", "--n", "3", "--ratio-grid", "1", "--out", path.string(), "--threads", "1"});
    CHECK(r.code == 0);
    const tfim::SweepTable t = tfim::read_csv(path);
    CHECK(t.rows.size() == 1);
    CHECK(t.meta.n_sites == 3);
    CHECK(std::filesystem::exists(path.string() + ".manifest.json"));

    const auto jpath = scratch("one.json");
    r = cli({"sweep", "--n", "3", "--ratio-grid", "0.5,1", "--measures", "estats", "--format", "json", "--out",
             jpath.string()});
    CHECK(r.code == 0);
    CHECK(tfim::read_json(jpath).rows.size() == 2);

    r = cli({"fit", "--from", path.string(), "--points", "2:1"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["points"].size() == 2);
}

TEST_CASE("fit with the reference peak heights") {
    const Outcome r = cli({"fit", "--reference"});
    CHECK(r.code == 0);
    CHECK(std::abs(nlohmann::json::parse(r.out)["slope"].get<double>() - 0.693461) < 5e-3);
}

TEST_CASE("toeplitz command") {
    const Outcome r = cli({"toeplitz", "--lambda", "1", "--s", "1"});
    CHECK(r.code == 0);
    CHECK(std::abs(nlohmann::json::parse(r.out)["chi_xx"].get<double>() - 2.0 / std::acos(-1.0)) < 1e-10);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"ground-state", "--n", "40"}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"ground-state", "--n", "4", "--j", "0", "--b", "0"}).code == 1);
    CHECK(cli({"measures", "--n", "4", "--pair", "1,1"}).code == 1);
    CHECK(cli({"measures", "--n", "6", "--b", "1", "--global", "--max-evals", "20", "--restarts", "2"}).code == 1);
}

}
