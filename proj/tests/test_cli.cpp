#include "doctest.h"

#include "maxlp/cli.hpp"
#include "maxlp/constants.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace maxlp;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    const std::string& cell(std::size_t row, const std::string& col) const {
        for (std::size_t k = 0; k < header.size(); ++k)
            if (header[k] == col) return rows.at(row).at(k);
        throw std::out_of_range("no column " + col);
    }
    double num(std::size_t row, const std::string& col) const {
        return std::stod(cell(row, col));
    }
};

Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream lines(text);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::istringstream cs(line);
        std::string cell;
        if (line.empty()) continue;
        while (std::getline(cs, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (first) {
            out.header = cells;
            first = false;
        } else {
            out.rows.push_back(cells);
        }
    }
    return out;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

} // namespace

TEST_CASE("constants subcommand") {
    auto path = temp_file("maxlp_test_constants.csv");
    cli::ConstantsOptions opt;
    opt.p_grid = {0.5, 0.1945};
    opt.out.out_path = path.string();
    CHECK(cli::run_constants(opt) == 0);

    auto csv = parse_csv(slurp(path));
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.cell(0, "schema_version") == "1");
    CHECK(csv.num(0, "p") == 0.5);
    CHECK(csv.num(0, "C") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(csv.num(0, "alpha") == doctest::Approx(1.0 + std::numbers::sqrt2).epsilon(1e-12));
    CHECK(std::fabs(csv.num(0, "residual_p0")) < 1e-12);

    // 17 significant digits, enough for an exact double round trip.
    CHECK(csv.cell(0, "p0").substr(0, 18) == "0.1945131147175661");
    CHECK(csv.cell(0, "p0").size() >= 19);
    CHECK(csv.num(0, "p0") == solve_p0());
    CHECK(csv.num(0, "c") == constant_c(Exponent(0.5)));

    // Just below the branch point the two maximal constants coincide,
    // and the CSV cells are identical strings.
    CHECK(csv.cell(1, "c") == csv.cell(1, "frak_c"));
    fs::remove(path);
}

TEST_CASE("constants with an empty grid emits only the header") {
    auto path = temp_file("maxlp_test_constants_empty.csv");
    cli::ConstantsOptions opt;
    opt.out.out_path = path.string();
    CHECK(cli::run_constants(opt) == 0);
    auto text = slurp(path);
    auto csv = parse_csv(text);
    CHECK(csv.rows.empty());
    CHECK(csv.header.front() == "schema_version");
    fs::remove(path);
}

TEST_CASE("constants as JSON mirrors the CSV") {
    auto cpath = temp_file("maxlp_test_constants2.csv");
    auto jpath = temp_file("maxlp_test_constants2.json");
    cli::ConstantsOptions opt;
    opt.p_grid = {0.3};
    opt.out.out_path = cpath.string();
    CHECK(cli::run_constants(opt) == 0);
    opt.out.format = "json";
    opt.out.out_path = jpath.string();
    CHECK(cli::run_constants(opt) == 0);

    auto csv = parse_csv(slurp(cpath));
    auto rows = nlohmann::json::parse(slurp(jpath));
    REQUIRE(rows.is_array());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["schema_version"] == 1);
    for (const auto& col : {"p", "alpha", "C", "c", "frak_c"}) {
        CAPTURE(col);
        CHECK(double(rows[0][col]) == doctest::Approx(csv.num(0, col)).epsilon(1e-16));
    }
    fs::remove(cpath);
    fs::remove(jpath);
}

TEST_CASE("verify subcommand exit codes") {
    auto path = temp_file("maxlp_test_verify.csv");

    cli::VerifyOptions ok;
    ok.ps = {0.3};
    ok.out.out_path = path.string();
    CHECK(cli::run_verify(ok) == 0);
    auto csv = parse_csv(slurp(path));
    CHECK(csv.rows.size() > 10);
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        CHECK(csv.cell(r, "pass") == "1");
        CHECK(csv.num(r, "points_checked") > 0);
    }

    // Understating the supremum constant must flip the exit code.
    cli::VerifyOptions bad = ok;
    bad.perturb = {{"c", -1e-3}};
    CHECK(cli::run_verify(bad) == 1);
    auto bcsv = parse_csv(slurp(path));
    bool any_fail = false;
    for (std::size_t r = 0; r < bcsv.rows.size(); ++r)
        if (bcsv.cell(r, "pass") == "0") any_fail = true;
    CHECK(any_fail);

    // The two-sided lemma needs p > 1/2 when selected explicitly.
    cli::VerifyOptions two = ok;
    two.lemma = "2";
    CHECK_THROWS_AS(cli::run_verify(two), std::domain_error);

    cli::VerifyOptions unknown = ok;
    unknown.perturb = {{"gamma", 0.1}};
    CHECK_THROWS_AS(cli::run_verify(unknown), std::domain_error);
    fs::remove(path);
}

TEST_CASE("simulate subcommand output and reproducibility") {
    auto p1 = temp_file("maxlp_test_sim_w1.csv");
    auto p4 = temp_file("maxlp_test_sim_w4.csv");

    cli::SimulateOptions opt;
    opt.thm = 2;
    opt.p = 0.3;
    opt.beta = 0.5;
    opt.delta = 0.5;
    opt.n = 50000;
    opt.seed = 42;
    opt.out.out_path = p1.string();
    CHECK(cli::run_simulate(opt) == 0);

    cli::SimulateOptions opt4 = opt;
    opt4.workers = 4;
    opt4.out.out_path = p4.string();
    CHECK(cli::run_simulate(opt4) == 0);
    CHECK(slurp(p1) == slurp(p4)); // byte identical across worker counts

    // Rerunning reproduces the bytes too.
    CHECK(cli::run_simulate(opt) == 0);
    auto text = slurp(p1);
    CHECK(text == slurp(p4));

    auto csv = parse_csv(text);
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.cell(0, "mode") == "exact");
    CHECK(csv.cell(0, "thm") == "2");
    CHECK(csv.num(0, "n") == 50000);
    CHECK(csv.cell(0, "step").empty());

    // The estimated ratio agrees with the exact law within 4 standard errors.
    double want = 1.5 * tail_integral_I2(0.5, Exponent(0.3));
    CHECK(std::fabs(csv.num(0, "ratio") - want) < 4.0 * csv.num(0, "ratio_stderr"));
    // And stays below the sharp constant's power at this sample size.
    CHECK(csv.num(0, "ratio") <
          csv.num(0, "sharp_constant_pow") + 4.0 * csv.num(0, "ratio_stderr"));
    fs::remove(p1);
    fs::remove(p4);
}

TEST_CASE("simulate with the walk oracle adds a second row") {
    auto path = temp_file("maxlp_test_sim_oracle.csv");
    cli::SimulateOptions opt;
    opt.thm = 1;
    opt.p = 0.15;
    opt.beta = 1.0;
    opt.delta = 1.0; // lattice-aligned barriers at this step size
    opt.n = 2000;
    opt.seed = 7;
    opt.oracle_step = 1e-2;
    opt.oracle_stop = 3;
    opt.out.out_path = path.string();
    CHECK(cli::run_simulate(opt) == 0);

    auto csv = parse_csv(slurp(path));
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.cell(0, "mode") == "exact");
    CHECK(csv.cell(1, "mode") == "walk");
    CHECK(csv.num(1, "step") == 1e-2);
    CHECK(csv.num(1, "stop_at_stage") == 3);
    double share = csv.num(1, "truncated_share");
    double want = 9.0 / 32.0; // P(sigma >= 3) at beta = delta = 1
    CHECK(std::fabs(share - want) < 4.0 * std::sqrt(want * (1.0 - want) / opt.n));
    CHECK(csv.cell(0, "truncated_share").empty());
    fs::remove(path);
}

TEST_CASE("simulate rejects bad requests") {
    cli::SimulateOptions opt;
    opt.n = 5;
    CHECK_THROWS_AS(cli::run_simulate(opt), std::domain_error);

    cli::SimulateOptions capped;
    capped.thm = 3;
    capped.p = 0.3; // two-sided construction needs p > 1/2
    CHECK_THROWS_AS(cli::run_simulate(capped), std::domain_error);

    cli::SimulateOptions oracle;
    oracle.thm = 2;
    oracle.oracle_step = 1e-3; // walk oracle only covers the first variant
    CHECK_THROWS_AS(cli::run_simulate(oracle), std::domain_error);
}

TEST_CASE("sharpness subcommand") {
    auto path = temp_file("maxlp_test_sharp.csv");
    cli::SharpnessOptions opt;
    opt.thm = 2;
    opt.p = 0.5;
    opt.beta_from = 0.9;
    opt.beta_to = 0.999;
    opt.beta_steps = 3;
    opt.out.out_path = path.string();
    CHECK(cli::run_sharpness(opt) == 0);

    auto csv = parse_csv(slurp(path));
    REQUIRE(csv.rows.size() == 3);
    double target = 1.0 + std::numbers::pi / 2.0;
    for (std::size_t r = 0; r < 3; ++r) {
        CHECK(csv.num(r, "sharp_constant_pow") == doctest::Approx(target).epsilon(1e-12));
        CHECK(csv.cell(r, "limit_tag") == "finite");
        CHECK(csv.cell(r, "K").empty());
        CHECK(csv.num(r, "ratio") ==
              doctest::Approx(csv.num(r, "numerator") / csv.num(r, "denominator"))
                  .epsilon(1e-12));
    }
    CHECK(csv.num(0, "beta") == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(csv.num(2, "beta") == doctest::Approx(0.999).epsilon(1e-15));
    CHECK(target - csv.num(2, "ratio") < 1e-3);

    // First construction above the threshold exponent: K-limit rows.
    cli::SharpnessOptions k = opt;
    k.thm = 1;
    k.beta_from = 2.0;
    k.beta_to = 5.0;
    k.beta_steps = 2;
    CHECK(cli::run_sharpness(k) == 0);
    auto kcsv = parse_csv(slurp(path));
    REQUIRE(kcsv.rows.size() == 2);
    CHECK(kcsv.cell(0, "limit_tag") == "K-limit");
    CHECK(kcsv.num(0, "K") == 100.0);
    CHECK(kcsv.num(0, "sharp_constant_pow") ==
          doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));

    cli::SharpnessOptions bad = opt;
    bad.thm = 3;
    bad.p = 0.4;
    CHECK_THROWS_AS(cli::run_sharpness(bad), std::domain_error);

    cli::SharpnessOptions steps = opt;
    steps.beta_steps = 0;
    CHECK_THROWS_AS(cli::run_sharpness(steps), std::domain_error);
    fs::remove(path);
}
