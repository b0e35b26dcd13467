#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gridfreq/cli.hpp"
#include "support/helpers.hpp"

namespace fs = std::filesystem;
namespace gt = gridfreq::testing;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = gridfreq::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "gridfreq_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string fixture3() { return gt::data_path("fixture3.net").string(); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            auto comma = line.find(',', pos);
            cells.push_back(
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("simulate emits agreeing analytic and rk4 blocks") {
    const RunResult res = run_cli({"simulate", fixture3(), "--samples", "201"});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 1 + 2 * 201);
    CHECK(rows[0] == std::vector<std::string>{"t", "omega_1", "omega_2", "omega_3", "source"});

    double peak = 0.0, worst = 0.0;
    for (int i = 0; i < 201; ++i) {
        const auto& analytic = rows[1 + i];
        const auto& rk4 = rows[1 + 201 + i];
        REQUIRE(analytic[4] == "analytic");
        REQUIRE(rk4[4] == "rk4");
        REQUIRE(analytic[0] == rk4[0]);
        for (int l = 1; l <= 3; ++l) {
            const double a = std::stod(analytic[l]);
            const double b = std::stod(rk4[l]);
            peak = std::max(peak, std::abs(b));
            worst = std::max(worst, std::abs(a - b));
        }
    }
    CHECK(worst <= 1e-6 * std::max(1.0, peak));
}

TEST_CASE("spectrum lists one row per state") {
    const RunResult res = run_cli({"spectrum", fixture3()});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 1 + 12);
    CHECK(rows[0] == std::vector<std::string>{"re", "im", "is_zero_mode"});
    int zero_modes = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][2] == "1") ++zero_modes;
    }
    CHECK(zero_modes == 1); // ring: one independent cycle
}

TEST_CASE("bound rows dominate the sampled trajectory") {
    const RunResult res = run_cli({"bound", fixture3(), "--samples", "101"});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 1 + 101 * 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double abs_omega = std::stod(rows[i][2]);
        const double m1 = std::stod(rows[i][3]);
        const double m2 = std::stod(rows[i][4]);
        const double m = std::stod(rows[i][5]);
        CHECK(m == doctest::Approx(std::min(m1, m2)).epsilon(1e-12));
        CHECK(m >= abs_omega - 1e-9);
    }
}

TEST_CASE("nadir of an undisturbed network is zero") {
    const fs::path dir = temp_dir();
    const fs::path net = dir / "quiet.net";
    {
        std::ofstream f(net);
        f << "bus 1 m=1 d=1 tg=1 tb=1 pd=0\n"
          << "bus 2 m=1 d=1 tg=1 tb=1 pd=0\n"
          << "bus 3 m=1 d=1 tg=1 tb=1 pd=0\n"
          << "line 1 2 b=1\nline 2 3 b=1\nline 3 1 b=1\n";
    }
    const RunResult res = run_cli({"nadir", net.string(), "--r", "1,1,1"});
    REQUIRE(res.code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["F"].get<double>() <= 1e-12);
    CHECK(doc["per_bus"].size() == 3);
}

TEST_CASE("optimize reports a JSON tuning result") {
    const RunResult res =
        run_cli({"optimize", fixture3(), "--objective", "G", "--budget", "2000"});
    REQUIRE(res.code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["objective"] == "G");
    CHECK(doc["r_star"].size() == 3);
    CHECK(doc["F_r_star"].get<double>() < doc["F_r0"].get<double>());
    CHECK(doc["evaluations"].get<long>() > 0);
    CHECK(doc["trace"].size() == doc["evaluations"].get<std::size_t>());
}

TEST_CASE("exit codes") {
    SUBCASE("missing file") {
        const RunResult res = run_cli({"simulate", "/nonexistent/x.net"});
        CHECK(res.code == 1);
        CHECK(res.err.find("\"error\"") != std::string::npos);
    }
    SUBCASE("unknown flag") {
        const RunResult res = run_cli({"simulate", fixture3(), "--bogus"});
        CHECK(res.code == 1);
        CHECK(res.err.find("\"usage\"") != std::string::npos);
    }
    SUBCASE("malformed document") {
        const fs::path net = temp_dir() / "broken.net";
        {
            std::ofstream f(net);
            f << "bus 1 m=1 d=0 tg=1 tb=1 pd=1\n";
        }
        const RunResult res = run_cli({"nadir", net.string()});
        CHECK(res.code == 1);
        CHECK(res.err.find("non-positive parameter d") != std::string::npos);
    }
    SUBCASE("infeasible starting gains") {
        const fs::path net = temp_dir() / "weak.net";
        {
            std::ofstream f(net);
            f << "bus 1 m=1 d=0.05 tg=1 tb=1 pd=0.5\n"
              << "bus 2 m=1 d=0.05 tg=1 tb=1 pd=0\n"
              << "line 1 2 b=2\n";
        }
        const RunResult res = run_cli({"optimize", net.string(), "--r0", "5,5"});
        CHECK(res.code == 2);
        CHECK(res.err.find("\"infeasible\"") != std::string::npos);
    }
    SUBCASE("defective system matrix") {
        // Matching turbine/governor lags at zero gain leave a Jordan block.
        const fs::path net = temp_dir() / "defective.net";
        {
            std::ofstream f(net);
            f << "bus 1 m=1 d=1 tg=0.5 tb=0.5 pd=1\n"
              << "bus 2 m=1 d=1 tg=0.5 tb=0.5 pd=0\n"
              << "line 1 2 b=2\n";
        }
        const RunResult res = run_cli({"spectrum", net.string(), "--r", "0,0"});
        CHECK(res.code == 3);
        CHECK(res.err.find("\"numerical\"") != std::string::npos);
    }
    SUBCASE("help succeeds") {
        const RunResult res = run_cli({"--help"});
        CHECK(res.code == 0);
        CHECK(res.out.find("simulate") != std::string::npos);
    }
}

TEST_CASE("json network input is accepted") {
    const fs::path net = temp_dir() / "two.json";
    {
        std::ofstream f(net);
        f << R"({"buses": [
                 {"id": 1, "m": 1, "d": 1, "tg": 1, "tb": 1, "pd": 1},
                 {"id": 2, "m": 1, "d": 1, "tg": 1, "tb": 1, "pd": 0}],
                "lines": [{"from": 1, "to": 2, "b": 1}]})";
    }
    const RunResult res = run_cli({"spectrum", net.string()});
    CHECK(res.code == 0);
    CHECK(parse_csv(res.out).size() == 1 + 7);
}

TEST_CASE("compare emits the table and a complete manifest") {
    const fs::path dir = temp_dir();
    const fs::path out1 = dir / "compare1.csv";
    const fs::path out2 = dir / "compare2.csv";
    const fs::path batch = dir / "batch.csv";
    const fs::path manifest = dir / "compare.manifest.json";

    const std::vector<std::string> base{
        "compare", fixture3(),      "--generate", "3",        "--seed", "7",
        "--lo",    "-0.8",          "--hi",       "0.8",      "--save", batch.string(),
        "--budget", "400",          "--manifest", manifest.string()};

    auto with_out = [&](const fs::path& out) {
        std::vector<std::string> args = base;
        args.push_back("--out");
        args.push_back(out.string());
        return args;
    };

    REQUIRE(run_cli(with_out(out1)).code == 0);
    REQUIRE(run_cli(with_out(out2)).code == 0);

    const auto rows1 = parse_csv(read_file(out1));
    const auto rows2 = parse_csv(read_file(out2));
    REQUIRE(rows1.size() == 1 + 3 + 1); // header, three rows, mean
    REQUIRE(rows1[0].size() == 8);

    // Bitwise identical runs, timing columns excluded.
    REQUIRE(rows1.size() == rows2.size());
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        for (std::size_t c = 0; c + 2 < rows1[i].size(); ++c) {
            CHECK(rows1[i][c] == rows2[i][c]);
        }
    }

    // Tuning the estimate never loses to the starting gains.
    for (std::size_t i = 1; i < rows1.size(); ++i) {
        CHECK(std::stod(rows1[i][3]) <= std::stod(rows1[i][1]) + 1e-9);
    }

    // Manifest lists every artifact and they exist.
    const auto mdoc = nlohmann::json::parse(read_file(manifest));
    CHECK(mdoc["tool"] == "gridfreq");
    CHECK(mdoc["subcommand"] == "compare");
    REQUIRE(mdoc["artifacts"].size() == 2);
    CHECK(mdoc["artifacts"][0] == out2.string());
    CHECK(mdoc["artifacts"][1] == batch.string());
    CHECK(fs::exists(batch));
    CHECK(parse_csv(read_file(batch)).size() == 3);
}
