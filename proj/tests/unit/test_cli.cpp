#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zeta_heat/cli.hpp"
#include "zeta_heat/zeros.hpp"

using namespace zeta_heat;
using namespace zeta_heat::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "zeta-heat");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

fs::path small_zero_file() {
    const auto path = fs::temp_directory_path() / ("zeta-heat-cli-" + std::to_string(::getpid()) + ".txt");
    std::ofstream out(path);
    for (std::size_t i = 0; i < 10; ++i) out << zeros::bundled_zeros().decimal_text[i] << '\n';
    return path;
}

}  // namespace

TEST_CASE("grid syntax") {
    CHECK(parse_grid("0.5") == std::vector<double>{0.5});
    CHECK(parse_grid("1,2,3") == std::vector<double>{1, 2, 3});
    const auto log_grid = parse_grid("100:10000:log:50");
    REQUIRE(log_grid.size() == 50);
    CHECK(log_grid.front() == 100.0);
    CHECK(log_grid.back() == 10000.0);
    CHECK(log_grid[1] / log_grid[0] == doctest::Approx(std::pow(100.0, 1.0 / 49)));
    CHECK(parse_grid("1:2:lin:3") == std::vector<double>{1, 1.5, 2});
    for (const char* bad : {"", "abc", "1e-4x", "1:2:cubic:3", "1:2:lin", "1:2:lin:0", "0", "-1", "0:1:log:3", "1,,2"})
        CHECK_THROWS_AS(parse_grid(bad), UsageError);
}

TEST_CASE("argument parsing") {
    const auto d = parse_args({"discrepancy", "--t", "1e-4", "--zeros-file", "zeros.txt", "--precision", "standard"});
    CHECK(d.subcommand == Subcommand::discrepancy);
    CHECK(d.precision == heat_trace::PrecisionMode::extended);
    CHECK(d.zeros_path == fs::path("zeros.txt"));

    const auto c = parse_args({"coeffs", "--order", "20", "--format", "csv"});
    CHECK(c.subcommand == Subcommand::coeffs);
    CHECK(c.order == 20u);
    CHECK(c.format == OutputFormat::csv);

    const auto t = parse_args({"trace", "--a", "100:10000:log:50"});
    CHECK(t.grid.size() == 50);
    CHECK(t.axis == GridAxis::a);
    CHECK(t.t_values().front() == doctest::Approx(0.01));
    CHECK(t.t_values().back() == doctest::Approx(1e-4));

    const auto s = parse_args({"trace", "--t", "0.5", "--precision", "standard", "--jobs", "3", "--no-tail"});
    CHECK(s.precision == heat_trace::PrecisionMode::standard);
    CHECK(s.jobs == 3);
    CHECK(s.no_tail);

    CHECK_THROWS_AS(parse_args({"trace", "--t", "0.1", "--a", "10"}), UsageError);
    CHECK_THROWS_AS(parse_args({"trace"}), UsageError);
    CHECK_THROWS_AS(parse_args({"trace", "--t", "abc"}), UsageError);
    CHECK_THROWS_AS(parse_args({"trace", "--t", "0.1", "--bogus"}), UsageError);
    CHECK_THROWS_AS(parse_args({"frobnicate"}), UsageError);
    CHECK_THROWS_AS(parse_args({}), UsageError);
    CHECK_THROWS_AS(parse_args({"trace", "--t", "0.1", "--format", "xml"}), UsageError);
    CHECK_THROWS_AS(parse_args({"trace", "--t", "0.1", "--zeros-file", "a", "--provider", "odlyzko"}), UsageError);
}

TEST_CASE("subcommands run") {
    const auto coeffs = invoke({"coeffs", "--order", "2"});
    CHECK(coeffs.status == kExitOk);
    CHECK(coeffs.out == "n,a_exact,a_float,b_exact,b_float\n0,-1/4,-0.25,1/4,0.25\n"
                        "1,1/24*pi^-1/2,0.023507899314489846,-1/48,-0.020833333333333332\n"
                        "2,1/16,0.0625,-1/32,-0.03125\n");

    const auto verify = invoke({"verify", "--t", "0.1"});
    CHECK(verify.status == kExitOk);
    const auto j = nlohmann::json::parse(verify.out);
    CHECK(std::abs(j["residual"].get<double>()) <= 1e-9);

    const auto fig = invoke({"figure", "--kind", "discrepancy_vs_a", "--a", "100:10000:log:5"});
    CHECK(fig.status == kExitOk);
    std::istringstream lines(fig.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "a,value");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::stod(line.substr(line.find(',') + 1)) < 0.0);
    }
    CHECK(rows == 5);

    const auto json = invoke({"trace", "--t", "0.01,0.1", "--format", "json"});
    CHECK(json.status == kExitOk);
    CHECK(nlohmann::json::parse(json.out).size() == 2);

    CHECK(invoke({"expansion", "--t", "0.01", "--order", "5"}).status == kExitOk);
    CHECK(invoke({"counting", "--t", "1e-3,1e-2"}).status == kExitOk);
    CHECK(invoke({"discrepancy", "--a", "1e4"}).out.starts_with("t,discrepancy\n0.0001,-2.5"));
}

TEST_CASE("output is deterministic") {
    const auto a = invoke({"trace", "--a", "10:1000:log:7", "--jobs", "1"});
    const auto b = invoke({"trace", "--a", "10:1000:log:7", "--jobs", "4"});
    CHECK(a.status == kExitOk);
    CHECK(a.out == b.out);

    const auto file = fs::temp_directory_path() / ("zeta-heat-out-" + std::to_string(::getpid()) + ".csv");
    CHECK(invoke({"trace", "--a", "10:1000:log:7", "--output", file.string()}).out.empty());
    std::ifstream in(file);
    std::stringstream written;
    written << in.rdbuf();
    CHECK(written.str() == a.out);
    fs::remove(file);
}

TEST_CASE("exit statuses") {
    const auto path = small_zero_file();
    const auto coverage = invoke({"trace", "--t", "1e-4", "--zeros-file", path.string(), "--no-tail"});
    CHECK(coverage.status == kExitCoverage);
    CHECK(coverage.err.starts_with("error: coverage: "));
    CHECK(coverage.err.find('\n') == coverage.err.size() - 1);
    CHECK(invoke({"trace", "--t", "1e-4", "--zeros-file", path.string()}).status == kExitOk);
    fs::remove(path);

    const auto usage = invoke({"trace", "--t", "0.1", "--a", "10"});
    CHECK(usage.status == kExitValidation);
    CHECK(usage.err.starts_with("error: usage: "));
    CHECK(invoke({"trace", "--t", "0.1", "--zeros-file", "/nonexistent"}).status == kExitValidation);
    CHECK(invoke({"counting", "--t", "2"}).status == kExitValidation);
    CHECK(invoke({"trace", "--t", "0.1", "--provider", "nowhere"}).status == kExitValidation);

    const auto accuracy = invoke({"verify", "--t", "50"});
    CHECK(accuracy.status == kExitAccuracy);
    CHECK(accuracy.err.starts_with("error: accuracy: "));

    const auto help = invoke({"trace", "--help"});
    CHECK(help.status == kExitOk);
    CHECK(help.out.find("--zeros-file") != std::string::npos);
}
