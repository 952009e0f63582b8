#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "zeta_heat/errors.hpp"
#include "zeta_heat/zeros.hpp"

using namespace zeta_heat;
using namespace zeta_heat::zeros;
namespace fs = std::filesystem;

namespace {

ZeroList parse(const std::string& text) {
    std::istringstream in(text);
    return parse_zeros(in, "test");
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ValidationError& e) {
        return e.line();
    }
    return 0;
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("zeta-heat-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Serves the first ordinates of the bundled table over plain HTTP.
class LocalProvider {
public:
    LocalProvider() {
        std::ostringstream body;
        body << "# test provider\n";
        for (std::size_t i = 0; i < 50; ++i) body << "  " << bundled_zeros().decimal_text[i] << "\n";
        body_ = body.str();
        server_.Get("/zeros", [this](const httplib::Request&, httplib::Response& res) {
            ++hits;
            res.set_content(body_, "text/plain");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~LocalProvider() {
        server_.stop();
        thread_.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/zeros"; }
    std::string dead_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/missing"; }

    std::atomic<int> hits{0};

private:
    httplib::Server server_;
    std::string body_;
    int port_ = 0;
    std::thread thread_;
};

}  // namespace

TEST_CASE("parsing and validation") {
    const auto two = parse("# header\n14.134725141734693790457\n\n21.022039638771554992628\n");
    CHECK(two.size() == 2);
    CHECK(two.max_height == doctest::Approx(21.022039638771555));
    CHECK(two.precision_digits == 21);

    CHECK(error_line("21.0\n14.1\n") == 2);
    CHECK(error_line("14.1347\n21.0\n20.9\n") == 3);
    CHECK(error_line("14.2\n21.0\n") == 1);
    CHECK(error_line("14.1347\n1e2\n") == 2);
    CHECK(error_line("14.1347\n-3\n") == 2);
    CHECK(error_line("14.1347\n2,5\n") == 2);
    CHECK_THROWS_AS(parse(""), ValidationError);
    CHECK_THROWS_AS(parse("# only comments\n"), ValidationError);
    CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt"), ValidationError);

    const auto repeated = parse("14.134725\n21.022039\n21.022039\n");
    CHECK(repeated.size() == 3);
}

TEST_CASE("bundled table") {
    const auto& z = bundled_zeros();
    REQUIRE(z.size() >= 1000);
    CHECK(z.precision_digits >= 25);
    // Published high-precision values of the first two ordinates.
    const auto rho1 = *numerics::DoubleDouble::from_decimal("14.134725141734693790457251983562470270784257115699");
    const auto rho2 = *numerics::DoubleDouble::from_decimal("21.022039638771554992628479593896902777334340524903");
    CHECK(std::abs((z.ordinates[0] - rho1).to_double()) < 1e-27);
    CHECK(std::abs((z.ordinates[1] - rho2).to_double()) < 1e-27);
    for (std::size_t i = 1; i < z.size(); ++i) REQUIRE(z.ordinates[i - 1] < z.ordinates[i]);
    CHECK(z.max_height == z.ordinates.back().to_double());
}

TEST_CASE("export round-trips exactly") {
    const auto& z = bundled_zeros();
    std::ostringstream out;
    export_zeros(z, out);
    std::istringstream in(out.str());
    const auto again = parse_zeros(in, z.source_id);
    CHECK(again.ordinates == z.ordinates);
    CHECK(again.decimal_text == z.decimal_text);
    std::ostringstream out2;
    export_zeros(again, out2);
    CHECK(out2.str() == out.str());
}

TEST_CASE("counting function") {
    const auto& z = bundled_zeros();
    CHECK(counting_function(z, 14.0) == 0);
    CHECK(counting_function(z, 15.0) == 1);
    CHECK(counting_function(z, 100.0) == 29);
    CHECK(counting_function(z, z.ordinates[4].to_double()) == 5);
    CHECK_THROWS_AS(counting_function(z, z.max_height + 1.0), CoverageError);

    CHECK(std::abs(model_counting(2 * M_PI * M_E)) < 1e-14);
    CHECK(model_counting(100.0) == doctest::Approx(28.127).epsilon(1e-4));
    CHECK(model_counting(600.0) == doctest::Approx(339.9).epsilon(3e-4));

    std::size_t prev = 0;
    for (double e = 10.0; e <= z.max_height; e *= 1.01) {
        const std::size_t n = counting_function(z, e);
        CHECK(n >= prev);
        prev = n;
        CHECK(std::abs(static_cast<double>(n) - model_counting(e)) <= 8.0 * std::log(e));
    }
}

TEST_CASE("truncation") {
    const auto& z = bundled_zeros();
    const auto t = truncate_zeros(z, 50.0);
    CHECK(t.size() == counting_function(z, 50.0));
    CHECK(t.max_height <= 50.0);
    CHECK_THROWS_AS(truncate_zeros(z, 10.0), CoverageError);
}

TEST_CASE("remote providers with caching") {
    LocalProvider server;
    const auto cache = scratch_dir("cache");

    const auto first = fetch_remote(server.url(), 20, cache);
    CHECK(first.size() == 20);
    CHECK(server.hits == 1);
    const auto second = fetch_remote(server.url(), 20, cache);
    CHECK(server.hits == 1);
    std::ostringstream a, b;
    export_zeros(first, a);
    export_zeros(second, b);
    CHECK(a.str() == b.str());
    CHECK(second.ordinates == std::vector(bundled_zeros().ordinates.begin(), bundled_zeros().ordinates.begin() + 20));

    // A different count is a different cache entry.
    CHECK(fetch_remote(server.url(), 10, cache).size() == 10);
    CHECK(server.hits == 2);

    try {
        fetch_remote(server.url(), 80, cache);
        FAIL("expected a bounded-result error");
    } catch (const BoundedResultError& e) {
        CHECK(e.max_available() == 50);
    }
    try {
        fetch_remote("odlyzko", 200000, cache);
        FAIL("expected a bounded-result error");
    } catch (const BoundedResultError& e) {
        CHECK(e.max_available() == 100000);
    }

    // Corrupt the cached entry.
    fs::path entry;
    for (const auto& f : fs::directory_iterator(cache))
        if (f.path().extension() == ".txt" && f.path().string().find("-20.txt") != std::string::npos) entry = f.path();
    REQUIRE(!entry.empty());
    std::ofstream(entry, std::ios::app) << "99999.0\n";
    CHECK_THROWS_AS(fetch_remote(server.url(), 20, cache), IntegrityError);
    CHECK_FALSE(fs::exists(entry));
    CHECK(fetch_remote(server.url(), 20, cache).size() == 20);
    CHECK(server.hits == 4);

    CHECK_THROWS_AS(fetch_remote(server.dead_url(), 5, cache), TransportError);
    CHECK_THROWS_AS(fetch_remote("no-such-provider", 5, cache), ValidationError);
    CHECK_THROWS_AS(fetch_remote("http://127.0.0.1:1/zeros", 5, cache), TransportError);
    fs::remove_all(cache);
}

TEST_CASE("cache directory override") {
    ::setenv("ZETA_HEAT_CACHE", "/tmp/zeta-heat-override", 1);
    CHECK(default_cache_dir() == fs::path("/tmp/zeta-heat-override"));
    ::unsetenv("ZETA_HEAT_CACHE");
    CHECK(default_cache_dir().filename() == "zeta-heat");
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
