#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <httplib.h>
#include <openssl/evp.h>

#include "zeta_heat/errors.hpp"
#include "zeta_heat/zeros.hpp"

namespace zeta_heat::zeros {
namespace {

// One whitespace-separated token per ordinate; '#' lines skipped.
std::vector<std::string> token_adapter(std::string_view body) {
    std::vector<std::string> out;
    std::istringstream in{std::string(body)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string token;
        if (!(fields >> token) || token.front() == '#') continue;
        out.push_back(token);
    }
    return out;
}

struct ParsedUrl {
    std::string scheme_host_port;
    std::string path;
};

ParsedUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ValidationError("not a URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string http_get(const std::string& url) {
    const ParsedUrl parts = split_url(url);
    httplib::Client client(parts.scheme_host_port);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    client.set_follow_location(true);
    auto res = client.Get(parts.path);
    if (!res) throw TransportError("GET " + url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw TransportError("GET " + url + " returned HTTP " + std::to_string(res->status));
    return res->body;
}

std::string cache_key(const std::string& provider) {
    std::string key;
    for (char c : provider) key.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return key;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// RAII exclusive flock on <dir>/.lock.
class CacheLock {
public:
    explicit CacheLock(const std::filesystem::path& dir) {
        const auto path = (dir / ".lock").string();
        fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0) throw TransportError("cannot lock cache " + path);
    }
    ~CacheLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    CacheLock(const CacheLock&) = delete;
    CacheLock& operator=(const CacheLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw IntegrityError("SHA-256 computation failed");
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

const std::vector<ZeroProvider>& known_providers() {
    static const std::vector<ZeroProvider> providers = {
        // First 100,000 zeros, accurate to within 3e-9.
        {"odlyzko", "https://www-users.cse.umn.edu/~odlyzko/zeta_tables/zeros1", 100000, token_adapter},
    };
    return providers;
}

ZeroProvider resolve_provider(const std::string& source) {
    for (const auto& p : known_providers())
        if (p.name == source) return p;
    if (source.starts_with("http://") || source.starts_with("https://")) return {source, source, 0, token_adapter};
    throw ValidationError("unknown zero provider '" + source + "'");
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("ZETA_HEAT_CACHE"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "zeta-heat";
    return std::filesystem::temp_directory_path() / "zeta-heat";
}

ZeroList fetch_remote(const std::string& source, std::size_t count, const std::filesystem::path& cache_dir) {
    if (count == 0) throw ValidationError("fetch_remote: count must be positive");
    const ZeroProvider provider = resolve_provider(source);
    if (provider.max_count != 0 && count > provider.max_count)
        throw BoundedResultError("provider '" + provider.name + "' supplies at most " +
                                     std::to_string(provider.max_count) + " ordinates",
                                 provider.max_count);

    std::filesystem::create_directories(cache_dir);
    const std::string stem = cache_key(provider.name) + "-" + std::to_string(count);
    const auto data_path = cache_dir / (stem + ".txt");
    const auto sum_path = cache_dir / (stem + ".sha256");

    if (std::filesystem::exists(data_path)) {
        const std::string body = read_file(data_path);
        std::string expected = std::filesystem::exists(sum_path) ? read_file(sum_path) : std::string();
        while (!expected.empty() && std::isspace(static_cast<unsigned char>(expected.back()))) expected.pop_back();
        if (expected != sha256_hex(body)) {
            CacheLock lock(cache_dir);
            std::filesystem::remove(data_path);
            std::filesystem::remove(sum_path);
            throw IntegrityError("cache entry " + data_path.string() + " failed its checksum and was evicted");
        }
        std::istringstream in(body);
        return parse_zeros(in, provider.name);
    }

    const std::string response = http_get(provider.url);
    std::vector<std::string> tokens = provider.adapter(response);
    if (tokens.size() < count)
        throw BoundedResultError("provider '" + provider.name + "' returned only " + std::to_string(tokens.size()) +
                                     " ordinates",
                                 tokens.size());
    tokens.resize(count);

    std::string body;
    for (const auto& t : tokens) body += t + "\n";
    std::istringstream in(body);
    ZeroList list = parse_zeros(in, provider.name);

    std::ostringstream normalized;
    export_zeros(list, normalized);
    const std::string bytes = normalized.str();
    {
        CacheLock lock(cache_dir);
        const auto tmp = cache_dir / (stem + ".tmp");
        {
            std::ofstream out(tmp, std::ios::binary);
            out << bytes;
        }
        std::filesystem::rename(tmp, data_path);
        std::ofstream(sum_path) << sha256_hex(bytes) << '\n';
    }
    return list;
}

}  // namespace zeta_heat::zeros
