#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zeta_heat/numerics/double_double.hpp"

namespace zeta_heat::zeros {

using numerics::DoubleDouble;

/// Positive ordinates rho of zeros 1/2 + i rho of zeta, ascending, in
/// double-double precision. Multiplicity is expressed by repetition. The
/// decimal text each ordinate was parsed from is kept so exports are exact.
struct ZeroList {
    std::vector<DoubleDouble> ordinates;
    std::vector<std::string> decimal_text;
    unsigned precision_digits = 0;  ///< fewest fractional digits on any line
    double max_height = 0.0;        ///< last ordinate
    std::string source_id;

    std::size_t size() const noexcept { return ordinates.size(); }
    bool empty() const noexcept { return ordinates.empty(); }
};

/// Parses the zero file format: one plain decimal per line, ascending, '#'
/// starts a comment line, blank lines ignored. Throws ValidationError naming
/// the offending line.
ZeroList parse_zeros(std::istream& in, std::string source_id);
ZeroList load_zeros(const std::filesystem::path& path);

/// Writes the list in the zero file format; round-trips through parse_zeros.
void export_zeros(const ZeroList& zeros, std::ostream& out);

/// Ordinates up to and including `height`.
ZeroList truncate_zeros(const ZeroList& zeros, double height);

/// Number of ordinates in (0, E]. Throws CoverageError for E > max_height.
std::size_t counting_function(const ZeroList& zeros, double E);

/// Main term (E / 2pi)(log(E / 2pi) - 1) of the Riemann–von Mangoldt formula.
double model_counting(double E);

/// Location of the table shipped with the repository.
std::filesystem::path bundled_zeros_path();
/// Bundled table, loaded once.
const ZeroList& bundled_zeros();

// ---------------------------------------------------------------------------
// Remote providers

/// Turns a provider response body into decimal ordinate strings.
using ResponseAdapter = std::function<std::vector<std::string>(std::string_view body)>;

struct ZeroProvider {
    std::string name;
    std::string url;
    std::size_t max_count = 0;  ///< 0 means unknown
    ResponseAdapter adapter;
};

/// Named providers compiled into the library ("odlyzko").
const std::vector<ZeroProvider>& known_providers();

/// Resolves a provider name, or wraps an http(s):// URL serving the zero file
/// format. Throws ValidationError for unknown names.
ZeroProvider resolve_provider(const std::string& source);

/// $ZETA_HEAT_CACHE, else $HOME/.cache/zeta-heat.
std::filesystem::path default_cache_dir();

/// First `count` ordinates from `source`, cached under `cache_dir` keyed by
/// (provider, count). Cache entries carry a SHA-256 sidecar; a mismatch evicts
/// the entry and throws IntegrityError. Writes are serialized with an
/// exclusive lock file.
ZeroList fetch_remote(const std::string& source, std::size_t count, const std::filesystem::path& cache_dir);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

}  // namespace zeta_heat::zeros
