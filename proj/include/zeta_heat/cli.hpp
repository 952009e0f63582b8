#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zeta_heat/errors.hpp"
#include "zeta_heat/heat_trace.hpp"

namespace zeta_heat::cli {

// Exit statuses. Every error category maps to exactly one of these.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;    // unexpected failure
inline constexpr int kExitValidation = 2;  // usage, validation, domain errors
inline constexpr int kExitAccuracy = 3;    // tolerance not met
inline constexpr int kExitCoverage = 4;    // coverage, transport, integrity, bounded-result

enum class Subcommand { coeffs, trace, expansion, discrepancy, verify, counting, figure };
enum class OutputFormat { csv, json };
enum class GridAxis { t, a };

class UsageError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::coeffs;
    /// Values as given on the command line, in the units of `axis`.
    std::vector<double> grid;
    GridAxis axis = GridAxis::t;
    std::optional<unsigned> order;
    std::optional<std::filesystem::path> zeros_path;
    std::optional<std::string> provider;
    std::size_t provider_count = 10000;
    heat_trace::PrecisionMode precision = heat_trace::PrecisionMode::extended;
    std::optional<std::filesystem::path> output;
    OutputFormat format = OutputFormat::csv;
    unsigned jobs = 1;
    bool no_tail = false;
    double abs_tol = 1e-15;
    double rel_tol = 1e-13;
    heat_trace::FigureKind figure_kind = heat_trace::FigureKind::discrepancy_vs_a;

    /// Grid converted to t (a -> 1/a).
    std::vector<double> t_values() const;
    /// Grid converted to a (t -> 1/t).
    std::vector<double> a_values() const;
};

/// Parses "x", "x,y,z" or "start:stop:log|lin:count".
std::vector<double> parse_grid(const std::string& text);

/// Throws UsageError on unknown flags, malformed numbers, missing grids and
/// conflicting --t/--a.
RunConfig parse_args(const std::vector<std::string>& argv);

/// Executes the configuration, writing the artifact to `out` (or the --output
/// file) and a one-line "error: <category>: <message>" to `err` on failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-status mapping; argv[0] is the program name.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace zeta_heat::cli
