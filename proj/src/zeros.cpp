#include "zeta_heat/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>

#include "zeta_heat/errors.hpp"

namespace zeta_heat::zeros {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_plain_decimal(std::string_view s) {
    bool digit = false, point = false;
    for (char c : s) {
        if (c >= '0' && c <= '9') {
            digit = true;
        } else if (c == '.' && !point) {
            point = true;
        } else {
            return false;
        }
    }
    return digit;
}

unsigned fractional_digits(std::string_view s) {
    const auto dot = s.find('.');
    return dot == std::string_view::npos ? 0u : static_cast<unsigned>(s.size() - dot - 1);
}

constexpr double kFirstZeroLow = 14.13;
constexpr double kFirstZeroHigh = 14.14;

}  // namespace

ZeroList parse_zeros(std::istream& in, std::string source_id) {
    ZeroList list;
    list.source_id = std::move(source_id);
    list.precision_digits = std::numeric_limits<unsigned>::max();

    std::string line;
    std::size_t line_no = 0;
    std::size_t first_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        if (!is_plain_decimal(text)) throw ValidationError("malformed ordinate '" + std::string(text) + "'", line_no);
        const auto value = DoubleDouble::from_decimal(text);
        if (!value || !(value->hi() > 0.0)) throw ValidationError("ordinate must be positive", line_no);
        if (list.ordinates.empty()) {
            first_line = line_no;
        } else if (*value < list.ordinates.back()) {
            throw ValidationError("ordinates are not ascending", line_no);
        }
        list.ordinates.push_back(*value);
        list.decimal_text.emplace_back(text);
        list.precision_digits = std::min(list.precision_digits, fractional_digits(text));
    }
    if (list.ordinates.empty()) throw ValidationError("zero file contains no ordinates");
    // Checked after the ordering pass so a swapped pair reports the later line.
    const double first = list.ordinates.front().hi();
    if (!(first > kFirstZeroLow && first < kFirstZeroHigh))
        throw ValidationError("first ordinate must lie in (14.13, 14.14)", first_line);
    list.max_height = list.ordinates.back().to_double();
    return list;
}

ZeroList load_zeros(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open zero file " + path.string());
    return parse_zeros(in, path.filename().string());
}

void export_zeros(const ZeroList& zeros, std::ostream& out) {
    out << "# source: " << zeros.source_id << "\n";
    out << "# count: " << zeros.size() << "\n";
    for (const auto& text : zeros.decimal_text) out << text << '\n';
}

ZeroList truncate_zeros(const ZeroList& zeros, double height) {
    const auto end = std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), DoubleDouble(height));
    const auto n = static_cast<std::size_t>(end - zeros.ordinates.begin());
    if (n == 0) throw CoverageError("truncation height below the first ordinate");
    ZeroList out;
    out.ordinates.assign(zeros.ordinates.begin(), end);
    out.decimal_text.assign(zeros.decimal_text.begin(), zeros.decimal_text.begin() + static_cast<std::ptrdiff_t>(n));
    out.precision_digits = zeros.precision_digits;
    out.max_height = out.ordinates.back().to_double();
    out.source_id = zeros.source_id;
    return out;
}

std::size_t counting_function(const ZeroList& zeros, double E) {
    if (E > zeros.max_height)
        throw CoverageError("counting_function: E = " + std::to_string(E) + " exceeds zero coverage " +
                            std::to_string(zeros.max_height));
    const auto it = std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), DoubleDouble(E));
    return static_cast<std::size_t>(it - zeros.ordinates.begin());
}

double model_counting(double E) {
    const double x = E / (2.0 * std::numbers::pi);
    return x * (std::log(x) - 1.0);
}

std::filesystem::path bundled_zeros_path() {
    return std::filesystem::path(ZETA_HEAT_DATA_DIR) / "zeta_zeros_10000.txt";
}

const ZeroList& bundled_zeros() {
    static const ZeroList zeros = load_zeros(bundled_zeros_path());
    return zeros;
}

}  // namespace zeta_heat::zeros
