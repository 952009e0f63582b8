#include "zeta_heat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "zeta_heat/counting_asymptotics.hpp"
#include "zeta_heat/expansion.hpp"
#include "zeta_heat/explicit_formula.hpp"
#include "zeta_heat/zeros.hpp"

namespace zeta_heat::cli {
namespace {

using nlohmann::ordered_json;

// Carries the rendered help text out of parse_args.
class HelpRequested : public UsageError {
public:
    using UsageError::UsageError;
};

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError("malformed number '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw UsageError("malformed number '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Evaluates fn(i) for i in [0, n) on up to `jobs` threads; results and the
// first exception (by index) come back in grid order.
template <class Fn>
auto parallel_map(std::size_t n, unsigned jobs, Fn fn) {
    using Result = decltype(fn(std::size_t{0}));
    std::vector<Result> results(n);
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](std::size_t i) {
        try {
            results[i] = fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < jobs; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += jobs) work(i);
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

bool needs_zeros(Subcommand s) {
    return s == Subcommand::trace || s == Subcommand::discrepancy || s == Subcommand::verify ||
           s == Subcommand::counting || s == Subcommand::figure;
}

zeros::ZeroList load_configured_zeros(const RunConfig& c) {
    if (c.zeros_path) return zeros::load_zeros(*c.zeros_path);
    if (c.provider) return zeros::fetch_remote(*c.provider, c.provider_count, zeros::default_cache_dir());
    return zeros::bundled_zeros();
}

heat_trace::TraceOptions trace_options(const RunConfig& c) {
    heat_trace::TraceOptions o;
    o.tail = !c.no_tail;
    o.precision = c.precision;
    o.jobs = 1;  // parallelism is across grid points
    o.quadrature.abs_tol = c.abs_tol;
    o.quadrature.rel_tol = c.rel_tol;
    return o;
}

void emit_coeffs(const RunConfig& c, std::ostream& out) {
    const unsigned order = c.order.value_or(20);
    const expansion::CoefficientTable table(order);
    if (c.format == OutputFormat::csv) {
        table.write_csv(out);
        return;
    }
    ordered_json rows = ordered_json::array();
    for (unsigned n = 0; n <= order; ++n)
        rows.push_back({{"n", n},
                        {"a_exact", table.a(n).to_string()},
                        {"a_float", table.a_value(n)},
                        {"b_exact", table.b(n).to_string()},
                        {"b_float", table.b_value(n)}});
    out << rows.dump(2) << '\n';
}

void emit_trace(const RunConfig& c, const zeros::ZeroList& zl, std::ostream& out) {
    const auto ts = c.t_values();
    const auto options = trace_options(c);
    const auto reports = parallel_map(ts.size(), c.jobs, [&](std::size_t i) { return heat_trace::spectral_trace(ts[i], zl, options); });
    if (c.format == OutputFormat::csv) {
        out << "t,partial_sum,tail_estimate,total,zeros_used,truncation_height,error_budget\n";
        for (const auto& r : reports)
            out << g17(r.t) << ',' << g17(r.partial_sum) << ',' << g17(r.tail_estimate) << ',' << g17(r.total) << ','
                << r.zeros_used << ',' << g17(r.truncation_height) << ',' << g17(r.error_budget) << '\n';
        return;
    }
    ordered_json rows = ordered_json::array();
    for (const auto& r : reports)
        rows.push_back({{"t", r.t},
                        {"partial_sum", r.partial_sum},
                        {"tail_estimate", r.tail_estimate},
                        {"total", r.total},
                        {"zeros_used", r.zeros_used},
                        {"truncation_height", r.truncation_height},
                        {"error_budget", r.error_budget}});
    out << rows.dump(2) << '\n';
}

void emit_expansion(const RunConfig& c, std::ostream& out) {
    const auto ts = c.t_values();
    std::vector<expansion::ExpansionValue> values;
    for (double t : ts) values.push_back(expansion::evaluate_expansion(t, c.order.value_or(expansion::optimal_truncation(t))));
    if (c.format == OutputFormat::csv) {
        out << "t,order,divergent_part,exponential_part,series_part,total\n";
        for (const auto& v : values)
            out << g17(v.t) << ',' << v.order << ',' << g17(v.divergent_part) << ',' << g17(v.exponential_part) << ','
                << g17(v.series_part) << ',' << g17(v.total) << '\n';
        return;
    }
    ordered_json rows = ordered_json::array();
    for (const auto& v : values)
        rows.push_back({{"t", v.t},
                        {"order", v.order},
                        {"divergent_part", v.divergent_part},
                        {"exponential_part", v.exponential_part},
                        {"series_part", v.series_part},
                        {"total", v.total}});
    out << rows.dump(2) << '\n';
}

void emit_discrepancy(const RunConfig& c, const zeros::ZeroList& zl, std::ostream& out) {
    const auto ts = c.t_values();
    const auto options = trace_options(c);
    const auto values = parallel_map(ts.size(), c.jobs, [&](std::size_t i) { return heat_trace::discrepancy(ts[i], zl, options); });
    if (c.format == OutputFormat::csv) {
        out << "t,discrepancy\n";
        for (std::size_t i = 0; i < ts.size(); ++i) out << g17(ts[i]) << ',' << g17(values[i]) << '\n';
        return;
    }
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) rows.push_back({{"t", ts[i]}, {"discrepancy", values[i]}});
    out << rows.dump(2) << '\n';
}

void emit_verify(const RunConfig& c, const zeros::ZeroList& zl, std::ostream& out) {
    const auto ts = c.t_values();
    const auto q = trace_options(c).quadrature;
    const auto reports = parallel_map(ts.size(), c.jobs, [&](std::size_t i) { return explicit_formula::verify_identity(ts[i], zl, q); });
    if (c.format == OutputFormat::csv) {
        out << "t,spectral,arch_quadrature,arch_digamma,prime,rhs,residual\n";
        for (const auto& r : reports)
            out << g17(r.t) << ',' << g17(r.spectral) << ',' << g17(r.arch_quadrature) << ',' << g17(r.arch_digamma)
                << ',' << g17(r.prime) << ',' << g17(r.rhs) << ',' << g17(r.residual) << '\n';
        return;
    }
    if (reports.size() == 1) {
        out << reports.front().to_json() << '\n';
        return;
    }
    out << '[';
    for (std::size_t i = 0; i < reports.size(); ++i) out << (i ? "," : "") << reports[i].to_json();
    out << "]\n";
}

void emit_counting(const RunConfig& c, const zeros::ZeroList& zl, std::ostream& out) {
    const auto ts = c.t_values();
    const auto options = trace_options(c);
    const auto rows = parallel_map(ts.size(), c.jobs, [&](std::size_t i) {
        return counting_asymptotics::verify_theorem51(std::span<const double>(&ts[i], 1), zl, options);
    });
    counting_asymptotics::Theorem51Report report;
    for (const auto& r : rows) {
        report.rows.push_back(r.rows.front());
        report.fitted_constant = std::max(report.fitted_constant, r.fitted_constant);
    }
    if (c.format == OutputFormat::csv) {
        report.write_csv(out);
        return;
    }
    ordered_json j;
    j["fitted_constant"] = report.fitted_constant;
    j["rows"] = ordered_json::array();
    for (const auto& r : report.rows)
        j["rows"].push_back({{"t", r.t},
                             {"J", r.J},
                             {"I", r.I},
                             {"R", r.R},
                             {"leading", r.leading},
                             {"residual", r.residual},
                             {"lower_limit_correction", r.lower_limit_correction}});
    out << j.dump(2) << '\n';
}

void emit_figure(const RunConfig& c, const zeros::ZeroList& zl, std::ostream& out) {
    const auto as = c.a_values();
    const auto options = trace_options(c);
    const auto rows = parallel_map(as.size(), c.jobs, [&](std::size_t i) {
        return heat_trace::figure_data(c.figure_kind, std::span<const double>(&as[i], 1), zl, options).front();
    });
    if (c.format == OutputFormat::csv) {
        heat_trace::write_figure_csv(rows, out);
        return;
    }
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) j.push_back({{"a", r.a}, {"value", r.value}});
    out << j.dump(2) << '\n';
}

void dispatch(const RunConfig& c, std::ostream& out) {
    std::optional<zeros::ZeroList> zl;
    if (needs_zeros(c.subcommand)) zl = load_configured_zeros(c);
    switch (c.subcommand) {
        case Subcommand::coeffs: emit_coeffs(c, out); break;
        case Subcommand::trace: emit_trace(c, *zl, out); break;
        case Subcommand::expansion: emit_expansion(c, out); break;
        case Subcommand::discrepancy: emit_discrepancy(c, *zl, out); break;
        case Subcommand::verify: emit_verify(c, *zl, out); break;
        case Subcommand::counting: emit_counting(c, *zl, out); break;
        case Subcommand::figure: emit_figure(c, *zl, out); break;
    }
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

std::vector<double> RunConfig::t_values() const {
    std::vector<double> v;
    for (double x : grid) v.push_back(axis == GridAxis::t ? x : 1.0 / x);
    return v;
}

std::vector<double> RunConfig::a_values() const {
    std::vector<double> v;
    for (double x : grid) v.push_back(axis == GridAxis::a ? x : 1.0 / x);
    return v;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> values;
    if (text.empty()) throw UsageError("empty grid");
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 4) throw UsageError("grid must be start:stop:log|lin:count, got '" + text + "'");
        const double start = parse_number(parts[0]);
        const double stop = parse_number(parts[1]);
        const std::string& spacing = parts[2];
        const double count_d = parse_number(parts[3]);
        if (count_d < 1 || count_d != std::floor(count_d)) throw UsageError("grid count must be a positive integer");
        const auto count = static_cast<std::size_t>(count_d);
        if (spacing != "log" && spacing != "lin") throw UsageError("grid spacing must be 'log' or 'lin'");
        if (spacing == "log" && (start <= 0.0 || stop <= 0.0)) throw UsageError("log grid needs positive endpoints");
        for (std::size_t i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            values.push_back(spacing == "log" ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                              : start + f * (stop - start));
        }
        // Pin the endpoints exactly.
        values.front() = start;
        if (count > 1) values.back() = stop;
    } else {
        for (const auto& part : split(text, ',')) values.push_back(parse_number(part));
    }
    for (double v : values)
        if (!(v > 0.0)) throw UsageError("grid values must be positive");
    return values;
}

RunConfig parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Heat-trace asymptotics over the zeros of the Riemann zeta function", "zeta-heat"};
    app.require_subcommand(1);

    RunConfig config;
    std::string t_text, a_text, precision_text, format_text, kind_text, zeros_text, output_text, provider_text;
    unsigned order = 0;

    struct Spec {
        Subcommand sub;
        const char* name;
        const char* help;
    };
    const Spec specs[] = {
        {Subcommand::coeffs, "coeffs", "exact expansion coefficients a_n, b_n"},
        {Subcommand::trace, "trace", "spectral heat trace over the zero list"},
        {Subcommand::expansion, "expansion", "truncated small-t expansion"},
        {Subcommand::discrepancy, "discrepancy", "trace minus the six-term approximation"},
        {Subcommand::verify, "verify", "explicit-formula identity residual"},
        {Subcommand::counting, "counting", "counting-function asymptotics report"},
        {Subcommand::figure, "figure", "figure datasets over a = 1/t"},
    };
    std::vector<std::pair<CLI::App*, Subcommand>> subs;
    for (const auto& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        subs.emplace_back(sub, s.sub);
        sub->add_option("--order", order, "expansion order / coefficient count");
        sub->add_option("--format", format_text, "csv or json");
        sub->add_option("--output", output_text, "output file (default stdout)");
        if (s.sub == Subcommand::coeffs) continue;
        auto* t_opt = sub->add_option("--t", t_text, "t value(s): x | x,y | start:stop:log|lin:count");
        auto* a_opt = sub->add_option("--a", a_text, "a = 1/t value(s), same syntax");
        t_opt->excludes(a_opt);
        sub->add_option("--abs-tol", config.abs_tol, "quadrature absolute tolerance");
        sub->add_option("--rel-tol", config.rel_tol, "quadrature relative tolerance");
        sub->add_option("--jobs", config.jobs, "worker threads");
        if (s.sub == Subcommand::expansion) continue;
        sub->add_option("--zeros-file", zeros_text, "zero table (default: bundled)");
        sub->add_option("--provider", provider_text, "remote zero provider name or URL");
        sub->add_option("--count", config.provider_count, "ordinates to fetch from the provider");
        sub->add_option("--precision", precision_text, "standard or extended");
        sub->add_flag("--no-tail", config.no_tail, "disable the density-model tail");
        if (s.sub == Subcommand::figure) sub->add_option("--kind", kind_text, "trace_vs_a or discrepancy_vs_a");
    }

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto active_subs = app.get_subcommands();
        throw HelpRequested(active_subs.empty() ? app.help() : active_subs.front()->help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(one_line(e.what()));
    }

    for (const auto& [sub, kind] : subs)
        if (sub->parsed()) config.subcommand = kind;
    CLI::App* active = app.get_subcommands().front();

    if (active->count("--order")) config.order = order;
    if (!format_text.empty()) {
        if (format_text == "csv") config.format = OutputFormat::csv;
        else if (format_text == "json") config.format = OutputFormat::json;
        else throw UsageError("--format must be csv or json");
    } else if (config.subcommand == Subcommand::verify) {
        config.format = OutputFormat::json;
    }
    if (!output_text.empty()) config.output = output_text;
    if (!zeros_text.empty()) config.zeros_path = zeros_text;
    if (!provider_text.empty()) config.provider = provider_text;
    if (config.zeros_path && config.provider) throw UsageError("--zeros-file and --provider are mutually exclusive");
    if (!precision_text.empty()) {
        if (precision_text == "standard") config.precision = heat_trace::PrecisionMode::standard;
        else if (precision_text == "extended") config.precision = heat_trace::PrecisionMode::extended;
        else throw UsageError("--precision must be standard or extended");
    }
    if (!kind_text.empty()) {
        if (kind_text == "trace_vs_a") config.figure_kind = heat_trace::FigureKind::trace_vs_a;
        else if (kind_text == "discrepancy_vs_a") config.figure_kind = heat_trace::FigureKind::discrepancy_vs_a;
        else throw UsageError("--kind must be trace_vs_a or discrepancy_vs_a");
    }
    if (config.jobs < 1) throw UsageError("--jobs must be >= 1");
    if (!(config.abs_tol >= 0.0) || !(config.rel_tol >= 0.0) || (config.abs_tol == 0.0 && config.rel_tol == 0.0))
        throw UsageError("tolerances must be nonnegative and not both zero");

    if (config.subcommand != Subcommand::coeffs) {
        if (!t_text.empty()) {
            config.grid = parse_grid(t_text);
            config.axis = GridAxis::t;
        } else if (!a_text.empty()) {
            config.grid = parse_grid(a_text);
            config.axis = GridAxis::a;
        } else {
            throw UsageError("missing required --t or --a");
        }
    }
    if (config.subcommand == Subcommand::discrepancy) {
        const auto ts = config.t_values();
        if (*std::min_element(ts.begin(), ts.end()) < 1e-2) config.precision = heat_trace::PrecisionMode::extended;
    }
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.output) {
            std::ostringstream buffer;
            dispatch(config, buffer);
            std::ofstream file(*config.output, std::ios::binary);
            if (!file) throw ValidationError("cannot open output file " + config.output->string());
            file << buffer.str();
        } else {
            dispatch(config, out);
        }
        return kExitOk;
    } catch (const AccuracyError& e) {
        err << "error: accuracy: " << one_line(e.what()) << '\n';
        return kExitAccuracy;
    } catch (const CoverageError& e) {
        err << "error: coverage: " << one_line(e.what()) << '\n';
        return kExitCoverage;
    } catch (const TransportError& e) {
        err << "error: transport: " << one_line(e.what()) << '\n';
        return kExitCoverage;
    } catch (const IntegrityError& e) {
        err << "error: integrity: " << one_line(e.what()) << '\n';
        return kExitCoverage;
    } catch (const BoundedResultError& e) {
        err << "error: bounded-result: " << one_line(e.what()) << '\n';
        return kExitCoverage;
    } catch (const ValidationError& e) {
        err << "error: validation: " << one_line(e.what()) << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        err << "error: domain: " << one_line(e.what()) << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: internal: " << one_line(e.what()) << '\n';
        return kExitInternal;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return kExitOk;
    } catch (const Error& e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return kExitValidation;
    }
    return run(config, out, err);
}

}  // namespace zeta_heat::cli
