#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmenv/bounds.hpp"
#include "gmenv/comparisons.hpp"
#include "gmenv/errors.hpp"
#include "gmenv/finance.hpp"
#include "gmenv/ladder.hpp"
#include "gmenv/oracle.hpp"
#include "gmenv/profile.hpp"

namespace {

using namespace gmenv;

// ---------------------------------------------------------------------
// Rendering

std::string plain_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return plain_number(v);
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x",
                                  static_cast<unsigned>(c));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

/// One key-value cell, pre-rendered for both serializations.
struct Field {
    std::string key;
    std::string json;
    std::string plain;
};

Field num_field(std::string key, double v) {
    return {std::move(key), json_number(v), plain_number(v)};
}

Field int_field(std::string key, long long v) {
    std::string s = std::to_string(v);
    return {std::move(key), s, s};
}

Field uint_field(std::string key, unsigned long long v) {
    std::string s = std::to_string(v);
    return {std::move(key), s, s};
}

Field str_field(std::string key, const std::string& v) {
    return {std::move(key), json_string(v), v};
}

Field bool_field(std::string key, bool v) {
    const char* s = v ? "true" : "false";
    return {std::move(key), s, s};
}

struct CommandOutput {
    std::string command;
    std::vector<Field> inputs;
    std::vector<Field> result;
    std::string table_key;                 // empty when there is no table
    std::vector<std::vector<Field>> rows;  // uniform keys across rows
};

std::string render_object(const std::vector<Field>& fields) {
    std::string out = "{";
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) out += ',';
        out += json_string(fields[k].key);
        out += ':';
        out += fields[k].json;
    }
    out += '}';
    return out;
}

std::string render_json(const CommandOutput& o) {
    std::string result = "{";
    for (std::size_t k = 0; k < o.result.size(); ++k) {
        if (k) result += ',';
        result += json_string(o.result[k].key) + ":" + o.result[k].json;
    }
    if (!o.table_key.empty()) {
        if (!o.result.empty()) result += ',';
        result += json_string(o.table_key) + ":[";
        for (std::size_t r = 0; r < o.rows.size(); ++r) {
            if (r) result += ',';
            result += render_object(o.rows[r]);
        }
        result += ']';
    }
    result += '}';
    std::string out = "{";
    out += "\"command\":" + json_string(o.command);
    out += ",\"inputs_echo\":" + render_object(o.inputs);
    out += ",\"result\":" + result;
    out += ",\"format_version\":1}";
    return out;
}

std::string render_csv(const CommandOutput& o) {
    std::string out;
    if (!o.table_key.empty()) {
        if (!o.rows.empty()) {
            const auto& head = o.rows.front();
            for (std::size_t c = 0; c < head.size(); ++c) {
                if (c) out += ',';
                out += head[c].key;
            }
            out += '\n';
            for (const auto& row : o.rows) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (c) out += ',';
                    out += row[c].plain;
                }
                out += '\n';
            }
        } else {
            out += "empty\n";
        }
        return out;
    }
    out += "key,value\n";
    for (const auto& f : o.result) {
        out += f.key;
        out += ',';
        out += f.plain;
        out += '\n';
    }
    return out;
}

std::string render_text(const CommandOutput& o) {
    std::string out = o.command;
    if (!o.inputs.empty()) {
        out += " (";
        for (std::size_t k = 0; k < o.inputs.size(); ++k) {
            if (k) out += ", ";
            out += o.inputs[k].key + " = " + o.inputs[k].plain;
        }
        out += ')';
    }
    out += '\n';
    std::size_t width = 0;
    for (const auto& f : o.result) width = std::max(width, f.key.size());
    for (const auto& f : o.result) {
        out += "  " + f.key + std::string(width - f.key.size(), ' ') + " = " +
               f.plain + '\n';
    }
    if (!o.table_key.empty() && !o.rows.empty()) {
        std::vector<std::size_t> widths;
        for (const auto& cell : o.rows.front()) {
            widths.push_back(cell.key.size());
        }
        for (const auto& row : o.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                widths[c] = std::max(widths[c], row[c].plain.size());
            }
        }
        auto pad = [](const std::string& s, std::size_t w) {
            return std::string(w - s.size(), ' ') + s;
        };
        out += "  ";
        for (std::size_t c = 0; c < o.rows.front().size(); ++c) {
            if (c) out += "  ";
            out += pad(o.rows.front()[c].key, widths[c]);
        }
        out += '\n';
        for (const auto& row : o.rows) {
            out += "  ";
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += "  ";
                out += pad(row[c].plain, widths[c]);
            }
            out += '\n';
        }
    }
    return out;
}

void emit(const CommandOutput& o, const std::string& format) {
    if (format == "json") {
        std::cout << render_json(o) << '\n';
    } else if (format == "csv") {
        std::cout << render_csv(o);
    } else {
        std::cout << render_text(o);
    }
    std::cout.flush();
}

// ---------------------------------------------------------------------
// Input helpers

unsigned threads_from_env() {
    const char* raw = std::getenv("GM_ENVELOPE_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    const std::string s(raw);
    if (s.size() > 4 ||
        !std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isdigit(c);
        })) {
        throw Error("InvalidThreadCount", ErrorCategory::Argument,
                    "GM_ENVELOPE_THREADS must be an integer in [0, 4096], "
                    "got \"" + s + "\"");
    }
    const unsigned long v = std::strtoul(s.c_str(), nullptr, 10);
    if (v > 4096) {
        throw Error("InvalidThreadCount", ErrorCategory::Argument,
                    "GM_ENVELOPE_THREADS must be an integer in [0, 4096], "
                    "got \"" + s + "\"");
    }
    return static_cast<unsigned>(v);
}

std::vector<double> read_sequence(const std::string& source) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (source != "-") {
        file.open(source);
        if (!file) {
            throw IoError("cannot open " + source);
        }
        in = &file;
    }
    std::vector<double> values;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(*in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        std::size_t last = line.find_last_not_of(" \t");
        const std::string token = line.substr(first, last - first + 1);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(v)) {
            throw ParseError("expected one finite number per line", line_no);
        }
        values.push_back(v);
    }
    return values;
}

ReturnSeries read_returns(const std::string& source,
                          const std::string& label) {
    if (source == "-") {
        return ingest_csv(std::cin, label);
    }
    std::ifstream file(source);
    if (!file) {
        throw IoError("cannot open " + source);
    }
    return ingest_csv(file, label);
}

// ---------------------------------------------------------------------
// Subcommands

void run_bounds(int n, double mu, double sigma, const std::string& format) {
    const StatProfile profile(n, mu, sigma);
    const GmBounds b = product_bounds(profile);
    const auto [gm_lower, gm_upper] = geometric_mean_bounds(profile);

    CommandOutput o;
    o.command = "bounds";
    o.inputs = {int_field("n", n), num_field("mu", mu),
                num_field("sigma", sigma)};
    o.result = {
        str_field("regime", to_string(b.regime.tag)),
        num_field("ratio", b.regime.ratio),
        num_field("lower_product", b.lower_product),
        num_field("upper_product", b.upper_product),
        num_field("lower_log", b.lower_log),
        num_field("upper_log", b.upper_log),
        num_field("lower_geometric_mean", gm_lower),
        num_field("upper_geometric_mean", gm_upper),
        bool_field("lower_attained", b.lower_attained),
        num_field("gap_bound", am_gm_gap_bound(profile)),
    };
    const ExtremalSequence up =
        extremal_sequence(profile, ExtremalKind::UpperAttaining);
    o.result.push_back(num_field("upper_sequence_repeated", up.repeated_value));
    o.result.push_back(int_field("upper_sequence_count", up.repeated_count));
    o.result.push_back(num_field("upper_sequence_outlier", up.outlier_value));
    if (b.lower_attained) {
        const ExtremalSequence low =
            extremal_sequence(profile, ExtremalKind::LowerAttaining);
        o.result.push_back(
            num_field("lower_sequence_repeated", low.repeated_value));
        o.result.push_back(
            int_field("lower_sequence_count", low.repeated_count));
        o.result.push_back(
            num_field("lower_sequence_outlier", low.outlier_value));
    }
    emit(o, format);
}

void run_ladder(int n, double mu, double sigma, const std::string& format) {
    const StatProfile profile(n, mu, sigma);
    const CriticalLadder ladder = build_ladder(profile);

    CommandOutput o;
    o.command = "ladder";
    o.inputs = {int_field("n", n), num_field("mu", mu),
                num_field("sigma", sigma)};
    o.result = {str_field("regime", to_string(classify(profile).tag)),
                num_field("ratio", profile.ratio())};
    o.table_key = "entries";
    for (const auto& e : ladder.entries) {
        const CriticalPoint cp = critical_point(e.type_index, profile);
        o.rows.push_back({
            int_field("type_index", e.type_index),
            num_field("high_value", cp.high_value),
            num_field("low_value", cp.low_value),
            num_field("multiplicity", cp.multiplicity),
            int_field("sign", e.sign),
            num_field("log_abs", e.log_abs),
            num_field("value", e.value),
            num_field("normalized", e.normalized),
            bool_field("positive", e.positive),
        });
    }
    emit(o, format);
}

void run_verify(int n, double mu, double sigma, std::uint64_t count,
                std::uint64_t seed, const std::string& format) {
    const StatProfile profile(n, mu, sigma);
    const unsigned threads = threads_from_env();
    const SampleReport report = brute_force_extrema(profile, count, seed,
                                                    threads);
    const Regime regime = classify(profile);
    double lower_log = -std::numeric_limits<double>::infinity();
    double upper_log = std::numeric_limits<double>::quiet_NaN();
    if (regime.tag != RegimeTag::InfeasiblePositive) {
        const GmBounds b = product_bounds(profile);
        lower_log = b.lower_log;
        upper_log = b.upper_log;
    }

    CommandOutput o;
    o.command = "verify";
    o.inputs = {int_field("n", n), num_field("mu", mu),
                num_field("sigma", sigma), uint_field("count", count),
                uint_field("seed", seed)};
    o.result = {
        str_field("regime", to_string(regime.tag)),
        uint_field("requested", report.requested),
        uint_field("all_positive_count", report.all_positive_count),
        uint_field("containment_violations", report.containment_violations),
        num_field("min_product_log", report.min_product_log),
        num_field("max_product_log", report.max_product_log),
        num_field("lower_log", lower_log),
        num_field("upper_log", upper_log),
    };
    emit(o, format);
}

void run_compare(const std::string& source, const std::string& format) {
    const std::vector<double> values = read_sequence(source);
    const BoundReport r = evaluate_bounds(values);
    const ProductComparison p = product_bound_comparison(values);

    CommandOutput o;
    o.command = "compare";
    o.inputs = {str_field("source", source),
                uint_field("count", values.size())};
    o.result = {
        int_field("n", r.stats.n),
        num_field("mean", r.stats.mean),
        num_field("stddev", r.stats.stddev),
        num_field("min", r.seq_min),
        num_field("max", r.seq_max),
        num_field("gap", r.gap),
        num_field("gap_bound_variance", r.gap_bound_variance),
        num_field("gap_bound_aldaz", r.gap_bound_aldaz),
        num_field("cf_gap_lower", r.cf_gap_lower),
        num_field("cf_gap_upper", r.cf_gap_upper),
        str_field("tightest_upper", r.tightest_upper),
        num_field("product", p.product),
        num_field("product_lower_variance", p.variance_lower),
        num_field("product_upper_variance", p.variance_upper),
        num_field("product_lower_cf", p.cf_lower),
        num_field("product_upper_cf", p.cf_upper),
        bool_field("product_in_variance_interval", p.in_variance_interval),
        bool_field("product_in_cf_interval", p.in_cf_interval),
    };
    emit(o, format);
}

void run_envelope(const std::string& source, const std::string& label,
                  const std::string& format) {
    const ReturnSeries series = read_returns(source, label);
    const WealthEnvelope env = wealth_envelope(series);

    CommandOutput o;
    o.command = "finance envelope";
    o.inputs = {str_field("source", source), str_field("label", label),
                int_field("periods", env.n)};
    o.result = {
        int_field("n", env.n),
        num_field("mu", env.growth_mean),
        num_field("sigma", env.growth_sigma),
        num_field("lower_x", env.lower_wealth),
        num_field("upper_x", env.upper_wealth),
        num_field("lower_log", env.lower_log),
        num_field("upper_log", env.upper_log),
    };
    if (env.actual_wealth) {
        o.result.push_back(num_field("actual_x", *env.actual_wealth));
    }
    o.result.push_back(str_field("regime", to_string(env.regime.tag)));
    emit(o, format);
}

void run_robust(double growth_mean, double sigma0, double epsilon,
                std::int64_t n_min, std::int64_t n_max,
                std::optional<std::int64_t> n_single,
                const std::string& format) {
    const RobustParams params{growth_mean, sigma0, epsilon};

    CommandOutput o;
    o.command = "finance robust";
    o.inputs = {num_field("growth_mean", growth_mean),
                num_field("sigma0", sigma0), num_field("epsilon", epsilon)};
    o.table_key = "points";

    auto add_point = [&](std::int64_t n) {
        const double log_value = robust_relative_upper_log(params, n);
        o.rows.push_back({int_field("n", n),
                          num_field("relative_upper_log", log_value),
                          num_field("relative_upper", std::exp(log_value))});
    };

    if (n_single) {
        o.inputs.push_back(int_field("n", *n_single));
        add_point(*n_single);
    } else {
        if (n_min < 2 || n_max < n_min) {
            throw Error("InvalidArguments", ErrorCategory::Argument,
                        "need 2 <= n-min <= n-max");
        }
        o.inputs.push_back(int_field("n_min", n_min));
        o.inputs.push_back(int_field("n_max", n_max));
        for (std::int64_t n = n_min; n <= n_max; n *= 2) add_point(n);
    }
    emit(o, format);
}

void run_curves(int n, int points, const std::string& format) {
    if (n < 2) {
        throw Error("InvalidArguments", ErrorCategory::Argument,
                    "need --n >= 2");
    }
    if (points < 2 || points > 100000) {
        throw Error("InvalidArguments", ErrorCategory::Argument,
                    "need 2 <= --points <= 100000");
    }
    const double t_max = 1.0 / std::sqrt(static_cast<double>(n) - 1.0);

    CommandOutput o;
    o.command = "curves";
    o.inputs = {int_field("n", n), int_field("points", points),
                num_field("t_max", t_max)};
    o.table_key = "points";
    for (int k = 0; k < points; ++k) {
        const double t = t_max * static_cast<double>(k) /
                         static_cast<double>(points - 1);
        std::vector<Field> row = {num_field("t", t)};
        for (int i = 1; i <= n - 1; ++i) {
            row.push_back(num_field("P" + std::to_string(i),
                                    normalized_critical_value(i, n, t)));
        }
        o.rows.push_back(std::move(row));
    }
    emit(o, format);
}

void run_scan(int n, double mu, double sigma, const std::string& format) {
    const StatProfile profile(n, mu, sigma);
    const std::vector<ScanEntry> entries = two_value_scan(profile);

    CommandOutput o;
    o.command = "scan";
    o.inputs = {int_field("n", n), num_field("mu", mu),
                num_field("sigma", sigma)};
    o.result = {str_field("regime", to_string(classify(profile).tag))};
    o.table_key = "entries";
    for (const auto& e : entries) {
        o.rows.push_back({int_field("type_index", e.type_index),
                          num_field("product", e.product),
                          bool_field("positive", e.positive)});
    }
    emit(o, format);
}

// ---------------------------------------------------------------------

void print_error_json(const std::string& kind, const std::string& message,
                      std::int64_t line = 0) {
    std::string out = "{\"error\":" + json_string(kind) +
                      ",\"message\":" + json_string(message);
    if (line > 0) out += ",\"line\":" + std::to_string(line);
    out += "}";
    std::cerr << out << std::endl;
}

int exit_code(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Argument: return 2;
        case ErrorCategory::Infeasible: return 3;
        case ErrorCategory::Io: return 4;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp bounds on a product from its term count, mean and "
                 "standard deviation"};
    app.require_subcommand(1);

    std::string format = "json";
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
    };

    int n = 0;
    double mu = 0.0;
    double sigma = 0.0;
    auto add_profile = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "Sequence length")->required();
        cmd->add_option("--mu", mu, "Arithmetic mean")->required();
        cmd->add_option("--sigma", sigma, "Standard deviation")->required();
    };

    CLI::App* bounds = app.add_subcommand(
        "bounds", "Product and geometric-mean bounds with extremal sequences");
    add_profile(bounds);
    add_format(bounds);
    bounds->callback([&] { run_bounds(n, mu, sigma, format); });

    CLI::App* ladder = app.add_subcommand(
        "ladder", "All two-value critical points and their product values");
    add_profile(ladder);
    add_format(ladder);
    ladder->callback([&] { run_ladder(n, mu, sigma, format); });

    std::uint64_t count = 100000;
    std::uint64_t seed = 42;
    CLI::App* verify = app.add_subcommand(
        "verify", "Check the bounds against seeded random sampling");
    add_profile(verify);
    verify->add_option("--count", count, "Number of samples")
        ->capture_default_str();
    verify->add_option("--seed", seed, "Random seed")->capture_default_str();
    add_format(verify);
    verify->callback([&] { run_verify(n, mu, sigma, count, seed, format); });

    std::string input = "-";
    CLI::App* compare = app.add_subcommand(
        "compare", "Mean-gap and product bounds on a concrete sequence");
    compare->add_option("--input", input,
                        "File with one number per line, - for stdin")
        ->capture_default_str();
    add_format(compare);
    compare->callback([&] { run_compare(input, format); });

    CLI::App* finance = app.add_subcommand(
        "finance", "Compounding envelopes for investment returns");
    finance->require_subcommand(1);

    std::string label = "period";
    CLI::App* envelope = finance->add_subcommand(
        "envelope", "Terminal-wealth envelope from a CSV of returns");
    envelope->add_option("--input", input, "CSV of returns, - for stdin")
        ->capture_default_str();
    envelope->add_option("--label", label, "Period label")
        ->capture_default_str();
    add_format(envelope);
    envelope->callback([&] { run_envelope(input, label, format); });

    double growth_mean = 1.0003;
    double sigma0 = 0.0098;
    double epsilon = 1e-4;
    std::int64_t n_min = 1024;
    std::int64_t n_max = 1048576;
    std::optional<std::int64_t> n_single;
    CLI::App* robust = finance->add_subcommand(
        "robust", "Worst-case wealth relative to the risk-free outcome");
    robust->add_option("--growth-mean", growth_mean,
                       "Estimated mean growth factor (1 + mean return)")
        ->capture_default_str();
    robust->add_option("--sigma0", sigma0,
                       "Estimated std dev of the growth factors")
        ->capture_default_str();
    robust->add_option("--epsilon", epsilon,
                       "Uncertainty radius on both estimates")
        ->capture_default_str();
    robust->add_option("--n-min", n_min, "Doubling grid start")
        ->capture_default_str();
    robust->add_option("--n-max", n_max, "Doubling grid end")
        ->capture_default_str();
    robust->add_option("--n", n_single,
                       "Single period count instead of the grid");
    add_format(robust);
    robust->callback([&] {
        run_robust(growth_mean, sigma0, epsilon, n_min, n_max, n_single,
                   format);
    });

    int points = 64;
    CLI::App* curves = app.add_subcommand(
        "curves", "Normalized critical-value curves over t = sigma/mu");
    curves->add_option("--n", n, "Sequence length")->required();
    curves->add_option("--points", points, "Samples per curve")
        ->capture_default_str();
    add_format(curves);
    curves->callback([&] { run_curves(n, points, format); });

    CLI::App* scan = app.add_subcommand(
        "scan", "Directly multiplied products of all two-value critical "
                "sequences");
    add_profile(scan);
    add_format(scan);
    scan->callback([&] { run_scan(n, mu, sigma, format); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        print_error_json("InvalidArguments", e.what());
        return 2;
    } catch (const Error& e) {
        print_error_json(e.kind(), e.what(), e.line());
        return exit_code(e.category());
    } catch (const std::exception& e) {
        print_error_json("Internal", e.what());
        return 1;
    }
    return 0;
}
