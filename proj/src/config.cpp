#include "d2dcache/config.hpp"

#include "d2dcache/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace d2dcache {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string location(const std::string& source, std::size_t line)
{
    return source + ":" + std::to_string(line) + ": ";
}

double parse_real(std::string_view v, const std::string& where)
{
    // a single '/' is accepted so scales can be written as 1/1088
    const auto slash = v.find('/');
    if (slash != std::string_view::npos) {
        const double num = parse_real(trim(v.substr(0, slash)), where);
        const double den = parse_real(trim(v.substr(slash + 1)), where);
        if (den == 0.0)
            throw ConfigParseError(where + "division by zero", 0);
        return num / den;
    }
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigParseError(where + "expected a real number, got '" + std::string(v) + "'", 0);
    return out;
}

template <class Int>
Int parse_int(std::string_view v, const std::string& where)
{
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigParseError(where + "expected a non-negative integer, got '" + std::string(v) + "'", 0);
    return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, const std::string&)>;

Setter real_field(double ExperimentConfig::*field)
{
    return [field](ExperimentConfig& c, std::string_view v, const std::string& w) { c.*field = parse_real(v, w); };
}

Setter count_field(std::size_t ExperimentConfig::*field)
{
    return [field](ExperimentConfig& c, std::string_view v, const std::string& w) {
        c.*field = parse_int<std::size_t>(v, w);
    };
}

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = {
        {"network.n_users", count_field(&ExperimentConfig::n_users)},
        {"network.n_files", count_field(&ExperimentConfig::n_files)},
        {"network.cache_capacity", count_field(&ExperimentConfig::cache_capacity)},
        {"network.zipf_gamma", real_field(&ExperimentConfig::zipf_gamma)},
        {"delivery.deadline_s", real_field(&ExperimentConfig::deadline_s)},
        {"delivery.file_size_bits", real_field(&ExperimentConfig::file_size_bits)},
        {"delivery.rate_bps", real_field(&ExperimentConfig::rate_bps)},
        {"mobility.mode",
         [](ExperimentConfig& c, std::string_view v, const std::string& w) {
             if (v == "homogeneous")
                 c.mobility_mode = MobilityMode::homogeneous;
             else if (v == "gamma_heterogeneous")
                 c.mobility_mode = MobilityMode::gamma_heterogeneous;
             else
                 throw ConfigParseError(w + "mode must be homogeneous or gamma_heterogeneous, got '" +
                                            std::string(v) + "'",
                                        0);
         }},
        {"mobility.lambda_c", real_field(&ExperimentConfig::lambda_c)},
        {"mobility.lambda_i", real_field(&ExperimentConfig::lambda_i)},
        {"mobility.gamma_shape_i", real_field(&ExperimentConfig::gamma_shape_i)},
        {"mobility.gamma_scale_i", real_field(&ExperimentConfig::gamma_scale_i)},
        {"mobility.contact_rate_multiplier", real_field(&ExperimentConfig::contact_rate_multiplier)},
        {"mobility.speed_factor", real_field(&ExperimentConfig::speed_factor)},
        {"simulation.trials", count_field(&ExperimentConfig::trials)},
        {"simulation.seed",
         [](ExperimentConfig& c, std::string_view v, const std::string& w) {
             c.seed = parse_int<std::uint64_t>(v, w);
         }},
    };
    return table;
}

void require(bool ok, const std::string& message)
{
    if (!ok)
        throw ValidationError(message);
}

bool positive(double x)
{
    return x > 0.0 && std::isfinite(x);
}

std::string real_text(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string_view to_string(MobilityMode mode) noexcept
{
    return mode == MobilityMode::homogeneous ? "homogeneous" : "gamma_heterogeneous";
}

void validate(const ExperimentConfig& c)
{
    require(c.n_users >= 2, "n_users must be at least 2");
    require(c.n_files >= 1, "n_files must be at least 1");
    require(c.cache_capacity <= c.n_files, "cache_capacity must not exceed n_files");
    require(c.zipf_gamma >= 0.0 && std::isfinite(c.zipf_gamma), "zipf_gamma must be non-negative");
    require(positive(c.deadline_s), "deadline_s must be positive");
    require(positive(c.file_size_bits), "file_size_bits must be positive");
    require(positive(c.rate_bps), "rate_bps must be positive");
    require(c.deadline_s > c.file_size_bits / c.rate_bps,
            "deadline_s must exceed file_size_bits / rate_bps (the deadline has to be longer than the time "
            "needed to download one file)");
    require(positive(c.lambda_c), "lambda_c must be positive");
    require(positive(c.lambda_i), "lambda_i must be positive");
    require(positive(c.gamma_shape_i), "gamma_shape_i must be positive");
    require(positive(c.gamma_scale_i), "gamma_scale_i must be positive");
    require(positive(c.contact_rate_multiplier), "contact_rate_multiplier must be positive");
    require(positive(c.speed_factor), "speed_factor must be positive");
    require(c.trials >= 1, "trials must be at least 1");
}

ExperimentConfig parse_config(std::string_view text, const std::string& source)
{
    ExperimentConfig cfg;
    std::string section;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const auto comment = line.find_first_of("#;");
        if (comment != std::string_view::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = location(source, line_no);

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigParseError(where + "unterminated section header", line_no);
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "network" && section != "delivery" && section != "mobility" && section != "simulation")
                throw ConfigParseError(where + "unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigParseError(where + "expected key = value", line_no);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigParseError(where + "key '" + std::string(key) + "' appears before any section", line_no);
        const std::string full = section + "." + std::string(key);
        const auto it = setters().find(full);
        if (it == setters().end())
            throw ConfigParseError(where + "unknown key '" + std::string(key) + "' in [" + section + "]", line_no);
        if (auto prev = seen.find(full); prev != seen.end())
            throw ConfigParseError(where + "duplicate key '" + full + "' (first set on line " +
                                       std::to_string(prev->second) + ")",
                                   line_no);
        seen.emplace(full, line_no);
        if (value.empty())
            throw ConfigParseError(where + "missing value for '" + full + "'", line_no);
        try {
            it->second(cfg, value, where);
        } catch (const ConfigParseError& e) {
            throw ConfigParseError(e.what(), line_no);
        }
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigParseError("cannot open config file '" + path.string() + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string format_config(const ExperimentConfig& c)
{
    std::ostringstream out;
    out << "[network]\n"
        << "n_users = " << c.n_users << "\n"
        << "n_files = " << c.n_files << "\n"
        << "cache_capacity = " << c.cache_capacity << "\n"
        << "zipf_gamma = " << real_text(c.zipf_gamma) << "\n\n"
        << "[delivery]\n"
        << "deadline_s = " << real_text(c.deadline_s) << "\n"
        << "file_size_bits = " << real_text(c.file_size_bits) << "\n"
        << "rate_bps = " << real_text(c.rate_bps) << "\n\n"
        << "[mobility]\n"
        << "mode = " << to_string(c.mobility_mode) << "\n"
        << "lambda_c = " << real_text(c.lambda_c) << "\n"
        << "lambda_i = " << real_text(c.lambda_i) << "\n"
        << "gamma_shape_i = " << real_text(c.gamma_shape_i) << "\n"
        << "gamma_scale_i = " << real_text(c.gamma_scale_i) << "\n"
        << "contact_rate_multiplier = " << real_text(c.contact_rate_multiplier) << "\n"
        << "speed_factor = " << real_text(c.speed_factor) << "\n\n"
        << "[simulation]\n"
        << "trials = " << c.trials << "\n"
        << "seed = " << c.seed << "\n";
    return out.str();
}

} // namespace d2dcache
