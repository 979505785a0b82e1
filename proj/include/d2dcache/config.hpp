#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace d2dcache {

enum class MobilityMode { homogeneous, gamma_heterogeneous };

std::string_view to_string(MobilityMode mode) noexcept;

/// One experiment. Defaults reproduce the homogeneous speed study: 15 users,
/// 100 Zipf(0.6) files, 5 cached per user, T^d = 300 s, C/(T^d R) = 0.5.
struct ExperimentConfig {
    // [network]
    std::size_t n_users = 15;
    std::size_t n_files = 100;
    std::size_t cache_capacity = 5;
    double zipf_gamma = 0.6;
    // [delivery]
    double deadline_s = 300.0;
    double file_size_bits = 1.5e8;
    double rate_bps = 1e6;
    // [mobility]
    MobilityMode mobility_mode = MobilityMode::homogeneous;
    double lambda_c = 0.001;
    double lambda_i = 0.0002;
    double gamma_shape_i = 4.43;
    double gamma_scale_i = 1.0 / 1088.0;
    double contact_rate_multiplier = 5.0;
    double speed_factor = 1.0;
    // [simulation]
    std::size_t trials = 10000;
    std::uint64_t seed = 1;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ValidationError naming the first violated invariant.
void validate(const ExperimentConfig& cfg);

/// Parses sectioned `key = value` text; `#` and `;` start comments. Unknown
/// sections or keys and malformed values raise ConfigParseError with the line.
/// The result is validated before it is returned.
ExperimentConfig parse_config(std::string_view text, const std::string& source = "<config>");

ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(format_config(c)) == c.
std::string format_config(const ExperimentConfig& cfg);

} // namespace d2dcache
