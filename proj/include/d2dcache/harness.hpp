#pragma once

#include "d2dcache/analytics.hpp"
#include "d2dcache/caching.hpp"
#include "d2dcache/config.hpp"
#include "d2dcache/mobility.hpp"
#include "d2dcache/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace d2dcache {

/// Everything needed to evaluate one configuration.
struct Scenario {
    NetworkMobility net;
    Placement placement;
    RequestModel demand;
    SystemParams sys;
};

struct SweepRow {
    std::string sweep_name;
    double sweep_value = 0.0;
    double analytic_ratio = 0.0;
    double mc_ratio = 0.0;
    double mc_ci_low = 0.0;
    double mc_ci_high = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

/// Per-pair rates for gamma_heterogeneous mode:
///   lambda_i ~ Gamma(shape k, scale theta)
///   lambda_c ~ Gamma(shape k m^2, scale theta / m), m = contact_rate_multiplier
/// so that E[lambda_c] = m E[lambda_i].
NetworkMobility draw_heterogeneous_params(const ExperimentConfig& cfg, Rng& rng);

SystemParams system_params(const ExperimentConfig& cfg);

/// Mobility (homogeneous or drawn), Zipf demand and a random placement
/// weighted by popularity. Rates are already multiplied by cfg.speed_factor.
/// Mobility and placement use separate sub-streams of `seed`.
Scenario build_scenario(const ExperimentConfig& cfg, std::uint64_t seed);

/// Normal-approximation interval mean +- 1.96 SE, clipped to [0, 1].
SweepRow make_row(std::string name, double value, double analytic, const McEstimate& mc);

/// One row per user count; each count gets a fresh mobility draw and placement.
std::vector<SweepRow> sweep_users(const ExperimentConfig& cfg, std::span<const std::size_t> user_counts,
                                  const TrialOptions& opts = {});

/// One row per speed factor. Placement and base rates are shared across rows
/// and every row reuses the same Monte Carlo seed, so only the rates change.
std::vector<SweepRow> sweep_speed(const ExperimentConfig& cfg, std::span<const double> speed_factors,
                                  const TrialOptions& opts = {});

inline constexpr const char* kCsvHeader = "sweep_name,sweep_value,analytic_ratio,mc_ratio,mc_ci_low,mc_ci_high,trials,seed";

std::string format_csv(std::span<const SweepRow> rows);

/// Writes format_csv(rows); throws std::runtime_error naming the path on I/O failure.
void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

/// key=value record of the configuration and distribution parameters behind a sweep.
std::string format_metadata(const ExperimentConfig& cfg, const std::string& sweep_name);

} // namespace d2dcache
