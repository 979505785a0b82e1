#include "d2dcache/harness.hpp"

#include "d2dcache/error.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace d2dcache {

namespace {

constexpr std::uint64_t kMobilityStream = 1;
constexpr std::uint64_t kPlacementStream = 2;
constexpr std::uint64_t kTrialStream = 3;

std::string sig6(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string full(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

NetworkMobility draw_heterogeneous_params(const ExperimentConfig& cfg, Rng& rng)
{
    const double m = cfg.contact_rate_multiplier;
    std::gamma_distribution<double> inter(cfg.gamma_shape_i, cfg.gamma_scale_i);
    std::gamma_distribution<double> contact(cfg.gamma_shape_i * m * m, cfg.gamma_scale_i / m);
    const std::size_t n_pairs = cfg.n_users * (cfg.n_users - 1) / 2;
    std::vector<PairParams> pairs;
    pairs.reserve(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        const double li = inter(rng);
        const double lc = contact(rng);
        pairs.emplace_back(lc, li);
    }
    return NetworkMobility(cfg.n_users, std::move(pairs));
}

SystemParams system_params(const ExperimentConfig& cfg)
{
    return SystemParams(cfg.file_size_bits, cfg.rate_bps, cfg.deadline_s);
}

Scenario build_scenario(const ExperimentConfig& cfg, std::uint64_t seed)
{
    validate(cfg);
    Rng mobility_rng = derive_stream(seed, {kMobilityStream, cfg.n_users});
    NetworkMobility base = cfg.mobility_mode == MobilityMode::homogeneous
                               ? NetworkMobility::homogeneous(cfg.n_users, PairParams(cfg.lambda_c, cfg.lambda_i))
                               : draw_heterogeneous_params(cfg, mobility_rng);
    RequestModel demand = zipf_demand(cfg.n_files, cfg.zipf_gamma, cfg.n_users);
    Rng placement_rng = derive_stream(seed, {kPlacementStream, cfg.n_users});
    Placement placement =
        random_caching(cfg.n_users, cfg.n_files, cfg.cache_capacity, demand.row(0), placement_rng);
    return Scenario{base.scaled(cfg.speed_factor), std::move(placement), std::move(demand), system_params(cfg)};
}

SweepRow make_row(std::string name, double value, double analytic, const McEstimate& mc)
{
    SweepRow row;
    row.sweep_name = std::move(name);
    row.sweep_value = value;
    row.analytic_ratio = analytic;
    row.mc_ratio = mc.mean;
    row.mc_ci_low = std::clamp(mc.mean - 1.96 * mc.std_error, 0.0, 1.0);
    row.mc_ci_high = std::clamp(mc.mean + 1.96 * mc.std_error, 0.0, 1.0);
    row.trials = mc.trials;
    row.seed = mc.seed;
    return row;
}

std::vector<SweepRow> sweep_users(const ExperimentConfig& cfg, std::span<const std::size_t> user_counts,
                                  const TrialOptions& opts)
{
    if (user_counts.empty())
        throw DomainError("sweep_users: need at least one user count");
    std::vector<SweepRow> rows;
    for (std::size_t n : user_counts) {
        if (n < 2)
            throw DomainError("sweep_users: user counts must be at least 2");
        ExperimentConfig point = cfg;
        point.n_users = n;
        const Scenario sc = build_scenario(point, cfg.seed);
        const double analytic = aggregate_offload_ratio(sc.net, sc.placement, sc.demand, sc.sys);
        McEstimate mc = estimate_offload_ratio(sc.net, sc.placement, sc.demand, sc.sys, cfg.trials,
                                               derive_seed(cfg.seed, {kTrialStream, n}), opts);
        mc.seed = cfg.seed;
        rows.push_back(make_row("users", static_cast<double>(n), analytic, mc));
    }
    return rows;
}

std::vector<SweepRow> sweep_speed(const ExperimentConfig& cfg, std::span<const double> speed_factors,
                                  const TrialOptions& opts)
{
    if (speed_factors.empty())
        throw DomainError("sweep_speed: need at least one speed factor");
    for (double s : speed_factors)
        if (!(s > 0.0))
            throw DomainError("sweep_speed: speed factors must be positive");
    ExperimentConfig base_cfg = cfg;
    base_cfg.speed_factor = 1.0;
    const Scenario base = build_scenario(base_cfg, cfg.seed);
    const std::uint64_t trial_seed = derive_seed(cfg.seed, {kTrialStream, cfg.n_users});
    std::vector<SweepRow> rows;
    for (double s : speed_factors) {
        const NetworkMobility net = base.net.scaled(s * cfg.speed_factor);
        const double analytic = aggregate_offload_ratio(net, base.placement, base.demand, base.sys);
        McEstimate mc =
            estimate_offload_ratio(net, base.placement, base.demand, base.sys, cfg.trials, trial_seed, opts);
        mc.seed = cfg.seed;
        rows.push_back(make_row("speed", s, analytic, mc));
    }
    return rows;
}

std::string format_csv(std::span<const SweepRow> rows)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += r.sweep_name + ',' + sig6(r.sweep_value) + ',' + sig6(r.analytic_ratio) + ',' + sig6(r.mc_ratio) +
               ',' + sig6(r.mc_ci_low) + ',' + sig6(r.mc_ci_high) + ',' + std::to_string(r.trials) + ',' +
               std::to_string(r.seed) + '\n';
    }
    return out;
}

void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    const std::string text = format_csv(rows);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string format_metadata(const ExperimentConfig& cfg, const std::string& sweep_name)
{
    std::ostringstream out;
    out << "sweep_name=" << sweep_name << "\n"
        << "mobility_mode=" << to_string(cfg.mobility_mode) << "\n";
    if (cfg.mobility_mode == MobilityMode::gamma_heterogeneous) {
        const double m = cfg.contact_rate_multiplier;
        out << "lambda_i_distribution=gamma(shape=" << full(cfg.gamma_shape_i)
            << ",scale=" << full(cfg.gamma_scale_i) << ")\n"
            << "lambda_c_distribution=gamma(shape=" << full(cfg.gamma_shape_i * m * m)
            << ",scale=" << full(cfg.gamma_scale_i / m) << ")\n";
    } else {
        out << "lambda_c=" << full(cfg.lambda_c) << "\n"
            << "lambda_i=" << full(cfg.lambda_i) << "\n";
    }
    out << "size_ratio=" << full(cfg.file_size_bits / (cfg.deadline_s * cfg.rate_bps)) << "\n"
        << "trials=" << cfg.trials << "\n"
        << "seed=" << cfg.seed << "\n";
    return out.str();
}

} // namespace d2dcache
