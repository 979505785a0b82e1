// d2dsim: data offloading ratio of mobile D2D caching networks.
//
//   d2dsim analytic    --config PATH [--seed S]
//   d2dsim simulate    --config PATH --seed S [--trials N]
//   d2dsim sweep-users --config PATH --seed S --user-counts 5,10,15 [--trials N] [--out PATH]
//   d2dsim sweep-speed --config PATH --seed S --speed-factors 1,2,4,8 [--trials N] [--out PATH]

#include "d2dcache/analytics.hpp"
#include "d2dcache/config.hpp"
#include "d2dcache/error.hpp"
#include "d2dcache/harness.hpp"
#include "d2dcache/montecarlo.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace d2dcache;

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kValidation = 3, kRuntime = 4 };

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::string out;
    unsigned threads = 0;
};

ExperimentConfig resolve(const Common& c)
{
    ExperimentConfig cfg = load_config(c.config);
    if (c.seed)
        cfg.seed = *c.seed;
    if (c.trials)
        cfg.trials = *c.trials;
    validate(cfg);
    return cfg;
}

void write_rows(const std::vector<SweepRow>& rows, const Common& c, const ExperimentConfig& cfg,
                const std::string& name)
{
    if (c.out.empty()) {
        std::cout << format_csv(rows);
        return;
    }
    emit_csv(rows, c.out);
    std::ofstream meta(c.out + ".meta", std::ios::binary | std::ios::trunc);
    meta << format_metadata(cfg, name);
    if (!meta)
        throw std::runtime_error("failed writing '" + c.out + ".meta'");
}

void add_common(CLI::App* sub, Common& c, bool seed_required)
{
    sub->add_option("--config", c.config, "Experiment configuration file")->required()->check(CLI::ExistingFile);
    auto* seed = sub->add_option("--seed", c.seed, "Master random seed");
    if (seed_required)
        seed->required();
    sub->add_option("--trials", c.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

int run(int argc, char** argv)
{
    CLI::App app{"Data offloading ratio of mobile D2D caching networks"};
    app.require_subcommand(1);

    Common common;
    std::vector<std::size_t> user_counts;
    std::vector<double> speed_factors;

    auto* analytic = app.add_subcommand("analytic", "Evaluate the beta-approximation offloading ratio");
    add_common(analytic, common, false);
    auto* simulate = app.add_subcommand("simulate", "Analytic ratio plus a Monte Carlo estimate");
    add_common(simulate, common, true);
    auto* users = app.add_subcommand("sweep-users", "Sweep the number of users (fresh draw per point)");
    add_common(users, common, true);
    users->add_option("--user-counts", user_counts, "Comma-separated user counts")
        ->required()
        ->delimiter(',');
    users->add_option("--out", common.out, "CSV output path (stdout when omitted)");
    auto* speed = app.add_subcommand("sweep-speed", "Sweep the speed factor on a fixed placement");
    add_common(speed, common, true);
    speed->add_option("--speed-factors", speed_factors, "Comma-separated speed factors")
        ->required()
        ->delimiter(',');
    speed->add_option("--out", common.out, "CSV output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[usage]: " << e.what() << "\n";
        return kUsage;
    }

    const ExperimentConfig cfg = resolve(common);
    const TrialOptions opts{common.threads};

    if (*analytic || *simulate) {
        const Scenario sc = build_scenario(cfg, cfg.seed);
        const double ratio = aggregate_offload_ratio(sc.net, sc.placement, sc.demand, sc.sys);
        std::printf("analytic_ratio=%.6g\n", ratio);
        if (*simulate) {
            const auto mc = estimate_offload_ratio(sc.net, sc.placement, sc.demand, sc.sys, cfg.trials, cfg.seed, opts);
            std::printf("mc_ratio=%.6g\nmc_std_error=%.6g\nmc_ci_low=%.6g\nmc_ci_high=%.6g\ntrials=%zu\nseed=%llu\n",
                        mc.mean, mc.std_error, mc.mean - 1.96 * mc.std_error, mc.mean + 1.96 * mc.std_error,
                        mc.trials, static_cast<unsigned long long>(mc.seed));
        }
    } else if (*users) {
        write_rows(sweep_users(cfg, user_counts, opts), common, cfg, "users");
    } else if (*speed) {
        write_rows(sweep_speed(cfg, speed_factors, opts), common, cfg, "speed");
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const d2dcache::ConfigParseError& e) {
        std::cerr << "error[parse]: " << e.what() << "\n";
        return kParse;
    } catch (const d2dcache::ValidationError& e) {
        std::cerr << "error[validation]: " << e.what() << "\n";
        return kValidation;
    } catch (const d2dcache::DomainError& e) {
        std::cerr << "error[validation]: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error[runtime]: " << e.what() << "\n";
        return kRuntime;
    }
}
