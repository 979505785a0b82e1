#include "d2dcache/montecarlo.hpp"

#include "d2dcache/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace d2dcache {

namespace {

template <class Fn>
std::vector<double> run_trials(std::size_t trials, const TrialOptions& opts, Fn&& trial)
{
    std::vector<double> out(trials);
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, trials / 256)));
    if (threads <= 1) {
        for (std::size_t k = 0; k < trials; ++k)
            out[k] = trial(k);
        return out;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (trials + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(trials, lo + chunk);
            workers.emplace_back([&, w, lo, hi] {
                try {
                    for (std::size_t k = lo; k < hi; ++k)
                        out[k] = trial(k);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

double communication_time(std::span<const PairParams> holders, double deadline, std::uint64_t key,
                          std::span<const std::size_t> holder_ids, std::vector<ContactTimeline>& buffer)
{
    buffer.clear();
    for (std::size_t h = 0; h < holders.size(); ++h) {
        Rng stream = derive_stream(key, {holder_ids.empty() ? h : holder_ids[h]});
        buffer.push_back(sample_timeline(holders[h], deadline, stream));
    }
    return union_communication_time(buffer, deadline);
}

std::size_t sample_index(std::span<const double> pmf, double u)
{
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] <= 0.0)
            continue;
        last = k;
        acc += pmf[k];
        if (u < acc)
            return k;
    }
    return last;
}

void require_trials(std::size_t trials, std::size_t minimum)
{
    if (trials < minimum)
        throw DomainError("Monte Carlo: need at least " + std::to_string(minimum) + " trials");
}

} // namespace

double simulate_request(const NetworkMobility& net, const Placement& placement, std::size_t requester,
                        std::size_t file, const SystemParams& sys, Rng& rng)
{
    if (requester >= placement.n_users() || file >= placement.n_files() || placement.n_users() != net.n_users())
        throw DomainError("simulate_request: invalid requester or file");
    const std::uint64_t key = rng();
    if (placement.cached(requester, file))
        return 1.0;
    const auto ids = placement.holders(requester, file);
    if (ids.empty())
        return 0.0;
    std::vector<PairParams> holders;
    holders.reserve(ids.size());
    for (std::size_t j : ids)
        holders.push_back(net.pair(requester, j));
    std::vector<ContactTimeline> buffer;
    const double tc = communication_time(holders, sys.deadline(), key, ids, buffer);
    return std::min(sys.rate() * tc, sys.file_size()) / sys.file_size();
}

std::vector<double> offload_ratio_samples(const NetworkMobility& net, const Placement& placement,
                                          const RequestModel& demand, const SystemParams& sys, std::size_t trials,
                                          std::uint64_t seed, const TrialOptions& opts)
{
    require_trials(trials, 1);
    if (placement.n_users() != net.n_users() || demand.n_users() != net.n_users() ||
        demand.n_files() != placement.n_files())
        throw DomainError("estimate_offload_ratio: dimensions disagree");
    const std::size_t n_users = net.n_users();
    return run_trials(trials, opts, [&](std::size_t k) {
        Rng rng = derive_stream(seed, {k});
        const auto user = std::min(n_users - 1, static_cast<std::size_t>(uniform01(rng) * n_users));
        const auto file = sample_index(demand.row(user), uniform01(rng));
        return simulate_request(net, placement, user, file, sys, rng);
    });
}

McEstimate summarize(std::span<const double> samples, std::uint64_t seed)
{
    McEstimate est;
    est.trials = samples.size();
    est.seed = seed;
    if (samples.empty())
        return est;
    long double sum = 0.0L;
    for (double x : samples)
        sum += x;
    const long double mean = sum / samples.size();
    long double ss = 0.0L;
    for (double x : samples)
        ss += (x - mean) * (x - mean);
    est.mean = static_cast<double>(mean);
    est.std_error =
        samples.size() > 1 ? static_cast<double>(std::sqrt(ss / (samples.size() - 1) / samples.size())) : 0.0;
    return est;
}

McEstimate estimate_offload_ratio(const NetworkMobility& net, const Placement& placement,
                                  const RequestModel& demand, const SystemParams& sys, std::size_t trials,
                                  std::uint64_t seed, const TrialOptions& opts)
{
    const auto samples = offload_ratio_samples(net, placement, demand, sys, trials, seed, opts);
    return summarize(samples, seed);
}

std::vector<double> comm_time_samples(std::span<const PairParams> holders, double deadline, std::size_t trials,
                                      std::uint64_t seed, const TrialOptions& opts)
{
    require_trials(trials, 1);
    if (!(deadline > 0.0))
        throw DomainError("comm_time_samples: deadline must be positive");
    return run_trials(trials, opts, [&](std::size_t k) {
        if (holders.empty())
            return 0.0;
        thread_local std::vector<ContactTimeline> buffer;
        Rng rng = derive_stream(seed, {k});
        return communication_time(holders, deadline, rng(), {}, buffer);
    });
}

CommTimeEstimate estimate_comm_time_moments(std::span<const PairParams> holders, double deadline,
                                            std::size_t trials, std::uint64_t seed, const TrialOptions& opts)
{
    require_trials(trials, 2);
    const auto samples = comm_time_samples(holders, deadline, trials, seed, opts);
    const long double n = static_cast<long double>(trials);
    long double sum = 0.0L;
    for (double x : samples)
        sum += x;
    const long double mean = sum / n;
    long double m2 = 0.0L;
    long double m4 = 0.0L;
    for (double x : samples) {
        const long double d = x - mean;
        const long double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    const long double var = m2 / (n - 1);
    const long double mu4 = m4 / n;
    const long double mu2 = m2 / n;

    CommTimeEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.mean = static_cast<double>(mean);
    est.mean_se = static_cast<double>(std::sqrt(var / n));
    est.variance = static_cast<double>(var);
    // large-sample standard error of the sample variance
    est.variance_se = static_cast<double>(std::sqrt(std::max(0.0L, mu4 - mu2 * mu2) / n));
    return est;
}

} // namespace d2dcache
