#pragma once

#include "d2dcache/analytics.hpp"
#include "d2dcache/caching.hpp"
#include "d2dcache/mobility.hpp"
#include "d2dcache/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace d2dcache {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

struct CommTimeEstimate {
    double mean = 0.0;
    double mean_se = 0.0;
    double variance = 0.0;
    double variance_se = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

struct TrialOptions {
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// One request from `requester` for `file`: 1 on a local hit, otherwise the
/// fraction of the file received from holders within the deadline.
/// Each holder's timeline is drawn from its own sub-stream keyed by a single
/// draw from `rng` and the holder's user id.
double simulate_request(const NetworkMobility& net, const Placement& placement, std::size_t requester,
                        std::size_t file, const SystemParams& sys, Rng& rng);

/// Per-trial results of the offload-ratio experiment, in trial order. Trial k
/// uses the stream derived from (seed, k), so results do not depend on how
/// trials are scheduled across threads.
std::vector<double> offload_ratio_samples(const NetworkMobility& net, const Placement& placement,
                                          const RequestModel& demand, const SystemParams& sys, std::size_t trials,
                                          std::uint64_t seed, const TrialOptions& opts = {});

/// Draws the requester uniformly and the file from its request row, then
/// runs simulate_request; reports the sample mean and standard error.
McEstimate estimate_offload_ratio(const NetworkMobility& net, const Placement& placement,
                                  const RequestModel& demand, const SystemParams& sys, std::size_t trials,
                                  std::uint64_t seed, const TrialOptions& opts = {});

/// Sample of the communication time over stationary-start trials.
std::vector<double> comm_time_samples(std::span<const PairParams> holders, double deadline, std::size_t trials,
                                      std::uint64_t seed, const TrialOptions& opts = {});

/// Unbiased sample mean and variance of the communication time.
CommTimeEstimate estimate_comm_time_moments(std::span<const PairParams> holders, double deadline,
                                            std::size_t trials, std::uint64_t seed,
                                            const TrialOptions& opts = {});

/// Mean and standard error of a sample, summed in index order.
McEstimate summarize(std::span<const double> samples, std::uint64_t seed);

} // namespace d2dcache
