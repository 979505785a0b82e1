#pragma once

#include "d2dcache/rng.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace d2dcache {

/// Exponential rates of one user pair's contact process, in 1/seconds.
/// Contact durations have mean 1/lambda_c, inter-contact durations 1/lambda_i.
class PairParams {
public:
    PairParams(double lambda_c, double lambda_i);

    double lambda_c() const noexcept { return lambda_c_; }
    double lambda_i() const noexcept { return lambda_i_; }
    double total_rate() const noexcept { return lambda_c_ + lambda_i_; }

    friend bool operator==(const PairParams&, const PairParams&) = default;

private:
    double lambda_c_;
    double lambda_i_;
};

/// Pair parameters for every unordered pair of N users, indexed by (min, max).
class NetworkMobility {
public:
    /// `pairs` in canonical order: (0,1), (0,2), ..., (0,N-1), (1,2), ...
    NetworkMobility(std::size_t n_users, std::vector<PairParams> pairs);

    static NetworkMobility homogeneous(std::size_t n_users, const PairParams& p);

    std::size_t n_users() const noexcept { return n_users_; }
    std::size_t n_pairs() const noexcept { return pairs_.size(); }
    const PairParams& pair(std::size_t i, std::size_t j) const;
    std::span<const PairParams> pairs() const noexcept { return pairs_; }

    /// Every pair's rates multiplied by s.
    NetworkMobility scaled(double s) const;

    static std::size_t pair_index(std::size_t n_users, std::size_t i, std::size_t j);

private:
    std::size_t n_users_;
    std::vector<PairParams> pairs_;
};

/// Alternating on/off durations of one pair over [0, horizon].
struct ContactTimeline {
    bool initially_in_contact = false;
    std::vector<double> durations;
    double horizon = 0.0;

    /// In-contact intervals [start, end), clipped to [0, limit].
    std::vector<std::pair<double, double>> contact_intervals(double limit) const;
    /// State at time t (t within the covered span).
    bool in_contact_at(double t) const;
};

/// Long-run probability of being in contact: lambda_i / (lambda_c + lambda_i).
double stationary_contact_prob(const PairParams& p) noexcept;

/// Pr[idle at t + dt | idle at t].
double conditional_idle_prob(const PairParams& p, double dt);

PairParams scale_speed(const PairParams& p, double s);

/// Stationary-start timeline covering at least `horizon` seconds. With
/// exponential sojourns the residual first duration is again exponential.
ContactTimeline sample_timeline(const PairParams& p, double horizon, Rng& rng);

/// Measure of {t in [0, window] : some timeline is in contact at t}.
double union_communication_time(std::span<const ContactTimeline> timelines, double window);

} // namespace d2dcache
