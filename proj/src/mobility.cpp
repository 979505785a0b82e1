#include "d2dcache/mobility.hpp"

#include "d2dcache/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace d2dcache {

PairParams::PairParams(double lambda_c, double lambda_i) : lambda_c_(lambda_c), lambda_i_(lambda_i)
{
    if (!(lambda_c > 0.0) || !(lambda_i > 0.0) || !std::isfinite(lambda_c) || !std::isfinite(lambda_i))
        throw DomainError("PairParams: rates must be positive and finite (lambda_c=" + std::to_string(lambda_c) +
                          ", lambda_i=" + std::to_string(lambda_i) + ")");
}

NetworkMobility::NetworkMobility(std::size_t n_users, std::vector<PairParams> pairs)
    : n_users_(n_users), pairs_(std::move(pairs))
{
    if (n_users < 2)
        throw DomainError("NetworkMobility: need at least two users");
    if (pairs_.size() != n_users * (n_users - 1) / 2)
        throw DomainError("NetworkMobility: expected " + std::to_string(n_users * (n_users - 1) / 2) +
                          " pairs, got " + std::to_string(pairs_.size()));
}

NetworkMobility NetworkMobility::homogeneous(std::size_t n_users, const PairParams& p)
{
    return NetworkMobility(n_users, std::vector<PairParams>(n_users * (n_users - 1) / 2, p));
}

std::size_t NetworkMobility::pair_index(std::size_t n_users, std::size_t i, std::size_t j)
{
    if (i == j || i >= n_users || j >= n_users)
        throw DomainError("NetworkMobility: invalid pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    const std::size_t a = std::min(i, j);
    const std::size_t b = std::max(i, j);
    // pairs with first index < a, then offset within row a
    return a * (2 * n_users - a - 1) / 2 + (b - a - 1);
}

const PairParams& NetworkMobility::pair(std::size_t i, std::size_t j) const
{
    return pairs_[pair_index(n_users_, i, j)];
}

NetworkMobility NetworkMobility::scaled(double s) const
{
    std::vector<PairParams> out;
    out.reserve(pairs_.size());
    for (const auto& p : pairs_)
        out.push_back(scale_speed(p, s));
    return NetworkMobility(n_users_, std::move(out));
}

std::vector<std::pair<double, double>> ContactTimeline::contact_intervals(double limit) const
{
    std::vector<std::pair<double, double>> out;
    long double t = 0.0L;
    bool on = initially_in_contact;
    for (double d : durations) {
        if (t >= limit)
            break;
        const long double end = t + d;
        if (on)
            out.emplace_back(static_cast<double>(t), static_cast<double>(std::min<long double>(end, limit)));
        t = end;
        on = !on;
    }
    return out;
}

bool ContactTimeline::in_contact_at(double t) const
{
    long double acc = 0.0L;
    bool on = initially_in_contact;
    for (double d : durations) {
        acc += d;
        if (t < acc)
            return on;
        on = !on;
    }
    // past the sampled span: the last state persists
    return !on;
}

double stationary_contact_prob(const PairParams& p) noexcept
{
    return p.lambda_i() / p.total_rate();
}

double conditional_idle_prob(const PairParams& p, double dt)
{
    if (!(dt >= 0.0))
        throw DomainError("conditional_idle_prob: dt must be non-negative");
    const double a = p.total_rate();
    return p.lambda_c() / a + (p.lambda_i() / a) * std::exp(-a * dt);
}

PairParams scale_speed(const PairParams& p, double s)
{
    if (!(s > 0.0) || !std::isfinite(s))
        throw DomainError("scale_speed: factor must be positive");
    return PairParams(s * p.lambda_c(), s * p.lambda_i());
}

namespace {

double exponential(double rate, Rng& rng)
{
    // 1 - U lies in (0, 1], so the log is finite
    return -std::log1p(-uniform01(rng)) / rate;
}

} // namespace

ContactTimeline sample_timeline(const PairParams& p, double horizon, Rng& rng)
{
    if (!(horizon > 0.0))
        throw DomainError("sample_timeline: horizon must be positive");
    ContactTimeline tl;
    tl.horizon = horizon;
    tl.initially_in_contact = uniform01(rng) < stationary_contact_prob(p);
    bool on = tl.initially_in_contact;
    long double t = 0.0L;
    while (t < horizon) {
        double d = exponential(on ? p.lambda_c() : p.lambda_i(), rng);
        if (!(d > 0.0))
            d = std::numeric_limits<double>::denorm_min();
        tl.durations.push_back(d);
        t += d;
        on = !on;
    }
    return tl;
}

double union_communication_time(std::span<const ContactTimeline> timelines, double window)
{
    if (!(window > 0.0))
        throw DomainError("union_communication_time: window must be positive");
    std::vector<std::pair<double, double>> intervals;
    for (const auto& tl : timelines) {
        auto iv = tl.contact_intervals(window);
        intervals.insert(intervals.end(), iv.begin(), iv.end());
    }
    if (intervals.empty())
        return 0.0;
    std::sort(intervals.begin(), intervals.end());
    long double covered = 0.0L;
    double cur_lo = intervals.front().first;
    double cur_hi = intervals.front().second;
    for (std::size_t k = 1; k < intervals.size(); ++k) {
        const auto [lo, hi] = intervals[k];
        if (lo > cur_hi) {
            covered += cur_hi - cur_lo;
            cur_lo = lo;
            cur_hi = hi;
        } else {
            cur_hi = std::max(cur_hi, hi);
        }
    }
    covered += cur_hi - cur_lo;
    return std::clamp(static_cast<double>(covered), 0.0, window);
}

} // namespace d2dcache
