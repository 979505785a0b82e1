#include "d2dcache/analytics.hpp"

#include "d2dcache/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace d2dcache {

namespace {

// Below this fraction of the bounded-variable limit mean (T - mean) the beta
// model has concentrated at its mean.
constexpr double kCollapsedVariance = 1e-12;

double idle_product(std::span<const PairParams> holders)
{
    double prod = 1.0;
    for (const auto& p : holders)
        prod *= p.lambda_c() / p.total_rate();
    return prod;
}

void check_deadline(double deadline)
{
    if (!(deadline > 0.0) || !std::isfinite(deadline))
        throw DomainError("deadline must be positive and finite");
}

} // namespace

SystemParams::SystemParams(double file_size, double rate, double deadline)
    : file_size_(file_size), rate_(rate), deadline_(deadline)
{
    if (!(file_size > 0.0) || !(rate > 0.0) || !(deadline > 0.0) || !std::isfinite(file_size) ||
        !std::isfinite(rate) || !std::isfinite(deadline))
        throw DomainError("SystemParams: file size, rate and deadline must be positive");
    if (!(deadline > file_size / rate))
        throw DomainError("SystemParams: deadline " + std::to_string(deadline) +
                          " s must exceed the download time C/R = " + std::to_string(file_size / rate) + " s");
}

double comm_time_mean(std::span<const PairParams> holders, double deadline)
{
    check_deadline(deadline);
    if (holders.empty())
        return 0.0;
    return deadline * (1.0 - idle_product(holders));
}

double comm_time_variance(std::span<const PairParams> holders, double deadline,
                          const specfun::QuadratureOptions& opts)
{
    check_deadline(deadline);
    if (holders.empty())
        return 0.0;
    const double idle = idle_product(holders);
    const double limit = idle * idle;
    auto integrand = [&](double u) {
        // Pr[all holders idle at t and at t + u] for a stationary start
        double joint = 1.0;
        for (const auto& p : holders) {
            const double a = p.total_rate();
            joint *= p.lambda_c() / (a * a) * (p.lambda_c() + p.lambda_i() * std::exp(-u * a));
        }
        return 2.0 * (deadline - u) * (joint - limit);
    };
    const auto res = specfun::integrate(integrand, 0.0, deadline, opts);
    return std::max(res.value, 0.0);
}

double comm_time_variance(std::span<const PairParams> holders, double deadline)
{
    specfun::QuadratureOptions opts;
    opts.abs_tol = 1e-13 * deadline * deadline;
    opts.rel_tol = 1e-11;
    return comm_time_variance(holders, deadline, opts);
}

CommTimeMoments comm_time_moments(std::span<const PairParams> holders, double deadline)
{
    return {comm_time_mean(holders, deadline), comm_time_variance(holders, deadline), deadline};
}

CommTimeMoments comm_time_moments_hom(double lambda_c, double lambda_i, std::size_t n_f, double deadline)
{
    const PairParams p(lambda_c, lambda_i);
    check_deadline(deadline);
    if (n_f == 0)
        throw DomainError("comm_time_moments_hom: need at least one holder");
    const double a = p.total_rate();
    const double idle = lambda_c / a;
    const double busy = lambda_i / a;
    const double n = static_cast<double>(n_f);

    CommTimeMoments m;
    m.deadline = deadline;
    m.mean = deadline * (1.0 - std::pow(idle, n));

    double sum = 0.0;
    double binom = 1.0;
    for (std::size_t l = 1; l <= n_f; ++l) {
        binom = binom * static_cast<double>(n_f - l + 1) / static_cast<double>(l);
        const double b = static_cast<double>(l) * a;
        const double bt = b * deadline;
        // 2 * int_0^T (T - u) exp(-b u) du
        const double lag = 2.0 * (bt + std::expm1(-bt)) / (b * b);
        sum += binom * std::pow(idle, 2.0 * n - static_cast<double>(l)) * std::pow(busy, static_cast<double>(l)) * lag;
    }
    m.variance = sum;
    return m;
}

BetaParams beta_match(const CommTimeMoments& m)
{
    check_deadline(m.deadline);
    const double T = m.deadline;
    if (!(m.mean > 0.0 && m.mean < T))
        throw DomainError("beta_match: mean " + std::to_string(m.mean) + " must lie strictly inside (0, " +
                          std::to_string(T) + ")");
    const double bound = m.mean * (T - m.mean);
    if (!(m.variance > 0.0 && m.variance < bound))
        throw DomainError("beta_match: variance " + std::to_string(m.variance) +
                          " must lie strictly inside (0, mean*(T-mean) = " + std::to_string(bound) + ")");
    const double alpha = m.mean * m.mean * (T - m.mean) / (m.variance * T) - m.mean / T;
    const double beta = alpha * (T - m.mean) / m.mean;
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw DomainError("beta_match: matched parameters are not positive");
    return {alpha, beta};
}

double beta_offload_ratio(const BetaParams& b, double r)
{
    if (!(r > 0.0 && r < 1.0))
        throw DomainError("beta_offload_ratio: size ratio must lie in (0, 1)");
    const double mean = b.alpha / (b.alpha + b.beta);
    const double value = 1.0 - specfun::reg_inc_beta(r, b.alpha, b.beta) +
                         (mean / r) * specfun::reg_inc_beta(r, b.alpha + 1.0, b.beta);
    return std::clamp(value, 0.0, 1.0);
}

double per_request_offload_ratio(const CommTimeMoments& m, const SystemParams& sys)
{
    if (std::fabs(m.deadline - sys.deadline()) > 1e-12 * sys.deadline())
        throw DomainError("per_request_offload_ratio: moments were computed for a different deadline");
    if (m.mean <= 0.0)
        return 0.0;
    const double T = sys.deadline();
    const double bound = m.mean * (T - m.mean);
    if (m.variance <= kCollapsedVariance * bound || bound <= 0.0)
        return std::min(m.mean * sys.rate(), sys.file_size()) / sys.file_size();
    return beta_offload_ratio(beta_match(m), sys.size_ratio());
}

std::vector<PairParams> holder_params(const NetworkMobility& net, const Placement& placement,
                                      std::size_t requester, std::size_t file)
{
    std::vector<PairParams> out;
    for (std::size_t j : placement.holders(requester, file))
        out.push_back(net.pair(requester, j));
    return out;
}

double aggregate_offload_ratio(const NetworkMobility& net, const Placement& placement, const RequestModel& demand,
                               const SystemParams& sys)
{
    const std::size_t n_users = net.n_users();
    if (placement.n_users() != n_users || demand.n_users() != n_users)
        throw DomainError("aggregate_offload_ratio: user counts disagree");
    if (placement.n_files() != demand.n_files())
        throw DomainError("aggregate_offload_ratio: file counts disagree");

    double total = 0.0;
    for (std::size_t i = 0; i < n_users; ++i) {
        double user_ratio = 0.0;
        for (std::size_t f = 0; f < demand.n_files(); ++f) {
            const double p = demand.prob(i, f);
            if (p == 0.0)
                continue;
            if (placement.cached(i, f)) {
                user_ratio += p;
                continue;
            }
            const auto holders = holder_params(net, placement, i, f);
            if (holders.empty())
                continue;
            user_ratio += p * per_request_offload_ratio(comm_time_moments(holders, sys.deadline()), sys);
        }
        total += user_ratio;
    }
    return std::clamp(total / static_cast<double>(n_users), 0.0, 1.0);
}

} // namespace d2dcache
