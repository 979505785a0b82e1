#pragma once

#include "d2dcache/caching.hpp"
#include "d2dcache/mobility.hpp"
#include "d2dcache/specfun.hpp"

#include <span>
#include <vector>

namespace d2dcache {

/// File size C (bits), D2D rate R (bits/s) and delivery deadline T^d (s).
/// Requires T^d > C/R: a full contact window can always deliver the file.
class SystemParams {
public:
    SystemParams(double file_size, double rate, double deadline);

    double file_size() const noexcept { return file_size_; }
    double rate() const noexcept { return rate_; }
    double deadline() const noexcept { return deadline_; }
    /// C / (T^d R), in (0, 1).
    double size_ratio() const noexcept { return file_size_ / (deadline_ * rate_); }

private:
    double file_size_;
    double rate_;
    double deadline_;
};

struct CommTimeMoments {
    double mean = 0.0;
    double variance = 0.0;
    double deadline = 0.0;
};

struct BetaParams {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Expected communication time within the deadline given the requester's
/// pair parameters with every holder. Zero for an empty holder set.
double comm_time_mean(std::span<const PairParams> holders, double deadline);

/// Variance of the communication time by quadrature over the lag u of the
/// joint-idle correlation. The constant long-lag part is subtracted inside
/// the integrand, which is algebraically identical and avoids cancellation.
double comm_time_variance(std::span<const PairParams> holders, double deadline,
                          const specfun::QuadratureOptions& opts);
double comm_time_variance(std::span<const PairParams> holders, double deadline);

CommTimeMoments comm_time_moments(std::span<const PairParams> holders, double deadline);

/// Closed-form moments when all n_f holders share (lambda_c, lambda_i).
/// The variance is the binomial expansion of the general integral, term by
/// term 2/b * (T - 1/b + exp(-b T)/b) with b = l (lambda_c + lambda_i).
CommTimeMoments comm_time_moments_hom(double lambda_c, double lambda_i, std::size_t n_f, double deadline);

/// Beta(alpha, beta) whose scaling by the deadline reproduces the two moments.
/// Throws DomainError unless 0 < mean < T and 0 < variance < mean (T - mean).
BetaParams beta_match(const CommTimeMoments& m);

/// E[min(Y / r, 1)] for Y ~ Beta(alpha, beta):
/// 1 - I_r(alpha, beta) + (mean(Y) / r) I_r(alpha + 1, beta).
double beta_offload_ratio(const BetaParams& b, double r);

/// Expected fraction of the file delivered over D2D links for one request
/// that misses the local cache, under the beta approximation. Falls back to
/// the deterministic limit min(E R, C) / C once the variance has collapsed.
double per_request_offload_ratio(const CommTimeMoments& m, const SystemParams& sys);

/// Pair parameters between `requester` and every other user caching `file`.
std::vector<PairParams> holder_params(const NetworkMobility& net, const Placement& placement,
                                      std::size_t requester, std::size_t file);

/// Network-average data offloading ratio under the beta approximation.
double aggregate_offload_ratio(const NetworkMobility& net, const Placement& placement, const RequestModel& demand,
                               const SystemParams& sys);

} // namespace d2dcache
