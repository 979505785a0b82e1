#include "d2dcache/caching.hpp"

#include "d2dcache/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace d2dcache {

RequestModel::RequestModel(std::size_t n_users, std::size_t n_files, std::vector<double> probs)
    : n_users_(n_users), n_files_(n_files), probs_(std::move(probs))
{
    if (n_users == 0 || n_files == 0)
        throw DomainError("RequestModel: dimensions must be positive");
    if (probs_.size() != n_users * n_files)
        throw DomainError("RequestModel: probability matrix has wrong size");
    for (std::size_t i = 0; i < n_users; ++i) {
        double sum = 0.0;
        for (double p : row(i)) {
            if (!(p >= 0.0))
                throw DomainError("RequestModel: negative request probability for user " + std::to_string(i));
            sum += p;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw DomainError("RequestModel: row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
}

Placement::Placement(std::size_t n_users, std::size_t n_files, std::size_t capacity)
    : n_users_(n_users), n_files_(n_files), capacity_(capacity), cached_(n_users * n_files, 0)
{
    if (n_users == 0 || n_files == 0)
        throw DomainError("Placement: dimensions must be positive");
}

Placement::Placement(std::size_t n_users, std::size_t n_files, std::size_t capacity, std::vector<std::uint8_t> cached)
    : Placement(n_users, n_files, capacity)
{
    if (cached.size() != n_users * n_files)
        throw DomainError("Placement: cache matrix has wrong size");
    for (std::size_t j = 0; j < n_users; ++j)
        for (std::size_t f = 0; f < n_files; ++f)
            if (cached[j * n_files + f] > 1)
                throw DomainError("Placement: entries must be 0 or 1");
            else if (cached[j * n_files + f])
                set(j, f, true);
}

void Placement::set(std::size_t user, std::size_t file, bool value)
{
    if (user >= n_users_ || file >= n_files_)
        throw DomainError("Placement: index out of range");
    auto& cell = cached_[user * n_files_ + file];
    if (value && !cell && row_count(user) >= capacity_)
        throw DomainError("Placement: user " + std::to_string(user) + " exceeds capacity " +
                          std::to_string(capacity_));
    cell = value ? 1 : 0;
}

std::size_t Placement::row_count(std::size_t user) const
{
    const auto* row = cached_.data() + user * n_files_;
    return static_cast<std::size_t>(std::accumulate(row, row + n_files_, std::size_t{0}));
}

std::vector<std::size_t> Placement::holders(std::size_t requester, std::size_t file) const
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_users_; ++j)
        if (j != requester && cached(j, file))
            out.push_back(j);
    return out;
}

std::vector<double> zipf_pmf(std::size_t n_files, double gamma_r)
{
    if (n_files == 0)
        throw DomainError("zipf_pmf: need at least one file");
    if (!(gamma_r >= 0.0))
        throw DomainError("zipf_pmf: exponent must be non-negative");
    std::vector<double> pmf(n_files);
    for (std::size_t f = 0; f < n_files; ++f)
        pmf[f] = std::pow(static_cast<double>(f + 1), -gamma_r);
    const double norm = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    for (double& p : pmf)
        p /= norm;
    return pmf;
}

RequestModel zipf_demand(std::size_t n_files, double gamma_r, std::size_t n_users)
{
    const auto pmf = zipf_pmf(n_files, gamma_r);
    std::vector<double> probs;
    probs.reserve(n_users * n_files);
    for (std::size_t i = 0; i < n_users; ++i)
        probs.insert(probs.end(), pmf.begin(), pmf.end());
    return RequestModel(n_users, n_files, std::move(probs));
}

Placement random_caching(std::size_t n_users, std::size_t n_files, std::size_t capacity,
                         std::span<const double> weights, Rng& rng)
{
    if (capacity > n_files)
        throw DomainError("random_caching: capacity exceeds library size");
    if (weights.size() != n_files)
        throw DomainError("random_caching: need one weight per file");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w))
            throw DomainError("random_caching: weights must be strictly positive");

    Placement placement(n_users, n_files, capacity);
    std::vector<double> remaining(n_files);
    for (std::size_t j = 0; j < n_users; ++j) {
        remaining.assign(weights.begin(), weights.end());
        for (std::size_t k = 0; k < capacity; ++k) {
            const double total = std::accumulate(remaining.begin(), remaining.end(), 0.0);
            const double target = uniform01(rng) * total;
            double acc = 0.0;
            std::size_t pick = n_files;
            std::size_t last_open = n_files;
            for (std::size_t f = 0; f < n_files; ++f) {
                if (remaining[f] == 0.0)
                    continue;
                last_open = f;
                acc += remaining[f];
                if (target < acc) {
                    pick = f;
                    break;
                }
            }
            if (pick == n_files)
                pick = last_open; // rounding at the top end of the cumulative sum
            placement.set(j, pick, true);
            remaining[pick] = 0.0;
        }
    }
    return placement;
}

Placement uniform_all_same_placement(std::size_t n_users, std::size_t n_files, std::size_t capacity)
{
    if (capacity > n_files)
        throw DomainError("uniform_all_same_placement: capacity exceeds library size");
    Placement placement(n_users, n_files, capacity);
    for (std::size_t j = 0; j < n_users; ++j)
        for (std::size_t f = 0; f < capacity; ++f)
            placement.set(j, f, true);
    return placement;
}

} // namespace d2dcache
