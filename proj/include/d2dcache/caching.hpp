#pragma once

#include "d2dcache/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace d2dcache {

/// Per-user request probabilities over the file library (rows sum to 1).
class RequestModel {
public:
    RequestModel(std::size_t n_users, std::size_t n_files, std::vector<double> probs);

    std::size_t n_users() const noexcept { return n_users_; }
    std::size_t n_files() const noexcept { return n_files_; }
    double prob(std::size_t user, std::size_t file) const { return probs_[user * n_files_ + file]; }
    std::span<const double> row(std::size_t user) const
    {
        return {probs_.data() + user * n_files_, n_files_};
    }

private:
    std::size_t n_users_;
    std::size_t n_files_;
    std::vector<double> probs_;
};

/// Binary cache matrix: cached(j, f) is 1 when user j stores file f.
class Placement {
public:
    Placement(std::size_t n_users, std::size_t n_files, std::size_t capacity);
    Placement(std::size_t n_users, std::size_t n_files, std::size_t capacity, std::vector<std::uint8_t> cached);

    std::size_t n_users() const noexcept { return n_users_; }
    std::size_t n_files() const noexcept { return n_files_; }
    std::size_t capacity() const noexcept { return capacity_; }

    bool cached(std::size_t user, std::size_t file) const { return cached_[user * n_files_ + file] != 0; }
    /// Throws DomainError when the user's row would exceed capacity.
    void set(std::size_t user, std::size_t file, bool value);

    std::size_t row_count(std::size_t user) const;
    /// Users other than `requester` that store `file`.
    std::vector<std::size_t> holders(std::size_t requester, std::size_t file) const;

private:
    std::size_t n_users_;
    std::size_t n_files_;
    std::size_t capacity_;
    std::vector<std::uint8_t> cached_;
};

/// Zipf(gamma_r) popularity shared by all users; file 0 is the most popular.
RequestModel zipf_demand(std::size_t n_files, double gamma_r, std::size_t n_users);

std::vector<double> zipf_pmf(std::size_t n_files, double gamma_r);

/// Each user independently caches `capacity` distinct files, drawn one at a
/// time with probability proportional to the weights of files not yet chosen.
Placement random_caching(std::size_t n_users, std::size_t n_files, std::size_t capacity,
                         std::span<const double> weights, Rng& rng);

/// Every user caches files 0..capacity-1.
Placement uniform_all_same_placement(std::size_t n_users, std::size_t n_files, std::size_t capacity);

} // namespace d2dcache
