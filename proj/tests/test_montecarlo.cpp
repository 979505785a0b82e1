#include "d2dcache/analytics.hpp"
#include "d2dcache/error.hpp"
#include "d2dcache/montecarlo.hpp"

#include <doctest.h>

#include <cmath>

using namespace d2dcache;

namespace {

const PairParams kBasePair{0.001, 0.0002};
const SystemParams kSys{1.5e8, 1e6, 300.0};

} // namespace

TEST_CASE("simulate_request edge cases")
{
    Rng rng(4);
    const auto net = NetworkMobility::homogeneous(3, kBasePair);
    Placement p(3, 4, 1);
    p.set(0, 0, true);
    CHECK(simulate_request(net, p, 0, 0, kSys, rng) == 1.0);
    CHECK(simulate_request(net, p, 1, 2, kSys, rng) == 0.0);

    const auto pinned = NetworkMobility::homogeneous(3, PairParams(1e-12, 1e3));
    CHECK(simulate_request(pinned, p, 1, 0, kSys, rng) == 1.0);

    for (int k = 0; k < 1000; ++k) {
        const double v = simulate_request(net, p, 2, 0, kSys, rng);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK_THROWS_AS(simulate_request(net, p, 3, 0, kSys, rng), DomainError);
}

TEST_CASE("estimate_offload_ratio boundary placements")
{
    const std::size_t n = 5, f = 8;
    const auto net = NetworkMobility::homogeneous(n, kBasePair);
    const auto demand = zipf_demand(f, 0.6, n);
    const auto all = estimate_offload_ratio(net, uniform_all_same_placement(n, f, f), demand, kSys, 500, 9);
    CHECK(all.mean == 1.0);
    CHECK(all.std_error == 0.0);
    CHECK(all.trials == 500);
    CHECK(all.seed == 9);
    const auto none = estimate_offload_ratio(net, Placement(n, f, 2), demand, kSys, 500, 9);
    CHECK(none.mean == 0.0);
    CHECK_THROWS_AS(estimate_offload_ratio(net, Placement(n, f, 2), demand, kSys, 0, 9), DomainError);
}

TEST_CASE("Monte Carlo offload ratio agrees with the beta approximation on the homogeneous setup")
{
    const std::size_t n = 15, f = 100;
    Rng rng(derive_seed(5, {2}));
    const auto demand = zipf_demand(f, 0.6, n);
    const auto placement = random_caching(n, f, 5, demand.row(0), rng);
    const auto net = NetworkMobility::homogeneous(n, kBasePair);
    const double analytic = aggregate_offload_ratio(net, placement, demand, kSys);
    const auto mc = estimate_offload_ratio(net, placement, demand, kSys, 20000, 5);
    CHECK(std::fabs(analytic - mc.mean) <= std::max(0.02, 3.0 * mc.std_error));
}

TEST_CASE("estimate_comm_time_moments")
{
    const auto none = estimate_comm_time_moments({}, 300.0, 100, 1);
    CHECK(none.mean == 0.0);
    CHECK(none.variance == 0.0);

    const auto one = estimate_comm_time_moments(std::vector{kBasePair}, 300.0, 200000, 2);
    CHECK(std::fabs(one.mean - 50.0) <= 3.0 * one.mean_se);
    CHECK(one.variance_se > 0.0);
    CHECK_THROWS_AS(estimate_comm_time_moments(std::vector{kBasePair}, 300.0, 1, 2), DomainError);
}

TEST_CASE("results do not depend on the number of worker threads")
{
    const std::size_t n = 10, f = 50;
    Rng rng(6);
    const auto demand = zipf_demand(f, 0.6, n);
    const auto placement = random_caching(n, f, 5, demand.row(0), rng);
    const auto net = NetworkMobility::homogeneous(n, PairParams(0.004, 0.001));
    const auto serial = offload_ratio_samples(net, placement, demand, kSys, 5000, 44, {1});
    for (unsigned t : {2u, 3u, 8u}) {
        const auto parallel = offload_ratio_samples(net, placement, demand, kSys, 5000, 44, {t});
        CHECK(parallel == serial);
        const auto a = summarize(serial, 44);
        const auto b = summarize(parallel, 44);
        CHECK(a.mean == b.mean);
        CHECK(a.std_error == b.std_error);
    }
    const std::vector h{kBasePair, PairParams(0.01, 0.003)};
    CHECK(comm_time_samples(h, 300.0, 3000, 12, {1}) == comm_time_samples(h, 300.0, 3000, 12, {4}));
}

TEST_CASE("standard error shrinks as one over root trials")
{
    const std::vector h{kBasePair, kBasePair};
    const auto small = estimate_comm_time_moments(h, 300.0, 20000, 3);
    const auto large = estimate_comm_time_moments(h, 300.0, 80000, 4);
    const double ratio = small.mean_se / large.mean_se;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));
}
