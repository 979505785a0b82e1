#include "d2dcache/config.hpp"
#include "d2dcache/error.hpp"
#include "d2dcache/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace d2dcache;

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ExperimentConfig small_config()
{
    ExperimentConfig cfg;
    cfg.n_users = 6;
    cfg.n_files = 20;
    cfg.trials = 400;
    cfg.seed = 3;
    return cfg;
}

} // namespace

TEST_CASE("minimal homogeneous config takes documented defaults")
{
    const auto cfg = parse_config("[mobility]\nmode = homogeneous\n");
    CHECK(cfg == ExperimentConfig{});
    CHECK(cfg.n_users == 15);
    CHECK(cfg.n_files == 100);
    CHECK(cfg.cache_capacity == 5);
    CHECK(cfg.zipf_gamma == 0.6);
    CHECK(cfg.deadline_s == 300.0);
    CHECK(cfg.file_size_bits / (cfg.deadline_s * cfg.rate_bps) == doctest::Approx(0.5));
    CHECK(cfg.lambda_c == 0.001);
    CHECK(cfg.lambda_i == 0.0002);
    CHECK(cfg.trials == 10000);
}

TEST_CASE("config values, comments and fractions")
{
    const auto cfg = parse_config(R"(
# heterogeneous study
[network]
n_users = 20        ; inline comment
cache_capacity=4
[mobility]
mode = gamma_heterogeneous
gamma_scale_i = 1/1088
[simulation]
seed = 18446744073709551615
)");
    CHECK(cfg.n_users == 20);
    CHECK(cfg.cache_capacity == 4);
    CHECK(cfg.mobility_mode == MobilityMode::gamma_heterogeneous);
    CHECK(cfg.gamma_scale_i == 1.0 / 1088.0);
    CHECK(cfg.seed == 18446744073709551615ULL);
    CHECK(parse_config(format_config(cfg)) == cfg);
}

TEST_CASE("config parse errors carry the line")
{
    auto line_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("[network]\nn_users = 4\nbogus = 1\n") == 3);
    CHECK(line_of("[network]\n\n[nowhere]\n") == 3);
    CHECK(line_of("n_users = 4\n") == 1);
    CHECK(line_of("[network]\nn_users = four\n") == 2);
    CHECK(line_of("[network]\nn_users = 4\nn_users = 5\n") == 3);
    CHECK(line_of("[delivery]\nrate_bps\n") == 2);
    CHECK(line_of("[delivery\n") == 1);
    CHECK(line_of("[mobility]\nmode = spatial\n") == 2);
    CHECK(line_of("[mobility]\nlambda_c = 1/0\n") == 2);
    CHECK_THROWS_AS(load_config("/nonexistent/d2d.cfg"), ConfigParseError);
}

TEST_CASE("config validation names the violated invariant")
{
    try {
        parse_config("[delivery]\ndeadline_s = 100\nfile_size_bits = 1.5e8\nrate_bps = 1e6\n");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("deadline_s must exceed file_size_bits / rate_bps") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[mobility]\nlambda_c = -0.001\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[delivery]\nrate_bps = 0\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[network]\nn_users = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[network]\ncache_capacity = 101\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[simulation]\ntrials = 0\n"), ValidationError);
}

TEST_CASE("load_config reads files")
{
    const auto path = std::filesystem::temp_directory_path() / "d2dcache_test.cfg";
    {
        std::ofstream out(path);
        out << "[network]\nn_users = 9\n";
    }
    CHECK(load_config(path).n_users == 9);
    std::filesystem::remove(path);
}

TEST_CASE("heterogeneous rates follow the configured gamma laws")
{
    ExperimentConfig cfg;
    cfg.mobility_mode = MobilityMode::gamma_heterogeneous;
    cfg.n_users = 448; // 100128 pairs
    Rng rng(10);
    const auto net = draw_heterogeneous_params(cfg, rng);
    const double n = static_cast<double>(net.n_pairs());
    double si = 0, si2 = 0, sc = 0, sc2 = 0, sic = 0;
    for (const auto& p : net.pairs()) {
        si += p.lambda_i();
        si2 += p.lambda_i() * p.lambda_i();
        sc += p.lambda_c();
        sc2 += p.lambda_c() * p.lambda_c();
        sic += p.lambda_i() * p.lambda_c();
    }
    const double mi = si / n, mc = sc / n;
    const double vi = si2 / n - mi * mi, vc = sc2 / n - mc * mc, cic = sic / n - mi * mc;
    CHECK(std::fabs(mi - 4.43 / 1088.0) <= 3.0 * std::sqrt(vi / n));
    CHECK(4.43 / 1088.0 == doctest::Approx(4.072e-3).epsilon(1e-3));
    CHECK(std::fabs(mc - 5.0 * 4.43 / 1088.0) <= 3.0 * std::sqrt(vc / n));
    // delta-method standard error of the ratio of means
    const double ratio = mc / mi;
    const double ratio_se = ratio * std::sqrt((vc / (mc * mc) + vi / (mi * mi) - 2 * cic / (mi * mc)) / n);
    CHECK(std::fabs(ratio - 5.0) <= 3.0 * ratio_se);

    const auto meta = format_metadata(cfg, "users");
    CHECK(meta.find("lambda_i_distribution=gamma(shape=4.4299999999999997,scale=0.00091911764705882352)") !=
          std::string::npos);
    CHECK(meta.find("lambda_c_distribution=gamma(shape=110.75") != std::string::npos);
}

TEST_CASE("build_scenario applies the speed factor to the drawn rates")
{
    auto cfg = small_config();
    cfg.mobility_mode = MobilityMode::gamma_heterogeneous;
    const auto base = build_scenario(cfg, 11);
    cfg.speed_factor = 4.0;
    const auto fast = build_scenario(cfg, 11);
    for (std::size_t k = 0; k < base.net.n_pairs(); ++k)
        CHECK(fast.net.pairs()[k].lambda_c() == 4.0 * base.net.pairs()[k].lambda_c());
    for (std::size_t j = 0; j < cfg.n_users; ++j) {
        CHECK(base.placement.row_count(j) == cfg.cache_capacity);
        for (std::size_t f = 0; f < cfg.n_files; ++f)
            CHECK(base.placement.cached(j, f) == fast.placement.cached(j, f));
    }
}

TEST_CASE("sweep_users")
{
    auto cfg = small_config();
    cfg.mobility_mode = MobilityMode::gamma_heterogeneous;
    const std::vector<std::size_t> one{7};
    const auto single = sweep_users(cfg, one);
    REQUIRE(single.size() == 1);
    CHECK(single[0].sweep_name == "users");
    CHECK(single[0].sweep_value == 7.0);

    const std::vector<std::size_t> counts{8, 4, 6};
    const auto rows = sweep_users(cfg, counts);
    REQUIRE(rows.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(rows[k].sweep_value == static_cast<double>(counts[k]));
        CHECK(rows[k].mc_ci_low <= rows[k].mc_ratio);
        CHECK(rows[k].mc_ratio <= rows[k].mc_ci_high);
        CHECK(rows[k].analytic_ratio >= 0.0);
        CHECK(rows[k].analytic_ratio <= 1.0);
        CHECK(rows[k].trials == cfg.trials);
        CHECK(rows[k].seed == cfg.seed);
    }
    CHECK(format_csv(rows) == format_csv(sweep_users(cfg, counts)));
    CHECK_THROWS_AS(sweep_users(cfg, std::vector<std::size_t>{}), DomainError);
    CHECK_THROWS_AS(sweep_users(cfg, std::vector<std::size_t>{1}), DomainError);
}

TEST_CASE("analytic ratio grows with the number of users on average over seeds")
{
    ExperimentConfig cfg;
    cfg.mobility_mode = MobilityMode::gamma_heterogeneous;
    std::vector<double> avg;
    for (std::size_t n = 5; n <= 30; n += 5) {
        double sum = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            cfg.n_users = n;
            const auto sc = build_scenario(cfg, seed);
            sum += aggregate_offload_ratio(sc.net, sc.placement, sc.demand, sc.sys);
        }
        avg.push_back(sum / 10.0);
    }
    for (std::size_t k = 1; k < avg.size(); ++k)
        CHECK(avg[k] >= avg[k - 1]);
}

TEST_CASE("sweep_speed on the homogeneous setup")
{
    ExperimentConfig cfg;
    cfg.trials = 300;
    const std::vector factors{1.0, 2.0, 4.0, 8.0};
    const auto rows = sweep_speed(cfg, factors);
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].analytic_ratio > rows[k - 1].analytic_ratio);
        // the grid doubles, so compare the rate of increase per unit of s
        if (k >= 2)
            CHECK((rows[k].analytic_ratio - rows[k - 1].analytic_ratio) / (factors[k] - factors[k - 1]) <
                  (rows[k - 1].analytic_ratio - rows[k - 2].analytic_ratio) / (factors[k - 1] - factors[k - 2]));
    }
    CHECK_THROWS_AS(sweep_speed(cfg, std::vector{1.0, -2.0}), DomainError);

    const auto net = NetworkMobility::homogeneous(cfg.n_users, PairParams(cfg.lambda_c, cfg.lambda_i));
    const auto same = uniform_all_same_placement(cfg.n_users, cfg.n_files, cfg.cache_capacity);
    const auto demand = zipf_demand(cfg.n_files, cfg.zipf_gamma, cfg.n_users);
    const auto sys = system_params(cfg);
    const double flat = aggregate_offload_ratio(net, same, demand, sys);
    for (double s : factors)
        CHECK(aggregate_offload_ratio(net.scaled(s), same, demand, sys) == flat);
}

TEST_CASE("emit_csv")
{
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "d2dcache_rows.csv";

    emit_csv({}, path);
    CHECK(slurp(path) == std::string(kCsvHeader) + "\n");

    const std::vector rows{make_row("speed", 2.0, 0.412345678, McEstimate{0.4, 0.01, 1000, 7})};
    emit_csv(rows, path);
    const auto text = slurp(path);
    CHECK(text.find('\r') == std::string::npos);
    const auto lines = split(text, '\n');
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == kCsvHeader);
    const auto cells = split(lines[1], ',');
    REQUIRE(cells.size() == 8);
    CHECK(cells[0] == "speed");
    CHECK(std::stod(cells[1]) == 2.0);
    CHECK(cells[2] == "0.412346");
    CHECK(std::stod(cells[3]) == 0.4);
    CHECK(std::stod(cells[4]) == doctest::Approx(0.4 - 1.96 * 0.01).epsilon(1e-6));
    CHECK(std::stod(cells[5]) == doctest::Approx(0.4 + 1.96 * 0.01).epsilon(1e-6));
    CHECK(cells[6] == "1000");
    CHECK(cells[7] == "7");

    emit_csv(rows, path);
    CHECK(slurp(path) == text);
    std::filesystem::remove(path);

    CHECK_THROWS_WITH_AS(emit_csv(rows, dir / "no_such_dir" / "x.csv"),
                         doctest::Contains("no_such_dir"), std::runtime_error);
}
