#include "d2dcache/analytics.hpp"
#include "d2dcache/caching.hpp"
#include "d2dcache/config.hpp"
#include "d2dcache/error.hpp"
#include "d2dcache/harness.hpp"
#include "d2dcache/mobility.hpp"
#include "d2dcache/montecarlo.hpp"
#include "d2dcache/specfun.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace d2dcache;

namespace {

McEstimate simulate_config(const ExperimentConfig& cfg, unsigned threads)
{
    const Scenario sc = build_scenario(cfg, cfg.seed);
    return estimate_offload_ratio(sc.net, sc.placement, sc.demand, sc.sys, cfg.trials, cfg.seed, {threads});
}

double analytic_config(const ExperimentConfig& cfg)
{
    const Scenario sc = build_scenario(cfg, cfg.seed);
    return aggregate_offload_ratio(sc.net, sc.placement, sc.demand, sc.sys);
}

} // namespace

PYBIND11_MODULE(_d2dcache, m)
{
    m.doc() = "Data offloading ratio of mobile D2D caching networks";

    py::register_exception<ConfigParseError>(m, "ConfigParseError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    // special functions
    m.def("log_gamma", &specfun::log_gamma, py::arg("x"));
    m.def("reg_inc_beta",
          [](double x, double a, double b) { return specfun::reg_inc_beta(x, a, b); },
          py::arg("x"), py::arg("a"), py::arg("b"));
    m.def(
        "integrate",
        [](const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
            const auto r = specfun::integrate(f, lo, hi, abs_tol);
            return py::make_tuple(r.value, r.error_estimate, r.evaluations);
        },
        py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("abs_tol") = 1e-9,
        "Returns (value, error_estimate, evaluations).");

    // mobility
    py::class_<PairParams>(m, "PairParams")
        .def(py::init<double, double>(), py::arg("lambda_c"), py::arg("lambda_i"))
        .def_property_readonly("lambda_c", &PairParams::lambda_c)
        .def_property_readonly("lambda_i", &PairParams::lambda_i)
        .def("__repr__", [](const PairParams& p) {
            return "PairParams(lambda_c=" + std::to_string(p.lambda_c()) +
                   ", lambda_i=" + std::to_string(p.lambda_i()) + ")";
        });
    m.def("stationary_contact_prob", &stationary_contact_prob, py::arg("p"));
    m.def("conditional_idle_prob", &conditional_idle_prob, py::arg("p"), py::arg("dt"));
    m.def("scale_speed", &scale_speed, py::arg("p"), py::arg("s"));

    // analytics
    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<double, double, double>(), py::arg("file_size"), py::arg("rate"), py::arg("deadline"))
        .def_property_readonly("file_size", &SystemParams::file_size)
        .def_property_readonly("rate", &SystemParams::rate)
        .def_property_readonly("deadline", &SystemParams::deadline)
        .def_property_readonly("size_ratio", &SystemParams::size_ratio);
    py::class_<CommTimeMoments>(m, "CommTimeMoments")
        .def(py::init([](double mean, double variance, double deadline) {
                 return CommTimeMoments{mean, variance, deadline};
             }),
             py::arg("mean"), py::arg("variance"), py::arg("deadline"))
        .def_readwrite("mean", &CommTimeMoments::mean)
        .def_readwrite("variance", &CommTimeMoments::variance)
        .def_readwrite("deadline", &CommTimeMoments::deadline);
    py::class_<BetaParams>(m, "BetaParams")
        .def(py::init([](double a, double b) { return BetaParams{a, b}; }), py::arg("alpha"), py::arg("beta"))
        .def_readwrite("alpha", &BetaParams::alpha)
        .def_readwrite("beta", &BetaParams::beta);

    m.def("comm_time_mean",
          [](const std::vector<PairParams>& h, double T) { return comm_time_mean(h, T); },
          py::arg("holders"), py::arg("deadline"));
    m.def("comm_time_variance",
          [](const std::vector<PairParams>& h, double T) { return comm_time_variance(h, T); },
          py::arg("holders"), py::arg("deadline"));
    m.def("comm_time_moments",
          [](const std::vector<PairParams>& h, double T) { return comm_time_moments(h, T); },
          py::arg("holders"), py::arg("deadline"));
    m.def("comm_time_moments_hom", &comm_time_moments_hom, py::arg("lambda_c"), py::arg("lambda_i"),
          py::arg("n_f"), py::arg("deadline"));
    m.def("beta_match", &beta_match, py::arg("moments"));
    m.def("beta_offload_ratio", &beta_offload_ratio, py::arg("beta_params"), py::arg("r"));
    m.def("per_request_offload_ratio", &per_request_offload_ratio, py::arg("moments"), py::arg("sys"));

    // caching
    m.def("zipf_pmf", &zipf_pmf, py::arg("n_files"), py::arg("gamma_r"));

    // Monte Carlo
    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("trials", &McEstimate::trials)
        .def_readonly("seed", &McEstimate::seed);
    py::class_<CommTimeEstimate>(m, "CommTimeEstimate")
        .def_readonly("mean", &CommTimeEstimate::mean)
        .def_readonly("mean_se", &CommTimeEstimate::mean_se)
        .def_readonly("variance", &CommTimeEstimate::variance)
        .def_readonly("variance_se", &CommTimeEstimate::variance_se)
        .def_readonly("trials", &CommTimeEstimate::trials);
    m.def(
        "estimate_comm_time_moments",
        [](const std::vector<PairParams>& h, double T, std::size_t trials, std::uint64_t seed, unsigned threads) {
            return estimate_comm_time_moments(h, T, trials, seed, {threads});
        },
        py::arg("holders"), py::arg("deadline"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 0);

    // experiments
    py::enum_<MobilityMode>(m, "MobilityMode")
        .value("homogeneous", MobilityMode::homogeneous)
        .value("gamma_heterogeneous", MobilityMode::gamma_heterogeneous);
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n_users", &ExperimentConfig::n_users)
        .def_readwrite("n_files", &ExperimentConfig::n_files)
        .def_readwrite("cache_capacity", &ExperimentConfig::cache_capacity)
        .def_readwrite("zipf_gamma", &ExperimentConfig::zipf_gamma)
        .def_readwrite("deadline_s", &ExperimentConfig::deadline_s)
        .def_readwrite("file_size_bits", &ExperimentConfig::file_size_bits)
        .def_readwrite("rate_bps", &ExperimentConfig::rate_bps)
        .def_readwrite("mobility_mode", &ExperimentConfig::mobility_mode)
        .def_readwrite("lambda_c", &ExperimentConfig::lambda_c)
        .def_readwrite("lambda_i", &ExperimentConfig::lambda_i)
        .def_readwrite("gamma_shape_i", &ExperimentConfig::gamma_shape_i)
        .def_readwrite("gamma_scale_i", &ExperimentConfig::gamma_scale_i)
        .def_readwrite("contact_rate_multiplier", &ExperimentConfig::contact_rate_multiplier)
        .def_readwrite("speed_factor", &ExperimentConfig::speed_factor)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def("validate", [](const ExperimentConfig& c) { validate(c); })
        .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) { return a == b; });
    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));
    m.def("format_config", &format_config, py::arg("config"));
    m.def("analytic_ratio", &analytic_config, py::arg("config"));
    m.def("simulate", &simulate_config, py::arg("config"), py::arg("threads") = 0);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("sweep_name", &SweepRow::sweep_name)
        .def_readonly("sweep_value", &SweepRow::sweep_value)
        .def_readonly("analytic_ratio", &SweepRow::analytic_ratio)
        .def_readonly("mc_ratio", &SweepRow::mc_ratio)
        .def_readonly("mc_ci_low", &SweepRow::mc_ci_low)
        .def_readonly("mc_ci_high", &SweepRow::mc_ci_high)
        .def_readonly("trials", &SweepRow::trials)
        .def_readonly("seed", &SweepRow::seed);
    m.def(
        "sweep_users",
        [](const ExperimentConfig& c, const std::vector<std::size_t>& counts, unsigned threads) {
            return sweep_users(c, counts, {threads});
        },
        py::arg("config"), py::arg("user_counts"), py::arg("threads") = 0);
    m.def(
        "sweep_speed",
        [](const ExperimentConfig& c, const std::vector<double>& factors, unsigned threads) {
            return sweep_speed(c, factors, {threads});
        },
        py::arg("config"), py::arg("speed_factors"), py::arg("threads") = 0);
    m.def("format_csv", [](const std::vector<SweepRow>& rows) { return format_csv(rows); }, py::arg("rows"));
}
