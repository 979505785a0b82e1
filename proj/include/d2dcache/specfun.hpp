#pragma once

#include <cstddef>
#include <functional>

namespace d2dcache::specfun {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0; // absolute
    std::size_t evaluations = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-9;
    double rel_tol = 0.0;
    std::size_t max_evaluations = 150000;
};

struct IncBetaOptions {
    double tol = 1e-15;
    int max_iterations = 100000;
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// Natural log of the complete beta function B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), the Beta(a, b) CDF at x.
/// Continued fraction evaluated on whichever side of (a+1)/(a+b+2) converges.
double reg_inc_beta(double x, double a, double b, const IncBetaOptions& opts = {});

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature over [lo, hi].
/// Stops once the summed panel error is below max(abs_tol, rel_tol*|value|);
/// throws ConvergenceError when max_evaluations is exhausted first.
QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureOptions& opts = {});

inline QuadratureResult integrate(const Integrand& f, double lo, double hi, double abs_tol)
{
    QuadratureOptions opts;
    opts.abs_tol = abs_tol;
    return integrate(f, lo, hi, opts);
}

} // namespace d2dcache::specfun
