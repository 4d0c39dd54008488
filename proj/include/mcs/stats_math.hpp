#pragma once

namespace mcs::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile, p in (0, 1). Bisection on the CDF.
double normal_quantile(double p);

/// Regularized incomplete beta function I_x(a, b), x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// CDF of the (unstandardized) Student-t distribution with nu > 0 dof.
double student_t_cdf(double x, double nu);

/// Quantile of the unstandardized Student-t; p in (0, 1), nu > 0.
/// Bracketing bisection on the CDF, |F(q) - p| resolved to ~1e-10.
double student_t_quantile(double p, double nu);

/// Quantile of the standardized (unit-variance) Student-t, nu > 2.
double std_student_t_quantile(double p, double nu);

/// Digamma function for x > 0.
double digamma(double x);

/// E|Z| for a standard normal innovation, sqrt(2/pi).
double abs_moment_normal();

/// E|Z| for the standardized (unit-variance) Student-t with nu > 2.
double abs_moment_student_t(double nu);

}  // namespace mcs::stats
