#include "mcs/stats_math.hpp"

#include "mcs/errors.hpp"

#include <cmath>
#include <string>

namespace mcs::stats {

namespace {

constexpr double kSqrt1_2 = 0.70710678118654752440;
constexpr double kPi = 3.14159265358979323846;

/// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 1e-15;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw numeric_error("incomplete_beta: continued fraction did not converge");
}

/// Generic bisection for a monotone-increasing CDF.
template <typename Cdf>
double quantile_by_bisection(double p, double lo, double hi, Cdf cdf) {
    // Widen the bracket if needed (extreme p).
    while (cdf(lo) > p) lo *= 2.0;
    while (cdf(hi) < p) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-10 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kSqrt1_2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw invalid_input("normal_quantile: p must be in (0,1)");
    return quantile_by_bisection(p, -45.0, 45.0, normal_cdf);
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw invalid_input("incomplete_beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    // Use the fraction on the side where it converges fast.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double x, double nu) {
    if (!(nu > 0.0)) throw invalid_input("student_t_cdf: nu must be positive");
    if (x == 0.0) return 0.5;
    const double z = nu / (nu + x * x);
    const double tail = 0.5 * incomplete_beta(0.5 * nu, 0.5, z);
    return x > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double nu) {
    if (!(p > 0.0 && p < 1.0)) throw invalid_input("student_t_quantile: p must be in (0,1)");
    return quantile_by_bisection(p, -64.0, 64.0,
                                 [nu](double x) { return student_t_cdf(x, nu); });
}

double std_student_t_quantile(double p, double nu) {
    if (!(nu > 2.0)) throw invalid_input("std_student_t_quantile: nu must exceed 2");
    return student_t_quantile(p, nu) * std::sqrt((nu - 2.0) / nu);
}

double digamma(double x) {
    if (!(x > 0.0)) throw invalid_input("digamma: x must be positive");
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic expansion.
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
    return result;
}

double abs_moment_normal() { return std::sqrt(2.0 / kPi); }

double abs_moment_student_t(double nu) {
    if (!(nu > 2.0)) throw invalid_input("abs_moment_student_t: nu must exceed 2");
    // E|T| = 2 sqrt(nu) G((nu+1)/2) / (sqrt(pi) (nu-1) G(nu/2)) for T ~ t_nu,
    // then scaled by sqrt((nu-2)/nu) to unit variance.
    const double log_ratio = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu);
    return 2.0 * std::sqrt(nu - 2.0) * std::exp(log_ratio) /
           (std::sqrt(kPi) * (nu - 1.0));
}

}  // namespace mcs::stats
