#include "mcs/stats_math.hpp"

#include "doctest.h"

#include <cmath>
#include <initializer_list>

using namespace mcs::stats;

TEST_CASE("normal cdf at known points") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(normal_cdf(1.96) == doctest::Approx(0.975002104851780).epsilon(1e-10));
    CHECK(normal_cdf(-1.96) == doctest::Approx(0.024997895148220).epsilon(1e-10));
    CHECK(normal_cdf(1.0) + normal_cdf(-1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normal quantile inverts the cdf") {
    CHECK(std::fabs(normal_quantile(0.05) - (-1.6449)) < 1e-4);
    CHECK(std::fabs(normal_quantile(0.5)) < 1e-9);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-7));
    for (double p : {0.001, 0.01, 0.2, 0.6, 0.9, 0.999}) {
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-9));
    }
}

TEST_CASE("incomplete beta basic identities") {
    CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(incomplete_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(incomplete_beta(3.0, 5.0, 0.0) == 0.0);
    CHECK(incomplete_beta(3.0, 5.0, 1.0) == 1.0);
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
    const double lhs = incomplete_beta(2.5, 4.0, 0.3);
    const double rhs = 1.0 - incomplete_beta(4.0, 2.5, 0.7);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("student t cdf and quantile") {
    CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5).epsilon(1e-12));
    // nu=1 is Cauchy: F(1) = 0.75
    CHECK(student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(student_t_quantile(0.75, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
    // nu=2 has the closed form q = (2p-1)/sqrt(2p(1-p))
    CHECK(student_t_quantile(0.975, 2.0) == doctest::Approx(4.302652729911275).epsilon(1e-8));
    // classic table value for nu=5
    CHECK(student_t_quantile(0.975, 5.0) == doctest::Approx(2.570581836).epsilon(1e-7));
    // quantile inverts the cdf
    for (double p : {0.01, 0.1, 0.4, 0.7, 0.99}) {
        CHECK(student_t_cdf(student_t_quantile(p, 6.0), 6.0) ==
              doctest::Approx(p).epsilon(1e-8));
    }
    // large nu converges to the normal
    CHECK(student_t_quantile(0.05, 1e6) == doctest::Approx(normal_quantile(0.05)).epsilon(1e-5));
}

TEST_CASE("standardized student t quantile rescales by sqrt((nu-2)/nu)") {
    const double nu = 5.0;
    const double q = std_student_t_quantile(0.975, nu);
    CHECK(q == doctest::Approx(student_t_quantile(0.975, nu) * std::sqrt((nu - 2.0) / nu))
                   .epsilon(1e-10));
    // unit variance at large nu: matches the normal quantile
    CHECK(std_student_t_quantile(0.05, 1e6) ==
          doctest::Approx(normal_quantile(0.05)).epsilon(1e-4));
}

TEST_CASE("digamma known values and recurrence") {
    const double euler_gamma = 0.5772156649015329;
    CHECK(digamma(1.0) == doctest::Approx(-euler_gamma).epsilon(1e-10));
    CHECK(digamma(0.5) == doctest::Approx(-euler_gamma - 2.0 * std::log(2.0)).epsilon(1e-10));
    for (double x : {0.3, 1.7, 4.2, 11.0}) {
        CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-10));
    }
}

TEST_CASE("absolute moments of standardized innovations") {
    CHECK(abs_moment_normal() == doctest::Approx(std::sqrt(2.0 / 3.141592653589793)).epsilon(1e-14));
    // closed forms via the gamma duplication identity
    CHECK(abs_moment_student_t(4.0) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-10));
    CHECK(abs_moment_student_t(6.0) == doctest::Approx(0.75).epsilon(1e-10));
    // large-nu limit is the normal moment
    CHECK(abs_moment_student_t(1e6) == doctest::Approx(abs_moment_normal()).epsilon(1e-5));
}
