#include "mcs/garch.hpp"

#include "doctest.h"
#include "mcs/errors.hpp"
#include "mcs/stats_math.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

using namespace mcs;

namespace {

GarchParams base_params() {
    GarchParams p;
    p.mu = 0.0;
    p.omega = 0.1;
    p.alpha = 0.05;
    p.beta = 0.90;
    return p;
}

double sample_variance(const std::vector<double>& x) {
    double mean = 0.0;
    for (auto v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double acc = 0.0;
    for (auto v : x) acc += (v - mean) * (v - mean);
    return acc / static_cast<double>(x.size() - 1);
}

std::vector<double> test_returns(std::size_t n, std::uint64_t seed) {
    GarchSpec spec;
    return simulate(spec, base_params(), n, seed);
}

}  // namespace

TEST_CASE("filter collapses to omega when alpha = beta = 0") {
    GarchSpec spec;
    GarchParams p;
    p.mu = 0.0;
    p.omega = 0.3;
    p.alpha = 0.0;
    p.beta = 0.0;
    std::vector<double> y = {0.5, -0.2, 0.1, 0.4};
    auto sig2 = variance_filter(spec, p, y);
    REQUIRE(sig2.size() == 4);
    CHECK(sig2[0] == doctest::Approx(sample_variance(y)).epsilon(1e-14));
    for (std::size_t t = 1; t < 4; ++t) CHECK(sig2[t] == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("persistence per dynamics") {
    GarchSpec garch;
    GarchParams p;
    p.omega = 0.1;
    p.alpha = 0.05;
    p.beta = 0.90;
    CHECK(persistence(garch, p) == doctest::Approx(0.95).epsilon(1e-15));

    GarchSpec gjr;
    gjr.dynamics = Dynamics::Gjr11;
    p.gamma = 0.05;
    CHECK(persistence(gjr, p) == doctest::Approx(0.975).epsilon(1e-15));

    GarchSpec egarch;
    egarch.dynamics = Dynamics::Egarch11;
    GarchParams e;
    e.omega = -0.1;
    e.alpha = 0.1;
    e.beta = 0.97;
    e.gamma = 0.1;
    CHECK(persistence(egarch, e) == doctest::Approx(0.97).epsilon(1e-15));
}

TEST_CASE("parameter validation per dynamics") {
    GarchSpec spec;
    GarchParams p = base_params();
    CHECK_NOTHROW(validate_params(spec, p));
    p.omega = 0.0;
    CHECK_THROWS_AS(validate_params(spec, p), invalid_input);
    p = base_params();
    p.alpha = 0.2;
    p.beta = 0.85;  // persistence 1.05
    CHECK_THROWS_AS(validate_params(spec, p), invalid_input);

    GarchSpec gjr;
    gjr.dynamics = Dynamics::Gjr11;
    GarchParams q = base_params();
    q.alpha = 0.02;
    q.gamma = -0.05;  // alpha + gamma < 0
    CHECK_THROWS_AS(validate_params(gjr, q), invalid_input);

    GarchSpec egarch;
    egarch.dynamics = Dynamics::Egarch11;
    GarchParams e;
    e.omega = -0.2;
    e.alpha = -0.15;
    e.gamma = 0.12;
    e.beta = 1.0;  // |beta| must be < 1
    CHECK_THROWS_AS(validate_params(egarch, e), invalid_input);
    e.beta = 0.95;
    CHECK_NOTHROW(validate_params(egarch, e));

    GarchSpec tspec;
    tspec.innovation = Innovation::StudentT;
    GarchParams t = base_params();
    t.nu = 2.0;
    CHECK_THROWS_AS(validate_params(tspec, t), invalid_input);
}

TEST_CASE("single observation at the mean gives the closed-form likelihood") {
    GarchSpec spec;
    GarchParams p;
    p.mu = 0.7;
    p.omega = 0.25;
    p.alpha = 0.0;
    p.beta = 0.0;
    std::vector<double> y = {0.7};
    const double expected = -0.5 * (std::log(2.0 * 3.141592653589793) + std::log(p.omega));
    CHECK(log_likelihood(spec, p, y) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("student t likelihood approaches the gaussian one for huge nu") {
    auto y = test_returns(300, 17);
    GarchSpec gauss;
    GarchSpec student;
    student.innovation = Innovation::StudentT;
    GarchParams p = base_params();
    p.nu = 1e6;
    CHECK(std::fabs(log_likelihood(student, p, y) - log_likelihood(gauss, p, y)) < 1e-3);
}

TEST_CASE("gaussian likelihood is scale equivariant") {
    auto y = test_returns(400, 23);
    GarchSpec spec;
    GarchParams p = base_params();
    p.mu = 0.01;
    const double base = log_likelihood(spec, p, y);

    const double s = 2.0;  // power of two keeps the filter arithmetic exact
    std::vector<double> scaled = y;
    for (auto& v : scaled) v *= s;
    GarchParams q = p;
    q.mu = s * p.mu;
    q.omega = s * s * p.omega;
    const double expected = base - static_cast<double>(y.size()) * std::log(s);
    CHECK(log_likelihood(spec, q, scaled) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("analytic gradient matches central finite differences") {
    auto y = test_returns(300, 31);
    const double step = 1e-5;
    const double tol = 1e-4;

    auto check_spec = [&](const GarchSpec& spec, const GarchParams& p) {
        const auto grad = log_likelihood_gradient(spec, p, y);
        REQUIRE(grad.size() == param_count(spec));
        auto nudge = [&](const GarchParams& at, std::size_t idx, double h) {
            GarchParams out = at;
            const bool asym = spec.dynamics != Dynamics::Garch11;
            if (idx == 0) out.mu += h;
            else if (idx == 1) out.omega += h;
            else if (idx == 2) out.alpha += h;
            else if (idx == 3) out.beta += h;
            else if (idx == 4 && asym) out.gamma += h;
            else out.nu += h;
            return out;
        };
        for (std::size_t k = 0; k < grad.size(); ++k) {
            const double up = log_likelihood(spec, nudge(p, k, step), y);
            const double down = log_likelihood(spec, nudge(p, k, -step), y);
            const double fd = (up - down) / (2.0 * step);
            CAPTURE(k);
            CHECK(std::fabs(grad[k] - fd) <= tol * std::max(1.0, std::fabs(fd)));
        }
    };

    for (auto dynamics : {Dynamics::Garch11, Dynamics::Gjr11, Dynamics::Egarch11}) {
        for (auto innovation : {Innovation::Gaussian, Innovation::StudentT}) {
            GarchSpec spec;
            spec.dynamics = dynamics;
            spec.innovation = innovation;
            GarchParams p;
            p.mu = 0.02;
            p.nu = 7.0;
            if (dynamics == Dynamics::Egarch11) {
                p.omega = -0.05;
                p.alpha = -0.08;
                p.gamma = 0.12;
                p.beta = 0.93;
            } else {
                p.omega = 0.08;
                p.alpha = 0.07;
                p.beta = 0.85;
                p.gamma = dynamics == Dynamics::Gjr11 ? 0.04 : 0.0;
            }
            check_spec(spec, p);
        }
    }
}

TEST_CASE("fit rejects short or degenerate series") {
    GarchSpec spec;
    CHECK_THROWS_AS(fit(spec, std::vector<double>(50, 0.1)), invalid_input);
    CHECK_THROWS_AS(fit(spec, std::vector<double>(200, 0.1)), numeric_error);
}

TEST_CASE("fit improves on the supplied starting point") {
    auto y = test_returns(500, 41);
    GarchSpec spec;
    GarchParams init;
    init.mu = 0.3;
    init.omega = 1.0;
    init.alpha = 0.02;
    init.beta = 0.5;
    GarchFit f = fit(spec, y, init);
    CHECK(f.loglik >= log_likelihood(spec, init, y));
    CHECK(f.loglik == doctest::Approx(log_likelihood(spec, f.params, y)).epsilon(1e-10));
    CHECK(f.sigma2_path.size() == y.size());
    for (auto s2 : f.sigma2_path) CHECK(s2 > 0.0);
}

TEST_CASE("fit recovers the generating parameters on a long sample") {
    GarchSpec spec;
    auto y = simulate(spec, base_params(), 5000, 2024);
    GarchFit f = fit(spec, y);
    CHECK(f.converged);
    CHECK(std::fabs(f.params.omega - 0.1) < 0.08);
    CHECK(std::fabs(f.params.alpha - 0.05) < 0.04);
    CHECK(std::fabs(f.params.beta - 0.90) < 0.08);
    CHECK(std::fabs(f.params.mu) < 0.05);
}

TEST_CASE("one step ahead forecast follows the recursion") {
    GarchFit f;
    f.spec = GarchSpec{};
    f.params.mu = 0.0;
    f.params.omega = 0.1;
    f.params.alpha = 0.1;
    f.params.beta = 0.8;
    f.converged = true;
    f.sigma2_path = {1.0};
    f.last_eps = 1.0;
    f.last_sigma2 = 1.0;
    CHECK(forecast_sigma(f) == doctest::Approx(1.0).epsilon(1e-15));

    f.params.alpha = 0.0;
    f.params.beta = 0.0;
    f.params.omega = 0.36;
    CHECK(forecast_sigma(f) == doctest::Approx(0.6).epsilon(1e-15));

    f.converged = false;
    CHECK_THROWS_AS(forecast_sigma(f), numeric_error);
}

TEST_CASE("innovation quantiles") {
    CHECK(std::fabs(innovation_quantile(Innovation::Gaussian, 0.05, 0.0) - (-1.6449)) < 1e-4);
    CHECK(innovation_quantile(Innovation::StudentT, 0.05, 5.0) ==
          doctest::Approx(stats::std_student_t_quantile(0.05, 5.0)).epsilon(1e-12));
    CHECK(innovation_quantile(Innovation::Gaussian, 0.01, 0.0) <
          innovation_quantile(Innovation::Gaussian, 0.05, 0.0));
    CHECK_THROWS_AS(innovation_quantile(Innovation::Gaussian, 0.0, 0.0), invalid_input);
}

TEST_CASE("rolling forecast schedule and output shape") {
    auto y = test_returns(600, 57);
    GarchSpec spec;

    RollVarResult once = roll_var_forecast(spec, y, 100, 100, 0.05);
    CHECK(once.n_refits == 1);
    CHECK(once.var.size() == 100);
    CHECK(once.sigma.size() == 100);

    RollVarResult twice = roll_var_forecast(spec, y, 100, 50, 0.05);
    CHECK(twice.n_refits == 2);

    for (auto v : once.var) CHECK(std::isfinite(v));
    for (auto s : once.sigma) CHECK(s > 0.0);

    // within one refit segment mu is fixed, so var - Q * sigma is constant
    const double q = innovation_quantile(Innovation::Gaussian, 0.05, 0.0);
    const double mu0 = once.var[0] - q * once.sigma[0];
    for (std::size_t t = 1; t < 100; ++t)
        CHECK(once.var[t] - q * once.sigma[t] == doctest::Approx(mu0).epsilon(1e-9));
}

TEST_CASE("rolling VaR is pointwise monotone in tau") {
    auto y = test_returns(400, 61);
    GarchSpec spec;
    RollVarResult lo = roll_var_forecast(spec, y, 60, 60, 0.01);
    RollVarResult hi = roll_var_forecast(spec, y, 60, 60, 0.05);
    REQUIRE(lo.var.size() == hi.var.size());
    for (std::size_t t = 0; t < lo.var.size(); ++t) CHECK(lo.var[t] <= hi.var[t]);
}

TEST_CASE("rolling forecast preconditions") {
    auto y = test_returns(300, 3);
    GarchSpec spec;
    CHECK_THROWS_AS(roll_var_forecast(spec, y, 300, 10, 0.05), invalid_input);
    CHECK_THROWS_AS(roll_var_forecast(spec, y, 0, 10, 0.05), invalid_input);
    CHECK_THROWS_AS(roll_var_forecast(spec, y, 50, 0, 0.05), invalid_input);
    CHECK_THROWS_AS(roll_var_forecast(spec, y, 50, 10, 1.5), invalid_input);
    // first window shorter than the fit guard: the initial refit must surface
    auto small = test_returns(120, 5);
    CHECK_THROWS_AS(roll_var_forecast(spec, small, 50, 10, 0.05), invalid_input);
}

TEST_CASE("simulation is deterministic in the seed") {
    GarchSpec spec;
    auto a = simulate(spec, base_params(), 256, 11);
    auto b = simulate(spec, base_params(), 256, 11);
    auto c = simulate(spec, base_params(), 256, 12);
    CHECK(a == b);
    CHECK(a != c);
    double var = sample_variance(a);
    // unconditional variance omega / (1 - alpha - beta) = 2.0
    CHECK(var > 0.5);
    CHECK(var < 8.0);

    GarchSpec t;
    t.innovation = Innovation::StudentT;
    GarchParams p = base_params();
    p.nu = 5.0;
    auto d = simulate(t, p, 256, 11);
    CHECK(std::isfinite(d[0]));
    CHECK(d != a);
}

TEST_CASE("string round trips") {
    CHECK(dynamics_from_string("garch") == Dynamics::Garch11);
    CHECK(dynamics_from_string("gjr") == Dynamics::Gjr11);
    CHECK(dynamics_from_string("egarch") == Dynamics::Egarch11);
    CHECK(innovation_from_string("norm") == Innovation::Gaussian);
    CHECK(innovation_from_string("std") == Innovation::StudentT);
    CHECK_THROWS_AS(dynamics_from_string("aparch"), invalid_input);
    CHECK_THROWS_AS(innovation_from_string("ged"), invalid_input);
    CHECK(std::string(to_string(Dynamics::Gjr11)) == "gjr");
    CHECK(std::string(to_string(Innovation::StudentT)) == "std");
    CHECK(param_count(GarchSpec{}) == 4);
    GarchSpec full;
    full.dynamics = Dynamics::Egarch11;
    full.innovation = Innovation::StudentT;
    CHECK(param_count(full) == 6);
}
