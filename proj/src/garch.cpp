#include "mcs/garch.hpp"

#include "mcs/errors.hpp"
#include "mcs/rng.hpp"
#include "mcs/stats_math.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace mcs {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;
constexpr double kPenalty = 1e300;

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

double clamp_unit(double p) { return std::clamp(p, 1e-6, 1.0 - 1e-6); }

double sample_mean(std::span<const double> y) {
    double sum = 0.0;
    for (double v : y) sum += v;
    return sum / static_cast<double>(y.size());
}

double sample_variance(std::span<const double> y) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (*lo == *hi) return 0.0;  // constant window, exactly
    const double mean = sample_mean(y);
    double sum = 0.0;
    for (double v : y) sum += (v - mean) * (v - mean);
    return sum / static_cast<double>(y.size() - 1);
}

double unconditional_variance(const GarchSpec& spec, const GarchParams& p) {
    if (spec.dynamics == Dynamics::Egarch11) return std::exp(p.omega / (1.0 - p.beta));
    return p.omega / (1.0 - persistence(spec, p));
}

/// Starting variance of the recursion: sample variance of the window, or the
/// stationary variance when the window has a single observation.
double initial_sigma2(const GarchSpec& spec, const GarchParams& p,
                      std::span<const double> y) {
    if (y.size() < 2) return unconditional_variance(spec, p);
    const double var = sample_variance(y);
    if (!(var > 0.0) || !std::isfinite(var))
        throw numeric_error("variance filter: window has zero sample variance");
    return var;
}

double abs_moment(Innovation innovation, double nu) {
    return innovation == Innovation::Gaussian ? stats::abs_moment_normal()
                                              : stats::abs_moment_student_t(nu);
}

double one_step_sigma2(const GarchSpec& spec, const GarchParams& p, double eps,
                       double sigma2) {
    switch (spec.dynamics) {
        case Dynamics::Garch11:
            return p.omega + p.alpha * eps * eps + p.beta * sigma2;
        case Dynamics::Gjr11: {
            const double arch = p.alpha + (eps < 0.0 ? p.gamma : 0.0);
            return p.omega + arch * eps * eps + p.beta * sigma2;
        }
        case Dynamics::Egarch11: {
            const double z = eps / std::sqrt(sigma2);
            const double h = p.omega + p.alpha * z +
                             p.gamma * (std::fabs(z) - abs_moment(spec.innovation, p.nu)) +
                             p.beta * std::log(sigma2);
            return std::exp(h);
        }
    }
    throw invalid_input("unknown dynamics");
}

/// Pointwise log-density terms and their partials for one observation.
struct DensityTerms {
    double ll;
    double d_sigma2;  // d ll / d sigma2
    double d_eps;     // d ll / d eps
    double d_nu;      // direct d ll / d nu (Student-t only)
};

DensityTerms gaussian_terms(double eps, double s2) {
    DensityTerms t;
    const double q = eps * eps / s2;
    t.ll = -0.5 * (kLogTwoPi + std::log(s2) + q);
    t.d_sigma2 = 0.5 * (q - 1.0) / s2;
    t.d_eps = -eps / s2;
    t.d_nu = 0.0;
    return t;
}

DensityTerms student_t_terms(double eps, double s2, double nu, double log_norm) {
    DensityTerms t;
    const double q = eps * eps / ((nu - 2.0) * s2);
    const double w = 1.0 + q;
    t.ll = log_norm - 0.5 * std::log(s2) - 0.5 * (nu + 1.0) * std::log1p(q);
    t.d_sigma2 = -0.5 / s2 + 0.5 * (nu + 1.0) * q / (s2 * w);
    t.d_eps = -(nu + 1.0) * eps / ((nu - 2.0) * s2 * w);
    t.d_nu = 0.5 * stats::digamma(0.5 * (nu + 1.0)) - 0.5 * stats::digamma(0.5 * nu) -
             0.5 / (nu - 2.0) - 0.5 * std::log1p(q) +
             0.5 * (nu + 1.0) * q / ((nu - 2.0) * w);
    return t;
}

double student_t_log_norm(double nu) {
    return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
           0.5 * std::log(M_PI * (nu - 2.0));
}

}  // namespace

const char* to_string(Dynamics d) {
    switch (d) {
        case Dynamics::Garch11: return "garch";
        case Dynamics::Gjr11: return "gjr";
        case Dynamics::Egarch11: return "egarch";
    }
    return "?";
}

const char* to_string(Innovation i) {
    return i == Innovation::Gaussian ? "norm" : "std";
}

Dynamics dynamics_from_string(const std::string& name) {
    if (name == "garch") return Dynamics::Garch11;
    if (name == "gjr") return Dynamics::Gjr11;
    if (name == "egarch") return Dynamics::Egarch11;
    throw invalid_input("unknown dynamics '" + name + "' (expected garch, gjr or egarch)");
}

Innovation innovation_from_string(const std::string& name) {
    if (name == "norm") return Innovation::Gaussian;
    if (name == "std") return Innovation::StudentT;
    throw invalid_input("unknown innovation '" + name + "' (expected norm or std)");
}

std::size_t param_count(const GarchSpec& spec) {
    std::size_t k = 4;
    if (spec.dynamics != Dynamics::Garch11) ++k;
    if (spec.innovation == Innovation::StudentT) ++k;
    return k;
}

void validate_params(const GarchSpec& spec, const GarchParams& p) {
    auto fail = [](const char* what) { throw invalid_input(std::string("GarchParams: ") + what); };
    if (!std::isfinite(p.mu)) fail("mu must be finite");
    if (!std::isfinite(p.omega)) fail("omega must be finite");
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.gamma))
        fail("coefficients must be finite");
    switch (spec.dynamics) {
        case Dynamics::Garch11:
            if (!(p.omega > 0.0)) fail("omega must be positive");
            if (p.alpha < 0.0 || p.beta < 0.0) fail("alpha and beta must be nonnegative");
            if (!(p.alpha + p.beta < 1.0)) fail("persistence must be below one");
            break;
        case Dynamics::Gjr11:
            if (!(p.omega > 0.0)) fail("omega must be positive");
            if (p.alpha < 0.0 || p.beta < 0.0) fail("alpha and beta must be nonnegative");
            if (p.alpha + p.gamma < 0.0) fail("alpha + gamma must be nonnegative");
            if (!(persistence(spec, p) < 1.0)) fail("persistence must be below one");
            break;
        case Dynamics::Egarch11:
            if (!(std::fabs(p.beta) < 1.0)) fail("|beta| must be below one");
            break;
    }
    if (spec.innovation == Innovation::StudentT) {
        if (!(p.nu > 2.0) || !std::isfinite(p.nu)) fail("nu must exceed 2");
    }
}

double persistence(const GarchSpec& spec, const GarchParams& p) {
    switch (spec.dynamics) {
        case Dynamics::Garch11: return p.alpha + p.beta;
        case Dynamics::Gjr11: return p.alpha + p.beta + 0.5 * p.gamma;
        case Dynamics::Egarch11: return p.beta;
    }
    throw invalid_input("unknown dynamics");
}

std::vector<double> variance_filter(const GarchSpec& spec, const GarchParams& p,
                                    std::span<const double> returns) {
    validate_params(spec, p);
    const std::size_t n = returns.size();
    if (n < 1) throw invalid_input("variance_filter: empty return series");

    std::vector<double> sigma2(n);
    sigma2[0] = initial_sigma2(spec, p, returns);
    for (std::size_t t = 1; t < n; ++t) {
        const double eps = returns[t - 1] - p.mu;
        sigma2[t] = one_step_sigma2(spec, p, eps, sigma2[t - 1]);
        if (!std::isfinite(sigma2[t]) || !(sigma2[t] > 0.0))
            throw numeric_error("variance_filter: conditional variance left (0, inf)");
    }
    if (!std::isfinite(sigma2[0]) || !(sigma2[0] > 0.0))
        throw numeric_error("variance_filter: conditional variance left (0, inf)");
    return sigma2;
}

double log_likelihood(const GarchSpec& spec, const GarchParams& p,
                      std::span<const double> returns) {
    const std::vector<double> sigma2 = variance_filter(spec, p, returns);
    const bool is_t = spec.innovation == Innovation::StudentT;
    const double log_norm = is_t ? student_t_log_norm(p.nu) : 0.0;
    double ll = 0.0;
    for (std::size_t t = 0; t < returns.size(); ++t) {
        const double eps = returns[t] - p.mu;
        ll += is_t ? student_t_terms(eps, sigma2[t], p.nu, log_norm).ll
                   : gaussian_terms(eps, sigma2[t]).ll;
    }
    if (!std::isfinite(ll)) throw numeric_error("log_likelihood: non-finite value");
    return ll;
}

std::vector<double> log_likelihood_gradient(const GarchSpec& spec, const GarchParams& p,
                                            std::span<const double> returns) {
    validate_params(spec, p);
    const std::size_t n = returns.size();
    if (n < 2) throw invalid_input("log_likelihood_gradient: need at least two observations");

    const std::vector<double> sigma2 = variance_filter(spec, p, returns);
    const std::size_t npar = param_count(spec);
    const bool asym = spec.dynamics != Dynamics::Garch11;
    const bool is_t = spec.innovation == Innovation::StudentT;
    const std::size_t i_mu = 0, i_omega = 1, i_alpha = 2, i_beta = 3;
    const std::size_t i_gamma = asym ? 4 : npar;  // npar = unused slot
    const std::size_t i_nu = is_t ? npar - 1 : npar;

    const bool egarch = spec.dynamics == Dynamics::Egarch11;
    const double log_norm = is_t ? student_t_log_norm(p.nu) : 0.0;
    const double e_abs = egarch ? abs_moment(spec.innovation, p.nu) : 0.0;
    // d E|z| / d nu for the standardized Student-t, via the log-derivative.
    double de_abs_dnu = 0.0;
    if (egarch && is_t) {
        de_abs_dnu = e_abs * (0.5 / (p.nu - 2.0) + 0.5 * stats::digamma(0.5 * (p.nu + 1.0)) -
                              0.5 * stats::digamma(0.5 * p.nu) - 1.0 / (p.nu - 1.0));
    }

    // dsig holds d sigma2_t / d theta, or d log(sigma2_t) / d theta for
    // EGARCH. The first value is the (parameter-free) sample variance.
    std::vector<double> dsig(npar, 0.0);
    std::vector<double> dnext(npar, 0.0);
    std::vector<double> grad(npar, 0.0);

    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) {
            const double s2p = sigma2[t - 1];
            const double epsp = returns[t - 1] - p.mu;
            if (!egarch) {
                const double arch =
                    p.alpha + (spec.dynamics == Dynamics::Gjr11 && epsp < 0.0 ? p.gamma : 0.0);
                for (std::size_t k = 0; k < npar; ++k) dnext[k] = p.beta * dsig[k];
                dnext[i_omega] += 1.0;
                dnext[i_alpha] += epsp * epsp;
                dnext[i_beta] += s2p;
                dnext[i_mu] += -2.0 * arch * epsp;
                if (spec.dynamics == Dynamics::Gjr11 && epsp < 0.0)
                    dnext[i_gamma] += epsp * epsp;
            } else {
                const double sp = std::sqrt(s2p);
                const double z = epsp / sp;
                const double c = p.alpha + (z < 0.0 ? -p.gamma : p.gamma);
                // d h_t = direct + c * dz + beta * d h_{t-1}, dz = -z/2 * d h_{t-1}
                for (std::size_t k = 0; k < npar; ++k)
                    dnext[k] = (p.beta - 0.5 * c * z) * dsig[k];
                dnext[i_omega] += 1.0;
                dnext[i_alpha] += z;
                dnext[i_gamma] += std::fabs(z) - e_abs;
                dnext[i_beta] += std::log(s2p);
                dnext[i_mu] += c * (-1.0 / sp);
                if (is_t) dnext[i_nu] += -p.gamma * de_abs_dnu;
            }
            std::swap(dsig, dnext);
        }

        const double s2 = sigma2[t];
        const double eps = returns[t] - p.mu;
        const DensityTerms d =
            is_t ? student_t_terms(eps, s2, p.nu, log_norm) : gaussian_terms(eps, s2);
        const double scale = egarch ? s2 : 1.0;  // dsig is d log sigma2 for EGARCH
        for (std::size_t k = 0; k < npar; ++k) grad[k] += d.d_sigma2 * scale * dsig[k];
        grad[i_mu] -= d.d_eps;
        if (is_t) grad[i_nu] += d.d_nu;
    }
    return grad;
}

namespace {

/// Unconstrained <-> constrained parameter maps used by the optimizer. The
/// layout mirrors the gradient order: mu, omega-slot, alpha-slot, beta-slot
/// [, gamma-slot][, log(nu - 2)].
std::vector<double> to_unconstrained(const GarchSpec& spec, const GarchParams& p) {
    std::vector<double> u;
    u.reserve(param_count(spec));
    u.push_back(p.mu);
    switch (spec.dynamics) {
        case Dynamics::Garch11: {
            const double total = p.alpha + p.beta;
            const double share = total > 0.0 ? p.alpha / total : 0.5;
            u.push_back(std::log(p.omega));
            u.push_back(logit(clamp_unit(total)));
            u.push_back(logit(clamp_unit(share)));
            break;
        }
        case Dynamics::Gjr11: {
            const double neg = p.alpha + p.gamma;  // ARCH load on negative shocks
            const double half = 0.5 * (p.alpha + neg);
            const double total = half + p.beta;
            u.push_back(std::log(p.omega));
            u.push_back(logit(clamp_unit(total)));
            u.push_back(logit(clamp_unit(total > 0.0 ? half / total : 0.5)));
            u.push_back(logit(clamp_unit(p.alpha + neg > 0.0 ? p.alpha / (p.alpha + neg) : 0.5)));
            break;
        }
        case Dynamics::Egarch11:
            u.push_back(p.omega);
            u.push_back(p.alpha);
            u.push_back(std::atanh(std::clamp(p.beta, -1.0 + 1e-10, 1.0 - 1e-10)));
            u.push_back(p.gamma);
            break;
    }
    if (spec.innovation == Innovation::StudentT) u.push_back(std::log(p.nu - 2.0));
    return u;
}

GarchParams to_constrained(const GarchSpec& spec, const std::vector<double>& u) {
    GarchParams p;
    p.mu = u[0];
    switch (spec.dynamics) {
        case Dynamics::Garch11: {
            const double total = sigmoid(u[2]);
            const double share = sigmoid(u[3]);
            p.omega = std::exp(u[1]);
            p.alpha = total * share;
            p.beta = total * (1.0 - share);
            p.gamma = 0.0;
            break;
        }
        case Dynamics::Gjr11: {
            const double total = sigmoid(u[2]);   // persistence alpha+beta+gamma/2
            const double s_arch = sigmoid(u[3]);  // ARCH half-share of persistence
            const double s_pos = sigmoid(u[4]);   // positive-shock share of ARCH load
            const double half = total * s_arch;
            p.omega = std::exp(u[1]);
            p.beta = total * (1.0 - s_arch);
            p.alpha = 2.0 * half * s_pos;
            p.gamma = 2.0 * half * (1.0 - s_pos) - p.alpha;
            break;
        }
        case Dynamics::Egarch11:
            p.omega = u[1];
            p.alpha = u[2];
            p.beta = std::tanh(u[3]);
            p.gamma = u[4];
            break;
    }
    if (spec.innovation == Innovation::StudentT) p.nu = 2.0 + std::exp(u.back());
    return p;
}

std::vector<GarchParams> fixed_starts(const GarchSpec& spec, double mean, double var) {
    struct Row {
        double alpha, beta, gamma, nu;
    };
    std::vector<Row> rows;
    if (spec.dynamics == Dynamics::Egarch11) {
        rows = {{-0.05, 0.95, 0.10, 8.0}, {-0.10, 0.90, 0.15, 6.0}, {0.0, 0.98, 0.05, 12.0}};
    } else if (spec.dynamics == Dynamics::Gjr11) {
        rows = {{0.05, 0.90, 0.05, 8.0}, {0.10, 0.80, 0.10, 6.0}, {0.02, 0.95, 0.02, 12.0}};
    } else {
        rows = {{0.05, 0.90, 0.0, 8.0}, {0.10, 0.80, 0.0, 6.0}, {0.02, 0.95, 0.0, 12.0}};
    }
    std::vector<GarchParams> starts;
    starts.reserve(rows.size());
    for (const Row& r : rows) {
        GarchParams p;
        p.mu = mean;
        p.alpha = r.alpha;
        p.beta = r.beta;
        p.gamma = r.gamma;
        p.nu = r.nu;
        // Variance targeting pins omega to the sample variance.
        p.omega = spec.dynamics == Dynamics::Egarch11
                      ? (1.0 - p.beta) * std::log(var)
                      : var * (1.0 - persistence(spec, p));
        starts.push_back(p);
    }
    return starts;
}

struct SimplexResult {
    std::vector<double> x;
    double fval = kPenalty;
    bool converged = false;
};

/// Nelder-Mead minimizer with the classic coefficients. Stops when the
/// objective spread over the simplex falls below tol.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, double step, double tol,
                          std::size_t max_evals) {
    const std::size_t d = x0.size();
    std::vector<std::vector<double>> xs(d + 1, x0);
    std::vector<double> fs(d + 1);
    for (std::size_t i = 0; i < d; ++i) xs[i + 1][i] += step;
    for (std::size_t i = 0; i <= d; ++i) fs[i] = f(xs[i]);
    std::size_t evals = d + 1;

    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), cand(d);
    auto point = [&](double coef, const std::vector<double>& away) {
        for (std::size_t k = 0; k < d; ++k)
            cand[k] = centroid[k] + coef * (centroid[k] - away[k]);
        return f(cand);
    };

    bool converged = false;
    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        const std::size_t best = order[0], worst = order[d], second = order[d - 1];
        if (fs[worst] - fs[best] <= tol) {
            converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < d; ++k) centroid[k] += xs[i][k];
        }
        for (std::size_t k = 0; k < d; ++k) centroid[k] /= static_cast<double>(d);

        const double fr = point(1.0, xs[worst]);  // reflection
        ++evals;
        if (fr < fs[order[0]]) {
            std::vector<double> xr = cand;
            const double fe = point(2.0, xs[worst]);  // expansion
            ++evals;
            if (fe < fr) {
                xs[worst] = cand;
                fs[worst] = fe;
            } else {
                xs[worst] = std::move(xr);
                fs[worst] = fr;
            }
            continue;
        }
        if (fr < fs[second]) {
            xs[worst] = cand;
            fs[worst] = fr;
            continue;
        }
        const bool outside = fr < fs[worst];
        if (outside) {
            const double fc = point(0.5, xs[worst]);
            ++evals;
            if (fc <= fr) {
                xs[worst] = cand;
                fs[worst] = fc;
                continue;
            }
        } else {
            for (std::size_t k = 0; k < d; ++k)
                cand[k] = centroid[k] - 0.5 * (centroid[k] - xs[worst][k]);
            const double fc = f(cand);
            ++evals;
            if (fc < fs[worst]) {
                xs[worst] = cand;
                fs[worst] = fc;
                continue;
            }
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < d; ++k)
                xs[i][k] = xs[best][k] + 0.5 * (xs[i][k] - xs[best][k]);
            fs[i] = f(xs[i]);
            ++evals;
        }
    }

    SimplexResult out;
    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i)
        if (fs[i] < fs[best]) best = i;
    out.x = xs[best];
    out.fval = fs[best];
    out.converged = converged;
    return out;
}

}  // namespace

GarchFit fit(const GarchSpec& spec, std::span<const double> returns,
             const std::optional<GarchParams>& init) {
    const std::size_t n = returns.size();
    if (n < 100) throw invalid_input("fit: need at least 100 observations");
    const double mean = sample_mean(returns);
    const double var = sample_variance(returns);
    if (!(var > 0.0)) throw numeric_error("fit: return series has zero variance");

    const auto objective = [&](const std::vector<double>& u) -> double {
        try {
            const GarchParams p = to_constrained(spec, u);
            const double ll = log_likelihood(spec, p, returns);
            return std::isfinite(ll) ? -ll : kPenalty;
        } catch (const std::exception&) {
            return kPenalty;
        }
    };

    std::vector<GarchParams> starts = fixed_starts(spec, mean, var);
    if (init) {
        validate_params(spec, *init);
        starts.push_back(*init);
    }

    const double tol = 1e-8;
    const std::size_t budget = 600 * param_count(spec);
    SimplexResult best;
    for (const GarchParams& start : starts) {
        SimplexResult r = nelder_mead(objective, to_unconstrained(spec, start), 0.25, tol, budget);
        if (r.fval < best.fval) best = std::move(r);
    }
    if (best.x.empty() || best.fval >= kPenalty)
        throw numeric_error("fit: likelihood not finite at any starting point");
    // Restart from the best point with a tighter simplex.
    SimplexResult polished = nelder_mead(objective, best.x, 0.05, tol, budget);
    if (polished.fval <= best.fval) best = std::move(polished);

    GarchFit out;
    out.spec = spec;
    out.params = to_constrained(spec, best.x);
    out.converged = best.converged;
    out.loglik = -best.fval;
    out.sigma2_path = variance_filter(spec, out.params, returns);
    out.last_eps = returns[n - 1] - out.params.mu;
    out.last_sigma2 = out.sigma2_path.back();
    return out;
}

double forecast_sigma(const GarchFit& fit) {
    if (!fit.converged) throw numeric_error("forecast_sigma: fit did not converge");
    if (fit.sigma2_path.empty()) throw invalid_input("forecast_sigma: empty fit state");
    return std::sqrt(one_step_sigma2(fit.spec, fit.params, fit.last_eps, fit.last_sigma2));
}

double innovation_quantile(Innovation innovation, double tau, double nu) {
    if (!(tau > 0.0 && tau < 1.0)) throw invalid_input("innovation_quantile: tau outside (0, 1)");
    return innovation == Innovation::Gaussian ? stats::normal_quantile(tau)
                                              : stats::std_student_t_quantile(tau, nu);
}

RollVarResult roll_var_forecast(const GarchSpec& spec, std::span<const double> returns,
                                std::size_t forecast_length, std::size_t refit_every,
                                double tau) {
    const std::size_t n = returns.size();
    if (forecast_length < 1 || forecast_length >= n)
        throw invalid_input("roll_var_forecast: forecast_length must lie in [1, n)");
    if (refit_every < 1) throw invalid_input("roll_var_forecast: refit_every must be positive");
    if (!(tau > 0.0 && tau < 1.0)) throw invalid_input("roll_var_forecast: tau outside (0, 1)");

    RollVarResult out;
    out.var.reserve(forecast_length);
    out.sigma.reserve(forecast_length);

    const std::size_t start = n - forecast_length;
    GarchParams cur;
    bool have_params = false;
    for (std::size_t s = 0; s < forecast_length; ++s) {
        const std::size_t t = start + s;
        if (s % refit_every == 0) {
            ++out.n_refits;
            try {
                GarchFit f = fit(spec, returns.first(t));
                if (!f.converged) ++out.refit_failures;
                cur = f.params;
                have_params = true;
            } catch (const std::exception&) {
                // Keep forecasting with the previous parameters.
                ++out.refit_failures;
                if (!have_params) throw;
            }
        }
        const std::vector<double> sigma2 = variance_filter(spec, cur, returns.first(t));
        const double eps = returns[t - 1] - cur.mu;
        const double s2 = one_step_sigma2(spec, cur, eps, sigma2.back());
        const double sigma = std::sqrt(s2);
        const double q = innovation_quantile(spec.innovation, tau, cur.nu);
        out.sigma.push_back(sigma);
        out.var.push_back(cur.mu + sigma * q);
    }
    return out;
}

std::vector<double> simulate(const GarchSpec& spec, const GarchParams& p, std::size_t n,
                             std::uint64_t seed, std::size_t burn_in) {
    validate_params(spec, p);
    if (n < 1) throw invalid_input("simulate: need n >= 1");
    double sigma2 = unconditional_variance(spec, p);
    if (!std::isfinite(sigma2) || !(sigma2 > 0.0))
        throw numeric_error("simulate: stationary variance not positive");

    Rng rng(seed);
    const bool is_t = spec.innovation == Innovation::StudentT;
    const double t_scale = is_t ? std::sqrt((p.nu - 2.0) / p.nu) : 1.0;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < burn_in + n; ++i) {
        const double z = is_t ? rng.student_t(p.nu) * t_scale : rng.normal();
        const double eps = std::sqrt(sigma2) * z;
        if (i >= burn_in) out.push_back(p.mu + eps);
        sigma2 = one_step_sigma2(spec, p, eps, sigma2);
        if (!std::isfinite(sigma2) || !(sigma2 > 0.0))
            throw numeric_error("simulate: conditional variance left (0, inf)");
    }
    return out;
}

}  // namespace mcs
