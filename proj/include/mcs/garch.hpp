#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcs {

enum class Dynamics { Garch11, Gjr11, Egarch11 };
enum class Innovation { Gaussian, StudentT };

const char* to_string(Dynamics d);
const char* to_string(Innovation i);
Dynamics dynamics_from_string(const std::string& name);
Innovation innovation_from_string(const std::string& name);

struct GarchSpec {
    Dynamics dynamics = Dynamics::Garch11;
    Innovation innovation = Innovation::Gaussian;
};

/// Constrained model parameters. gamma is read for Gjr11/Egarch11 only, nu
/// for StudentT only; the unused fields are ignored by every routine.
struct GarchParams {
    double mu = 0.0;
    double omega = 0.05;
    double alpha = 0.05;
    double beta = 0.90;
    double gamma = 0.0;
    double nu = 8.0;
};

/// Number of free parameters: mu, omega, alpha, beta, then gamma for the
/// asymmetric dynamics and nu for Student-t. This is also the layout of
/// log_likelihood_gradient output.
std::size_t param_count(const GarchSpec& spec);

/// Throws invalid_input unless the parameters satisfy the stationarity and
/// positivity constraints of the given specification.
void validate_params(const GarchSpec& spec, const GarchParams& p);

/// alpha+beta for GARCH, alpha+beta+gamma/2 for GJR (symmetric innovations),
/// beta for EGARCH.
double persistence(const GarchSpec& spec, const GarchParams& p);

struct GarchFit {
    GarchSpec spec;
    GarchParams params;
    std::vector<double> sigma2_path;
    double loglik = 0.0;
    bool converged = false;
    double last_eps = 0.0;
    double last_sigma2 = 0.0;
};

/// Conditional variance path. sigma2[0] is the sample variance of the window
/// (the stationary variance when a single observation leaves nothing to
/// estimate); later values follow the recursion of the chosen dynamics with
/// eps_t = y_t - mu.
std::vector<double> variance_filter(const GarchSpec& spec, const GarchParams& p,
                                    std::span<const double> returns);

double log_likelihood(const GarchSpec& spec, const GarchParams& p,
                      std::span<const double> returns);

/// Analytic gradient of log_likelihood in the parameter order mu, omega,
/// alpha, beta[, gamma][, nu]. Requires n >= 2.
std::vector<double> log_likelihood_gradient(const GarchSpec& spec, const GarchParams& p,
                                            std::span<const double> returns);

/// Maximum likelihood fit: simplex search over transformed unconstrained
/// parameters, three fixed starting points (plus the caller's initial guess
/// when given), then a restart from the best point. converged reports whether
/// the final simplex collapsed below the objective tolerance of 1e-8.
GarchFit fit(const GarchSpec& spec, std::span<const double> returns,
             const std::optional<GarchParams>& init = std::nullopt);

/// One-step-ahead conditional standard deviation from the fitted end state.
double forecast_sigma(const GarchFit& fit);

/// Quantile of the standardized innovation (unit variance) at level tau.
double innovation_quantile(Innovation innovation, double tau, double nu);

struct RollVarResult {
    std::vector<double> var;    // one-step-ahead VaR per forecast date
    std::vector<double> sigma;  // matching conditional standard deviations
    std::size_t n_refits = 0;
    std::size_t refit_failures = 0;  // thrown or unconverged fits
};

/// Rolling one-step-ahead VaR over the last forecast_length observations.
/// Refits on all data before the forecast date every refit_every steps and
/// only refilters in between; a failed refit keeps the previous parameters.
RollVarResult roll_var_forecast(const GarchSpec& spec, std::span<const double> returns,
                                std::size_t forecast_length, std::size_t refit_every,
                                double tau);

/// Simulates a return path of length n after a burn-in, starting the
/// recursion at the stationary variance. Deterministic in seed.
std::vector<double> simulate(const GarchSpec& spec, const GarchParams& p, std::size_t n,
                             std::uint64_t seed, std::size_t burn_in = 500);

}  // namespace mcs
