#include "mcs/backtest.hpp"

#include "mcs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mcs {

namespace {

void check_lengths(std::span<const double> returns, std::span<const double> var_series) {
    if (returns.size() != var_series.size())
        throw invalid_input("backtest: returns and VaR series lengths differ");
    if (returns.empty()) throw invalid_input("backtest: empty series");
}

}  // namespace

double ae_ratio(std::span<const double> returns, std::span<const double> var_series,
                double tau) {
    check_lengths(returns, var_series);
    if (!(tau > 0.0 && tau < 1.0)) throw invalid_input("backtest: tau outside (0, 1)");
    std::size_t violations = 0;
    for (std::size_t t = 0; t < returns.size(); ++t)
        if (returns[t] < var_series[t]) ++violations;
    return static_cast<double>(violations) / (tau * static_cast<double>(returns.size()));
}

std::optional<std::pair<double, double>> ad_stats(std::span<const double> returns,
                                                  std::span<const double> var_series) {
    check_lengths(returns, var_series);
    double sum = 0.0;
    double max = 0.0;
    std::size_t violations = 0;
    for (std::size_t t = 0; t < returns.size(); ++t) {
        if (returns[t] < var_series[t]) {
            const double ad = std::fabs(returns[t] - var_series[t]);
            sum += ad;
            max = std::max(max, ad);
            ++violations;
        }
    }
    if (violations == 0) return std::nullopt;
    return std::make_pair(sum / static_cast<double>(violations), max);
}

VarBacktestReport backtest_var(std::span<const double> returns,
                               std::span<const double> var_series, double tau) {
    VarBacktestReport report;
    report.n = returns.size();
    report.tau = tau;
    report.ae = ae_ratio(returns, var_series, tau);
    for (std::size_t t = 0; t < returns.size(); ++t)
        if (returns[t] < var_series[t]) ++report.violations;
    if (const auto ad = ad_stats(returns, var_series)) {
        report.ad_mean = ad->first;
        report.ad_max = ad->second;
    }
    return report;
}

std::vector<double> average_var(const Matrix& var_matrix) {
    if (var_matrix.empty()) throw invalid_input("average_var: empty matrix");
    if (!var_matrix.all_finite()) throw invalid_input("average_var: non-finite entry");
    std::vector<double> out(var_matrix.rows(), 0.0);
    for (std::size_t r = 0; r < var_matrix.rows(); ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < var_matrix.cols(); ++c) sum += var_matrix(r, c);
        out[r] = sum / static_cast<double>(var_matrix.cols());
    }
    return out;
}

}  // namespace mcs
