#pragma once

#include "mcs/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mcs {

/// VaR backtest summary. A violation is a return strictly below the forecast;
/// the absolute-deviation statistics exist only when violations occurred.
struct VarBacktestReport {
    std::size_t n = 0;
    double tau = 0.0;
    std::size_t violations = 0;
    double ae = 0.0;
    std::optional<double> ad_mean;
    std::optional<double> ad_max;
};

/// Actual-over-expected violation ratio: count{y_t < VaR_t} / (tau * n).
double ae_ratio(std::span<const double> returns, std::span<const double> var_series,
                double tau);

/// Mean and maximum of |y_t - VaR_t| over violation dates, or empty when no
/// violation occurred.
std::optional<std::pair<double, double>> ad_stats(std::span<const double> returns,
                                                  std::span<const double> var_series);

VarBacktestReport backtest_var(std::span<const double> returns,
                               std::span<const double> var_series, double tau);

/// Rowwise mean across forecast columns (static VaR combination).
std::vector<double> average_var(const Matrix& var_matrix);

}  // namespace mcs
