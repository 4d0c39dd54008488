#pragma once

#include "mcs/matrix.hpp"

#include <span>
#include <string>
#include <vector>

namespace mcs {

/// Per-period losses for m competing models over n evaluation periods,
/// stored time-major (rows are periods, columns are models).
struct LossMatrix {
    Matrix values;
    std::vector<std::string> model_names;

    std::size_t n() const { return values.rows(); }
    std::size_t m() const { return values.cols(); }

    /// Validating constructor-equivalent: finite entries, n >= 2, m >= 1,
    /// unique non-empty model names (auto-named model_1..model_m when empty).
    static LossMatrix create(Matrix values, std::vector<std::string> model_names = {});
};

enum class VarLossVariant { Normal, Differentiable };

/// Parameters of the asymmetric quantile (VaR) loss.
struct LossVaRConfig {
    double tau = 0.01;
    VarLossVariant variant = VarLossVariant::Normal;
    double delta = 25.0;  // smoothness of the differentiable variant
};

enum class VolLossKind { SE1, SE2, QLIKE, R2LOG, AE1, AE2 };
enum class LevelLossKind { SE, AE };

/// Asymmetric VaR loss: (tau - d) * (y - VaR) with d the violation indicator,
/// or its smoothed variant where d is replaced by a logistic weight.
LossMatrix loss_var(std::span<const double> realized, const Matrix& evaluated,
                    const LossVaRConfig& cfg, std::vector<std::string> model_names = {});

/// Volatility forecast losses over standard-deviation inputs; all sigma values
/// must be strictly positive.
LossMatrix loss_vol(std::span<const double> realized_sigma, const Matrix& evaluated_sigma,
                    VolLossKind kind, std::vector<std::string> model_names = {});

/// Level (point forecast) losses: squared or absolute error.
LossMatrix loss_level(std::span<const double> realized, const Matrix& evaluated,
                      LevelLossKind kind, std::vector<std::string> model_names = {});

/// Single-pair evaluations of the same formulas (used for spot checks).
double var_loss_value(double y, double var, const LossVaRConfig& cfg);
double vol_loss_value(double realized_sigma, double evaluated_sigma, VolLossKind kind);
double level_loss_value(double y, double yhat, LevelLossKind kind);

const char* to_string(VolLossKind kind);
const char* to_string(LevelLossKind kind);

}  // namespace mcs
