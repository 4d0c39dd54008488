#include "mcs/losses.hpp"

#include "mcs/errors.hpp"

#include <cmath>
#include <unordered_set>

namespace mcs {

namespace {

void check_dimensions(std::span<const double> realized, const Matrix& evaluated,
                      const char* op) {
    if (evaluated.rows() != realized.size())
        throw invalid_input(std::string(op) + ": realized length " +
                            std::to_string(realized.size()) + " does not match evaluated rows " +
                            std::to_string(evaluated.rows()));
    if (evaluated.cols() == 0) throw invalid_input(std::string(op) + ": evaluated has no columns");
    for (std::size_t t = 0; t < realized.size(); ++t)
        if (!std::isfinite(realized[t]))
            throw invalid_input(std::string(op) + ": non-finite realized value at row " +
                                std::to_string(t));
    if (!evaluated.all_finite())
        throw invalid_input(std::string(op) + ": non-finite evaluated value");
}

/// Logistic weight m_delta(a, b) = 1 / (1 + exp(delta * (a - b))), computed on
/// the branch that never overflows.
double logistic_weight(double a, double b, double delta) {
    const double x = delta * (a - b);
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

template <typename Fn>
LossMatrix build(std::span<const double> realized, const Matrix& evaluated,
                 std::vector<std::string> names, Fn cell) {
    Matrix out(evaluated.rows(), evaluated.cols());
    for (std::size_t t = 0; t < evaluated.rows(); ++t)
        for (std::size_t i = 0; i < evaluated.cols(); ++i)
            out(t, i) = cell(realized[t], evaluated(t, i));
    return LossMatrix::create(std::move(out), std::move(names));
}

}  // namespace

LossMatrix LossMatrix::create(Matrix values, std::vector<std::string> model_names) {
    if (values.cols() < 1) throw invalid_input("LossMatrix: need at least one model column");
    if (values.rows() < 2) throw invalid_input("LossMatrix: need at least two evaluation periods");
    if (!values.all_finite()) throw invalid_input("LossMatrix: non-finite loss entry");
    if (model_names.empty()) {
        model_names.reserve(values.cols());
        for (std::size_t i = 0; i < values.cols(); ++i)
            model_names.push_back("model_" + std::to_string(i + 1));
    }
    if (model_names.size() != values.cols())
        throw invalid_input("LossMatrix: name count does not match column count");
    std::unordered_set<std::string> seen;
    for (const auto& name : model_names) {
        if (name.empty()) throw invalid_input("LossMatrix: empty model name");
        if (!seen.insert(name).second)
            throw invalid_input("LossMatrix: duplicate model name '" + name + "'");
    }
    return LossMatrix{std::move(values), std::move(model_names)};
}

double var_loss_value(double y, double var, const LossVaRConfig& cfg) {
    const double d = cfg.variant == VarLossVariant::Normal
                         ? (y < var ? 1.0 : 0.0)
                         : logistic_weight(y, var, cfg.delta);
    return (cfg.tau - d) * (y - var);
}

double vol_loss_value(double rs, double es, VolLossKind kind) {
    switch (kind) {
        case VolLossKind::SE1: return (rs - es) * (rs - es);
        case VolLossKind::SE2: {
            const double d = rs * rs - es * es;
            return d * d;
        }
        case VolLossKind::QLIKE: return std::log(es * es) + (rs * rs) / (es * es);
        case VolLossKind::R2LOG: {
            const double l = std::log((rs * rs) / (es * es));
            return l * l;
        }
        case VolLossKind::AE1: return std::fabs(rs - es);
        case VolLossKind::AE2: return std::fabs(rs * rs - es * es);
    }
    throw invalid_input("vol_loss_value: unknown kind");
}

double level_loss_value(double y, double yhat, LevelLossKind kind) {
    const double d = y - yhat;
    return kind == LevelLossKind::SE ? d * d : std::fabs(d);
}

LossMatrix loss_var(std::span<const double> realized, const Matrix& evaluated,
                    const LossVaRConfig& cfg, std::vector<std::string> model_names) {
    check_dimensions(realized, evaluated, "loss_var");
    if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) throw invalid_input("loss_var: tau must be in (0,1)");
    if (!(cfg.delta > 0.0)) throw invalid_input("loss_var: delta must be positive");
    return build(realized, evaluated, std::move(model_names),
                 [&cfg](double y, double v) { return var_loss_value(y, v, cfg); });
}

LossMatrix loss_vol(std::span<const double> realized_sigma, const Matrix& evaluated_sigma,
                    VolLossKind kind, std::vector<std::string> model_names) {
    check_dimensions(realized_sigma, evaluated_sigma, "loss_vol");
    for (std::size_t t = 0; t < realized_sigma.size(); ++t)
        if (!(realized_sigma[t] > 0.0))
            throw invalid_input("loss_vol: non-positive realized sigma at row " +
                                std::to_string(t));
    for (std::size_t t = 0; t < evaluated_sigma.rows(); ++t)
        for (std::size_t i = 0; i < evaluated_sigma.cols(); ++i)
            if (!(evaluated_sigma(t, i) > 0.0))
                throw invalid_input("loss_vol: non-positive evaluated sigma at row " +
                                    std::to_string(t) + ", column " + std::to_string(i));
    return build(realized_sigma, evaluated_sigma, std::move(model_names),
                 [kind](double rs, double es) { return vol_loss_value(rs, es, kind); });
}

LossMatrix loss_level(std::span<const double> realized, const Matrix& evaluated,
                      LevelLossKind kind, std::vector<std::string> model_names) {
    check_dimensions(realized, evaluated, "loss_level");
    return build(realized, evaluated, std::move(model_names),
                 [kind](double y, double yhat) { return level_loss_value(y, yhat, kind); });
}

const char* to_string(VolLossKind kind) {
    switch (kind) {
        case VolLossKind::SE1: return "SE1";
        case VolLossKind::SE2: return "SE2";
        case VolLossKind::QLIKE: return "QLIKE";
        case VolLossKind::R2LOG: return "R2LOG";
        case VolLossKind::AE1: return "AE1";
        case VolLossKind::AE2: return "AE2";
    }
    return "?";
}

const char* to_string(LevelLossKind kind) {
    return kind == LevelLossKind::SE ? "SE" : "AE";
}

}  // namespace mcs
