#include "mcs/tsboot.hpp"

#include "mcs/errors.hpp"
#include "mcs/parallel.hpp"
#include "mcs/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace mcs {

BootPlan BootPlan::generate(std::size_t n, std::size_t block_len, std::size_t B,
                            std::uint64_t seed, unsigned threads) {
    if (block_len < 1) throw invalid_input("BootPlan: block length must be >= 1");
    if (block_len > n)
        throw invalid_input("BootPlan: block length " + std::to_string(block_len) +
                            " exceeds series length " + std::to_string(n));
    if (B < 1) throw invalid_input("BootPlan: need at least one resample");

    BootPlan plan;
    plan.n_ = n;
    plan.B_ = B;
    plan.block_len_ = block_len;
    plan.seed_ = seed;
    plan.indices_.resize(n * B);

    const std::uint64_t n_starts = static_cast<std::uint64_t>(n - block_len + 1);
    std::uint32_t* const data = plan.indices_.data();
    parallel_for(0, B, threads, [&](std::size_t b) {
        Rng rng(stream_seed(seed, b));
        std::uint32_t* row = data + b * n;
        std::size_t filled = 0;
        while (filled < n) {
            const std::uint32_t start = static_cast<std::uint32_t>(rng.uniform_below(n_starts));
            const std::size_t take = std::min(block_len, n - filled);
            for (std::size_t k = 0; k < take; ++k) row[filled + k] = start + k;
            filled += take;
        }
    });
    return plan;
}

BootPlan BootPlan::from_indices(std::vector<std::uint32_t> indices, std::size_t n,
                                std::size_t B, std::size_t block_len, std::uint64_t seed) {
    if (indices.size() != n * B) throw invalid_input("BootPlan: index matrix shape mismatch");
    for (std::uint32_t idx : indices)
        if (idx >= n) throw invalid_input("BootPlan: index out of range");
    BootPlan plan;
    plan.indices_ = std::move(indices);
    plan.n_ = n;
    plan.B_ = B;
    plan.block_len_ = block_len;
    plan.seed_ = seed;
    return plan;
}

ArFitResult fit_ar_ols(std::span<const double> series, std::size_t p) {
    ArFitResult result;
    const std::size_t n = series.size();
    if (p < 1 || n < 2 * p + 2) return result;

    const auto [mn, mx] = std::minmax_element(series.begin(), series.end());
    if (*mn == *mx) return result;  // constant series

    const std::size_t rows = n - p;
    const std::size_t cols = p + 1;  // intercept + p lags
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (std::size_t t = 0; t < rows; ++t) {
        X(t, 0) = 1.0;
        for (std::size_t k = 1; k <= p; ++k) X(t, k) = series[p + t - k];
        y(t) = series[p + t];
    }

    const Eigen::MatrixXd xtx = X.transpose() * X;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
    if (ldlt.info() != Eigen::Success) return result;
    const Eigen::VectorXd beta = ldlt.solve(X.transpose() * y);
    const Eigen::MatrixXd xtx_inv = ldlt.solve(Eigen::MatrixXd::Identity(cols, cols));
    if (!beta.allFinite() || !xtx_inv.allFinite()) return result;

    const double rss = (y - X * beta).squaredNorm();
    const double dof = static_cast<double>(rows) - static_cast<double>(cols);
    if (dof <= 0.0) return result;
    const double sigma2 = rss / dof;

    result.coef.resize(p);
    result.t_stat.resize(p);
    for (std::size_t k = 1; k <= p; ++k) {
        const double se = std::sqrt(sigma2 * xtx_inv(k, k));
        result.coef[k - 1] = beta(k);
        result.t_stat[k - 1] = se > 0.0 && std::isfinite(se) ? beta(k) / se : 0.0;
    }
    result.ok = true;
    return result;
}

std::size_t default_ar_order_cap(std::size_t n) {
    if (n < 4) return 1;
    const std::size_t cube = static_cast<std::size_t>(std::cbrt(static_cast<double>(n)));
    const std::size_t dof_cap = (n - 2) / 2;
    return std::clamp<std::size_t>(std::min(kMaxAutoArOrder, cube), 1, dof_cap);
}

std::size_t select_block_length(const std::vector<std::vector<double>>& diffs,
                                std::size_t p_max, double sig_threshold) {
    if (diffs.empty()) throw invalid_input("select_block_length: no differential series");
    if (p_max < 1) throw invalid_input("select_block_length: p_max must be >= 1");
    if (!(sig_threshold > 0.0))
        throw invalid_input("select_block_length: significance threshold must be positive");
    for (const auto& series : diffs)
        if (series.size() < 2 * p_max + 2)
            throw invalid_input("select_block_length: series of length " +
                                std::to_string(series.size()) + " too short for p_max " +
                                std::to_string(p_max));

    std::size_t deepest = 0;
    for (const auto& series : diffs) {
        const ArFitResult fit = fit_ar_ols(series, p_max);
        if (!fit.ok) continue;
        for (std::size_t k = p_max; k > deepest; --k) {
            if (std::fabs(fit.t_stat[k - 1]) > sig_threshold) {
                deepest = k;
                break;
            }
        }
    }
    return deepest == 0 ? 1 : deepest;
}

BootStats boot_mean_variance(std::span<const double> series, const BootPlan& plan) {
    const std::size_t n = series.size();
    if (plan.n() != n) throw invalid_input("boot_mean_variance: plan length mismatch");
    if (n == 0) throw invalid_input("boot_mean_variance: empty series");

    BootStats stats;
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) acc += series[t];
    stats.sample_mean = acc / static_cast<double>(n);

    const std::size_t B = plan.resamples();
    stats.boot_means.resize(B);
    for (std::size_t b = 0; b < B; ++b) {
        const auto row = plan.row(b);
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) s += series[row[t]];
        stats.boot_means[b] = s / static_cast<double>(n);
    }
    double var = 0.0;
    for (std::size_t b = 0; b < B; ++b) {
        const double d = stats.boot_means[b] - stats.sample_mean;
        var += d * d;
    }
    stats.var_hat = var / static_cast<double>(B);
    return stats;
}

}  // namespace mcs
