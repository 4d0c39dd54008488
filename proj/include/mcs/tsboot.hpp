#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mcs {

/// A block-bootstrap resampling plan: B rows of n time indices, each row a
/// concatenation of contiguous blocks. Generated once per run and shared by
/// every statistic so all bootstrap quantities stay internally consistent.
class BootPlan {
  public:
    /// Moving-block plan: each row draws ceil(n/p) block starts uniformly from
    /// [0, n-p] and truncates to length n. Row b is generated from its own
    /// derived seed, so rows may be filled in parallel in any order.
    static BootPlan generate(std::size_t n, std::size_t block_len, std::size_t B,
                             std::uint64_t seed, unsigned threads = 1);

    /// Wrap an explicit index matrix (row-major, B x n). Validates the range
    /// of every index; used by tests and reference implementations.
    static BootPlan from_indices(std::vector<std::uint32_t> indices, std::size_t n,
                                 std::size_t B, std::size_t block_len, std::uint64_t seed);

    std::size_t n() const { return n_; }
    std::size_t resamples() const { return B_; }
    std::size_t block_len() const { return block_len_; }
    std::uint64_t seed() const { return seed_; }

    std::span<const std::uint32_t> row(std::size_t b) const {
        return {indices_.data() + b * n_, n_};
    }

  private:
    BootPlan() = default;
    std::vector<std::uint32_t> indices_;
    std::size_t n_ = 0;
    std::size_t B_ = 0;
    std::size_t block_len_ = 1;
    std::uint64_t seed_ = 0;
};

/// Bootstrap distribution of a sample mean.
struct BootStats {
    double sample_mean = 0.0;
    std::vector<double> boot_means;
    double var_hat = 0.0;  // B^-1 sum_b (boot_mean_b - sample_mean)^2
};

/// t-statistics of one least-squares AR fit (intercept included).
struct ArFitResult {
    std::vector<double> coef;    // lag coefficients 1..p
    std::vector<double> t_stat;  // matching t-statistics
    bool ok = false;             // false when the series is constant or the solve fails
};

/// OLS fit of an AR(p) with intercept on x; t-statistics from the usual
/// homoskedastic covariance. ok=false when the regression is degenerate.
ArFitResult fit_ar_ols(std::span<const double> series, std::size_t p);

inline constexpr std::size_t kMaxAutoArOrder = 10;
inline constexpr double kDefaultArSignificance = 1.96;

/// Default AR order cap for a series of length n: min(10, floor(n^(1/3))),
/// clamped so the regression keeps positive degrees of freedom.
std::size_t default_ar_order_cap(std::size_t n);

/// Block length choice: the deepest lag, across all series, whose AR
/// coefficient is significant at |t| > sig_threshold when fitting AR(p_max)
/// per series. Falls back to 1 when nothing is significant. Constant series
/// are skipped; an all-constant collection also yields 1.
std::size_t select_block_length(const std::vector<std::vector<double>>& diffs,
                                std::size_t p_max, double sig_threshold);

/// Sample mean plus bootstrap means/variance of a series under a plan.
BootStats boot_mean_variance(std::span<const double> series, const BootPlan& plan);

}  // namespace mcs
